"""Exact scalars and dense univariate polynomials.

Scalars are :class:`fractions.Fraction` values, optionally extended by one
quadratic surd at a time (:class:`Surd`).  Nothing in here ever touches a
float.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from numbers import Rational

from .errors import DegenerateAffine, FieldMismatch

__all__ = [
    "Fraction",
    "Poly",
    "Surd",
    "as_scalar",
    "binom",
    "sqrt",
    "surd_normalize",
    "X",
    "ONE",
    "ZERO",
]


def binom(n: int, k: int) -> int:
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


@lru_cache(maxsize=1024)
def _square_split(n: int) -> tuple[int, int]:
    """Return ``(s, f)`` with ``n == s*s*f`` and ``f`` squarefree, for ``n >= 1``."""
    if n == 1:
        return 1, 1
    r = math.isqrt(n)
    if r * r == n:
        return r, 1
    from sympy import factorint

    s, f = 1, 1
    for p, e in factorint(n).items():
        s *= p ** (e // 2)
        if e % 2:
            f *= p
    return s, f


def _canonical_radicand(rad: Fraction) -> tuple[Fraction, int]:
    """Split ``rad`` as ``c**2 * d`` with ``d`` a squarefree integer (sign kept in ``d``).

    Returns ``(c, d)``.  ``rad == 0`` maps to ``(0, 1)``.
    """
    if rad == 0:
        return Fraction(0), 1
    sign = -1 if rad < 0 else 1
    num, den = abs(rad.numerator), rad.denominator
    # sqrt(num/den) = sqrt(num*den)/den
    s, f = _square_split(num * den)
    return Fraction(s, den), sign * f


@dataclass(frozen=True, eq=False)
class Surd:
    """The number ``rat + coef*sqrt(rad)``.

    Always stored in canonical form: ``rad`` is a squarefree integer (``1`` for
    pure rationals, in which case ``coef == 0``).  A negative radicand is kept
    as is and flagged by :attr:`formal_nonreal`.
    """

    rat: Fraction
    coef: Fraction = Fraction(0)
    rad: Fraction = Fraction(1)

    def __post_init__(self):
        rat, coef, rad = Fraction(self.rat), Fraction(self.coef), Fraction(self.rad)
        c, d = _canonical_radicand(rad)
        coef *= c
        if d == 1:
            rat, coef = rat + coef, Fraction(0)
        if coef == 0:
            d = 1
        object.__setattr__(self, "rat", rat)
        object.__setattr__(self, "coef", coef)
        object.__setattr__(self, "rad", Fraction(d))

    @property
    def formal_nonreal(self) -> bool:
        return self.rad < 0

    @property
    def is_rational(self) -> bool:
        return self.coef == 0

    def collapse(self) -> Fraction | Surd:
        return self.rat if self.coef == 0 else self

    def conjugate(self) -> Surd:
        return Surd(self.rat, -self.coef, self.rad)

    def norm(self) -> Fraction:
        return self.rat * self.rat - self.coef * self.coef * self.rad

    # arithmetic -----------------------------------------------------------

    def _common(self, other) -> tuple[Surd, Surd]:
        if isinstance(other, Surd):
            o = other
        elif isinstance(other, Rational):
            o = Surd(Fraction(other))
        else:
            return NotImplemented, NotImplemented
        if self.coef and o.coef and self.rad != o.rad:
            raise FieldMismatch(f"radicands {self.rad} and {o.rad} do not share a field")
        return self, o

    def __add__(self, other):
        a, b = self._common(other)
        if a is NotImplemented:
            return NotImplemented
        rad = a.rad if a.coef else b.rad
        return Surd(a.rat + b.rat, a.coef + b.coef, rad).collapse()

    __radd__ = __add__

    def __neg__(self):
        return Surd(-self.rat, -self.coef, self.rad).collapse()

    def __pos__(self):
        return self.collapse()

    def __sub__(self, other):
        a, b = self._common(other)
        if a is NotImplemented:
            return NotImplemented
        return a + (-b)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        a, b = self._common(other)
        if a is NotImplemented:
            return NotImplemented
        rad = a.rad if a.coef else b.rad
        return Surd(
            a.rat * b.rat + a.coef * b.coef * rad,
            a.rat * b.coef + a.coef * b.rat,
            rad,
        ).collapse()

    __rmul__ = __mul__

    def __truediv__(self, other):
        a, b = self._common(other)
        if a is NotImplemented:
            return NotImplemented
        n = b.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero surd")
        return (a * b.conjugate()) * (1 / n)

    def __rtruediv__(self, other):
        return Surd(Fraction(other)) / self

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return 1 / (self ** (-e))
        out: Fraction | Surd = Fraction(1)
        base: Fraction | Surd = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, Surd):
            return (self.rat, self.coef, self.rad) == (other.rat, other.coef, other.rad)
        if isinstance(other, Rational):
            return self.coef == 0 and self.rat == other
        return NotImplemented

    def __hash__(self):
        if self.coef == 0:
            return hash(self.rat)
        return hash((self.rat, self.coef, self.rad))

    def __bool__(self):
        return bool(self.rat) or bool(self.coef)

    def __repr__(self):
        return f"Surd({self.rat}, {self.coef}, {self.rad})"

    def __str__(self):
        if self.coef == 0:
            return str(self.rat)
        root = f"sqrt({self.rad})"
        tail = root if self.coef == 1 else f"{self.coef}*{root}"
        if self.rat == 0:
            return tail
        return f"{self.rat} + {tail}"


def surd_normalize(s: Surd) -> Surd:
    """Canonical :class:`Surd` (construction already normalizes; this re-wraps)."""
    return Surd(s.rat, s.coef, s.rad)


def sqrt(q) -> Fraction | Surd:
    """Principal square root of a rational, exact; a surd when ``q`` is not a square."""
    return Surd(Fraction(0), Fraction(1), Fraction(q)).collapse()


def as_scalar(c) -> Fraction | Surd:
    if isinstance(c, Surd):
        return c.collapse()
    if isinstance(c, (bool, float, complex)):
        raise TypeError(f"inexact or non-numeric scalar {c!r}")
    if isinstance(c, Rational):
        return Fraction(c)
    if isinstance(c, str):
        return Fraction(c)
    raise TypeError(f"unsupported scalar {c!r}")


class Poly:
    """Dense polynomial; ``coeffs[i]`` is the coefficient of ``x**i``.

    The zero polynomial has no coefficients and degree ``-1``.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [as_scalar(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple = tuple(cs)

    # constructors ---------------------------------------------------------

    @classmethod
    def constant(cls, c) -> Poly:
        return cls([c])

    @classmethod
    def monomial(cls, n: int, c=1) -> Poly:
        return cls([0] * n + [c])

    # basic queries ----------------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def coeff(self, i: int):
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return Fraction(0)

    @property
    def leading(self):
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def __len__(self):
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        try:
            return self.coeffs == Poly.constant(other).coeffs
        except TypeError:
            return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    # ring operations --------------------------------------------------------

    @staticmethod
    def _lift(other) -> Poly:
        return other if isinstance(other, Poly) else Poly.constant(other)

    def __add__(self, other):
        q = self._lift(other)
        n = max(len(self.coeffs), len(q.coeffs))
        return Poly(self.coeff(i) + q.coeff(i) for i in range(n))

    __radd__ = __add__

    def __neg__(self):
        return Poly(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            c = as_scalar(other)
            return Poly(a * c for a in self.coeffs)
        if not self.coeffs or not other.coeffs:
            return Poly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return Poly(out)

    __rmul__ = __mul__

    def __truediv__(self, c):
        c = as_scalar(c)
        return Poly(a / c for a in self.coeffs)

    def __pow__(self, e: int):
        out = Poly.constant(1)
        for _ in range(e):
            out = out * self
        return out

    def __call__(self, x):
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    # calculus and substitutions ---------------------------------------------

    def derive(self, m: int = 1) -> Poly:
        """m-th derivative, using ``D^m x^n = n!/(n-m)! x^(n-m)``."""
        if m < 0:
            raise ValueError("derivative order must be >= 0")
        if m == 0:
            return self
        return Poly(
            self.coeffs[n] * (math.factorial(n) // math.factorial(n - m))
            for n in range(m, len(self.coeffs))
        )

    def affine_sub(self, A, B=0) -> Poly:
        """``p(A*x + B)``."""
        if A == 0:
            raise DegenerateAffine("affine map needs A != 0")
        lin = Poly([B, A])
        out = Poly()
        for c in reversed(self.coeffs):
            out = out * lin + c
        return out

    def shift_degree(self, k: int) -> Poly:
        """Multiply by ``x**k``."""
        if not self.coeffs:
            return self
        return Poly([0] * k + list(self.coeffs))

    # display ------------------------------------------------------------------

    def __repr__(self):
        return f"Poly({[str(c) for c in self.coeffs]})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            if not mono:
                terms.append(f"({c})" if isinstance(c, Surd) else str(c))
            elif c == 1:
                terms.append(mono)
            elif c == -1:
                terms.append("-" + mono)
            else:
                cs = f"({c})" if isinstance(c, Surd) or "/" in str(c) else str(c)
                terms.append(f"{cs}*{mono}")
        return " + ".join(terms).replace("+ -", "- ")


ZERO = Poly()
ONE = Poly([1])
X = Poly([0, 1])


def expand_in_basis(p: Poly, basis) -> list:
    """Coefficients ``c`` with ``p == sum(c[j] * basis[j])`` for a monic, degree-exact basis.

    Back substitution from the top degree down; ``len(c) == deg p + 1``.
    """
    n = p.degree
    if n < 0:
        return []
    if n >= len(basis):
        raise ValueError(f"basis too short for degree {n}")
    c = [Fraction(0)] * (n + 1)
    r = p
    for j in range(n, -1, -1):
        lead = r.coeff(j)
        if lead != 0:
            c[j] = lead
            r = r - basis[j] * lead
    return c
