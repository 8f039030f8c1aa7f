"""Linear functionals on polynomials, kept as finite moment sequences.

A :class:`MomentFunctional` knows ``(u)_0 .. (u)_M`` and nothing else; every
operation works out how many moments of its result are actually determined
and returns exactly those.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .errors import EmptyResult, HorizonExceeded
from .operator import OperatorJ, op_apply, op_shift
from .polyalg import Poly, as_scalar

__all__ = [
    "MomentFunctional",
    "fn_pair",
    "fn_left_mul",
    "fn_derive",
    "fn_transpose_apply",
    "fn_transpose_apply_distributional",
    "fn_transpose_shift_apply",
    "fn_affine",
]


class MomentFunctional:
    __slots__ = ("moments",)

    def __init__(self, moments):
        self.moments = tuple(as_scalar(m) for m in moments)
        if not self.moments:
            raise EmptyResult("a functional needs at least one moment")

    @property
    def horizon(self) -> int:
        return len(self.moments) - 1

    def __getitem__(self, n: int):
        if n > self.horizon:
            raise HorizonExceeded(f"moment {n} beyond horizon {self.horizon}", index=n)
        return self.moments[n]

    def truncate(self, M: int) -> MomentFunctional:
        if M > self.horizon:
            raise HorizonExceeded(f"cannot extend horizon {self.horizon} to {M}", index=M)
        return MomentFunctional(self.moments[: M + 1])

    def is_zero(self) -> bool:
        return all(m == 0 for m in self.moments)

    def __eq__(self, other):
        if not isinstance(other, MomentFunctional):
            return NotImplemented
        return self.moments == other.moments

    def __hash__(self):
        return hash(self.moments)

    def __add__(self, other: MomentFunctional) -> MomentFunctional:
        M = min(self.horizon, other.horizon)
        return MomentFunctional(self.moments[i] + other.moments[i] for i in range(M + 1))

    def __neg__(self):
        return MomentFunctional(-m for m in self.moments)

    def __sub__(self, other: MomentFunctional) -> MomentFunctional:
        return self + (-other)

    def __mul__(self, c):
        c = as_scalar(c)
        return MomentFunctional(m * c for m in self.moments)

    __rmul__ = __mul__

    def __repr__(self):
        return f"MomentFunctional({[str(m) for m in self.moments]})"


def fn_pair(u: MomentFunctional, p: Poly):
    """``<u, p>``."""
    if p.degree > u.horizon:
        raise HorizonExceeded(f"deg p = {p.degree} beyond moment horizon {u.horizon}", index=p.degree)
    return sum((c * u.moments[i] for i, c in enumerate(p.coeffs)), Fraction(0))


def fn_left_mul(w: Poly, u: MomentFunctional) -> MomentFunctional:
    """``(w u)_n = <u, w x^n>``; loses ``deg w`` moments of horizon."""
    if w.is_zero():
        return MomentFunctional([0] * (u.horizon + 1))
    M = u.horizon - w.degree
    if M < 0:
        raise EmptyResult(f"deg w = {w.degree} exceeds moment horizon {u.horizon}")
    return MomentFunctional(
        sum((c * u.moments[n + i] for i, c in enumerate(w.coeffs)), Fraction(0)) for n in range(M + 1)
    )


def fn_derive(u: MomentFunctional) -> MomentFunctional:
    """Distributional derivative: ``<Du, p> = -<u, p'>``, i.e. ``(Du)_n = -n (u)_{n-1}``."""
    return MomentFunctional([0] + [-n * u.moments[n - 1] for n in range(1, u.horizon + 1)])


def _transpose_horizon(J: OperatorJ, u: MomentFunctional) -> int:
    return min(J.N, u.horizon - J.degree_excess)


def fn_transpose_apply(J: OperatorJ, u: MomentFunctional) -> MomentFunctional:
    """``(J u)_n = <u, J(x^n)>`` on every index where both sides are known."""
    M = _transpose_horizon(J, u)
    if M < 0:
        raise EmptyResult("no moment of the transposed image is determined")
    return MomentFunctional(fn_pair(u, op_apply(J, Poly.monomial(n))) for n in range(M + 1))


def fn_transpose_apply_distributional(J: OperatorJ, u: MomentFunctional) -> MomentFunctional:
    """Same functional, built as ``sum (-1)^n/n! D^n(a_n u)``.

    Kept separate from :func:`fn_transpose_apply` so the two can be checked
    against each other.
    """
    M = _transpose_horizon(J, u)
    if M < 0:
        raise EmptyResult("no moment of the transposed image is determined")
    acc = [Fraction(0)] * (M + 1)
    for n in range(min(J.N, M) + 1):
        a = J.coeffs[n]
        if not a:
            continue
        w = fn_left_mul(a, u)
        # (D^n w)_i = (-1)^n i!/(i-n)! w_{i-n}; D^n w is known n moments past w
        scale = Fraction((-1) ** n, math.factorial(n))
        for i in range(n, M + 1):
            dn = (-1) ** n * math.factorial(i) // math.factorial(i - n) * w.moments[i - n]
            acc[i] += scale * dn
    return MomentFunctional(acc)


def fn_transpose_shift_apply(J: OperatorJ, m: int, u: MomentFunctional) -> MomentFunctional:
    """Moments of ``J^(m)(u) = sum (-1)^n/n! D^n(a_{n+m} u)``."""
    return fn_transpose_apply(op_shift(J, m), u)


def fn_affine(u: MomentFunctional, A, B) -> MomentFunctional:
    """The transported form ``(h_{1/A} o tau_{-B}) u``: ``<.., p> = <u, p((x - B)/A)>``."""
    A, B = as_scalar(A), as_scalar(B)
    inv = 1 / A
    return MomentFunctional(
        fn_pair(u, Poly.monomial(n).affine_sub(inv, -B * inv)) for n in range(u.horizon + 1)
    )
