"""Degree-nonincreasing operators in canonical form ``J = sum a_v(x)/v! D^v``.

An :class:`OperatorJ` stores ``a_0 .. a_N`` for an explicit horizon ``N``.
Everything computed from it is valid only up to that horizon, and asking for
more raises :class:`~lowerop.errors.HorizonExceeded`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    BadParameter,
    DegreeViolation,
    HorizonExceeded,
    NotDegreeNonincreasing,
    NotIsomorphism,
    NotLowering,
)
from .polyalg import Poly, X, as_scalar, binom

__all__ = [
    "OperatorJ",
    "LoweringProfile",
    "op_from_coeffs",
    "op_from_images",
    "op_apply",
    "op_images",
    "op_shift",
    "op_compose",
    "op_invert",
    "op_lowering_order",
    "op_series_truncated",
    "isomorphism_lambdas",
    "derivative",
    "dxd",
    "identity",
    "affine",
    "divided_difference",
    "q_derivative",
    "i_q_omega",
]


class OperatorJ:
    """Truncated canonical expansion ``{a_v}_{v <= N}``.

    ``relaxed`` marks auxiliary operators (from :func:`op_shift`) that may
    break ``deg a_v <= v``; those are only accepted by application and
    transposition.
    """

    __slots__ = ("coeffs", "relaxed")

    def __init__(self, coeffs, N: int | None = None, relaxed: bool = False):
        cs = [c if isinstance(c, Poly) else Poly(c) for c in coeffs]
        if N is None:
            N = len(cs) - 1
        if N < 0:
            raise ValueError("truncation order must be >= 0")
        if len(cs) > N + 1:
            extra = [v for v in range(N + 1, len(cs)) if cs[v]]
            if extra:
                raise ValueError(f"coefficient a_{extra[0]} lies beyond horizon N={N}")
            cs = cs[: N + 1]
        cs += [Poly()] * (N + 1 - len(cs))
        if not relaxed:
            for v, a in enumerate(cs):
                if a.degree > v:
                    raise DegreeViolation(f"deg a_{v} = {a.degree} > {v}", index=v)
        self.coeffs: tuple[Poly, ...] = tuple(cs)
        self.relaxed = relaxed

    @property
    def N(self) -> int:
        return len(self.coeffs) - 1

    def a(self, v: int) -> Poly:
        """``a_v``; zero beyond the stored list is *not* assumed, so this checks the horizon."""
        if v > self.N:
            raise HorizonExceeded(f"a_{v} requested beyond horizon N={self.N}", index=v)
        return self.coeffs[v]

    def acoef(self, i: int, v: int):
        """The scalar ``a_i^{[v]}`` (coefficient of ``x^i`` in ``a_v``)."""
        return self.a(v).coeff(i)

    @property
    def degree_excess(self) -> int:
        """``max(deg a_v - v, 0)``; nonzero only for relaxed operators."""
        return max([0] + [a.degree - v for v, a in enumerate(self.coeffs)])

    def support(self) -> int:
        """Index of the last nonzero coefficient (-1 for the zero operator)."""
        for v in range(self.N, -1, -1):
            if self.coeffs[v]:
                return v
        return -1

    def __eq__(self, other):
        if not isinstance(other, OperatorJ):
            return NotImplemented
        return self.coeffs == other.coeffs and self.relaxed == other.relaxed

    def __hash__(self):
        return hash((self.coeffs, self.relaxed))

    def __repr__(self):
        body = ", ".join(str(a) for a in self.coeffs)
        flag = ", relaxed" if self.relaxed else ""
        return f"OperatorJ(N={self.N}{flag}: [{body}])"

    def __call__(self, p: Poly) -> Poly:
        return op_apply(self, p)


@dataclass(frozen=True)
class LoweringProfile:
    order: int
    lambdas: tuple  # lambdas[n] is lambda_{n+k}^{[k]}
    horizon: int

    def lam(self, m: int):
        """``lambda_m^{[k]}`` indexed by the *image* degree ``m >= k``."""
        return self.lambdas[m - self.order]

    @property
    def verified_up_to(self) -> int:
        return self.horizon


def op_from_coeffs(coeffs, N: int | None = None) -> OperatorJ:
    return OperatorJ(coeffs, N)


def op_apply(J: OperatorJ, p: Poly) -> Poly:
    """``sum_v a_v(x) p^(v)(x) / v!``."""
    if p.degree > J.N:
        raise HorizonExceeded(f"deg p = {p.degree} exceeds horizon N={J.N}", index=p.degree)
    out = Poly()
    dp = p
    for v in range(p.degree + 1):
        a = J.coeffs[v]
        if a:
            out = out + a * dp / math.factorial(v)
        dp = dp.derive()
    return out


def op_images(J: OperatorJ, n: int) -> Poly:
    """``J(x^n)`` through the double sum over the coefficients ``a_i^{[v]}``."""
    if n > J.N:
        raise HorizonExceeded(f"image of x^{n} requested beyond horizon N={J.N}", index=n)
    if J.relaxed:
        # the closed sum assumes deg a_v <= v; fall back to direct application
        return op_apply(J, Poly.monomial(n))
    return Poly(
        sum((binom(n, n - v) * J.coeffs[n - v].coeff(tau - v) for v in range(tau + 1)), Fraction(0))
        for tau in range(n + 1)
    )


def op_from_images(images) -> OperatorJ:
    """Unique canonical operator with ``J(x^n) = images[n]``, ``n <= len(images)-1``."""
    images = [d if isinstance(d, Poly) else Poly(d) for d in images]
    for n, d in enumerate(images):
        if d.degree > n:
            raise NotDegreeNonincreasing(f"deg J(x^{n}) = {d.degree} > {n}", index=n)
    N = len(images) - 1
    # a[v][i] = a_i^{[v]}
    a: list[list] = [[Fraction(0)] * (v + 1) for v in range(N + 1)]
    for n in range(N + 1):
        d = images[n]
        a[n][0] = d.coeff(0)
        for tau in range(1, n + 1):
            s = d.coeff(tau)
            for v in range(1, tau + 1):
                s -= binom(n, n - v) * a[n - v][tau - v]
            a[n][tau] = s
    return OperatorJ([Poly(row) for row in a], N)


def op_shift(J: OperatorJ, m: int) -> OperatorJ:
    """Auxiliary operator ``J^(m) = sum a_{v+m}(x)/v! D^v`` (relaxed degrees)."""
    if m < 0 or m > J.N:
        raise HorizonExceeded(f"shift {m} outside 0..{J.N}", index=m)
    if m == 0:
        return J
    return OperatorJ(J.coeffs[m:], J.N - m, relaxed=True)


def _require_canonical(J: OperatorJ, what: str):
    if J.relaxed:
        raise ValueError(f"{what} needs a canonical (non-relaxed) operator")


def op_compose(K: OperatorJ, J: OperatorJ) -> OperatorJ:
    """Canonical coefficients of ``K o J`` on the horizon ``min(N_K, N_J)``."""
    _require_canonical(K, "composition")
    _require_canonical(J, "composition")
    N = min(K.N, J.N)
    # derivs[v][r] = a_v^{(r)} / r!
    derivs = [[J.coeffs[v].derive(r) / math.factorial(r) for r in range(v + 1)] for v in range(N + 1)]
    out = []
    for n in range(N + 1):
        c = Poly()
        for mu in range(n + 1):
            b = K.coeffs[mu]
            if not b:
                continue
            inner = Poly()
            for v in range(mu + 1):
                r = mu - v
                if r <= n - v:
                    inner = inner + derivs[n - v][r] * binom(n, v)
            c = c + b * inner
        out.append(c)
    return OperatorJ(out, N)


def isomorphism_lambdas(J: OperatorJ) -> list:
    """``lambda_n^{[0]} = sum_mu C(n, mu) a_mu^{[mu]}`` for ``n <= N``."""
    diag = [J.coeffs[m].coeff(m) for m in range(J.N + 1)]
    return [sum((binom(n, m) * diag[m] for m in range(n + 1)), Fraction(0)) for n in range(J.N + 1)]


def op_invert(J: OperatorJ) -> OperatorJ:
    _require_canonical(J, "inversion")
    lam = isomorphism_lambdas(J)
    for n, l in enumerate(lam):
        if l == 0:
            raise NotIsomorphism(f"lambda_{n}^[0] vanishes", index=n)
    N = J.N
    derivs = [[J.coeffs[v].derive(r) / math.factorial(r) for r in range(v + 1)] for v in range(N + 1)]
    inv = [Poly.constant(1 / lam[0])]
    for n in range(N):
        s = Poly()
        for mu in range(n + 1):
            inner = Poly()
            for v in range(mu + 1):
                r = mu - v
                if r <= n + 1 - v:
                    inner = inner + derivs[n + 1 - v][r] * binom(n + 1, v)
            s = s + inv[mu] * inner
        inv.append(-s / lam[n + 1])
    return OperatorJ(inv, N)


def op_lowering_order(J: OperatorJ) -> LoweringProfile:
    """Smallest ``k`` with ``a_0 = .. = a_{k-1} = 0``, ``deg a_v <= v-k`` and nonvanishing lambdas.

    The lambda list certifies the profile only up to the horizon ``N``.
    """
    if J.relaxed:
        raise NotLowering("relaxed-degree operators have no lowering profile", condition="relaxed")
    k = next((v for v, a in enumerate(J.coeffs) if a), None)
    if k is None:
        raise NotLowering("zero operator", condition="zero")
    for v in range(k, J.N + 1):
        if J.coeffs[v].degree > v - k:
            raise NotLowering(
                f"condition b) fails: deg a_{v} = {J.coeffs[v].degree} > {v - k} for k={k}",
                index=v,
                condition="b",
            )
    lambdas = []
    for n in range(J.N - k + 1):
        lam = sum(
            (binom(n + k, n + k - v) * J.coeffs[n + k - v].coeff(n - v) for v in range(n + 1)),
            Fraction(0),
        )
        if lam == 0:
            raise NotLowering(
                f"condition c) fails: lambda_{n + k}^[{k}] = 0", index=n + k, condition="c"
            )
        lambdas.append(lam)
    return LoweringProfile(k, tuple(lambdas), J.N)


def op_series_truncated(J: OperatorJ, x0, z_order: int) -> Poly:
    """``sum_{n <= z_order} a_n(x0)/n! z^n`` as a polynomial in ``z``."""
    if z_order > J.N:
        raise HorizonExceeded(f"series order {z_order} beyond horizon N={J.N}", index=z_order)
    x0 = as_scalar(x0)
    return Poly(J.coeffs[n](x0) / math.factorial(n) for n in range(z_order + 1))


# builders ---------------------------------------------------------------------


def identity(N: int, s=1) -> OperatorJ:
    return OperatorJ([Poly.constant(s)], N)


def derivative(N: int) -> OperatorJ:
    """``D``: ``a_n = delta_{n,1}``."""
    return OperatorJ([Poly(), Poly.constant(1)], N)


def dxd(N: int) -> OperatorJ:
    """``DxD = D + xD^2``."""
    return OperatorJ([Poly(), Poly.constant(1), 2 * X], N)


def affine(s, A, B, N: int) -> OperatorJ:
    """``s * p(Ax + B)``, with ``a_n = s((A-1)x + B)^n``."""
    s, A, B = as_scalar(s), as_scalar(A), as_scalar(B)
    if s == 0 or A == 0:
        raise BadParameter("affine operator needs s != 0 and A != 0")
    lin = Poly([B, A - 1])
    out, p = [], Poly.constant(1)
    for _ in range(N + 1):
        out.append(p * s)
        p = p * lin
    return OperatorJ(out, N)


def divided_difference(w, N: int) -> OperatorJ:
    """Forward difference quotient ``(f(x+w) - f(x))/w``: ``a_0 = 0``, ``a_n = w^(n-1)``."""
    w = as_scalar(w)
    if w == 0:
        raise BadParameter("divided difference step must be nonzero")
    return OperatorJ([Poly()] + [Poly.constant(w ** (n - 1)) for n in range(1, N + 1)], N)


def _is_root_of_unity(q) -> bool:
    return q == 1 or q == -1


def q_derivative(q, N: int) -> OperatorJ:
    """``(f(qx) - f(x)) / ((q-1)x)``: ``a_0 = 0``, ``a_n = (q-1)^(n-1) x^(n-1)``."""
    q = as_scalar(q)
    if q == 0 or _is_root_of_unity(q):
        raise BadParameter(f"q = {q} is zero or a root of unity")
    return OperatorJ(
        [Poly()] + [Poly.monomial(n - 1, (q - 1) ** (n - 1)) for n in range(1, N + 1)], N
    )


def _power_hits(q: Fraction, target: Fraction) -> int | None:
    """Smallest ``n >= 0`` with ``q**n == target`` for rational ``q``, else ``None``."""
    if target == 0:
        return None
    if abs(q) == 1:
        for n in (0, 1):
            if q**n == target:
                return n
        return None
    p, n = Fraction(1), 0
    growing = abs(q) > 1
    while (abs(p) <= abs(target)) if growing else (abs(p) >= abs(target)):
        if p == target:
            return n
        p *= q
        n += 1
    return None


def i_q_omega(q, omega, N: int) -> OperatorJ:
    """``f(x) + omega f(qx)``: ``a_0 = 1 + omega``, ``a_n = omega (q-1)^n x^n``."""
    q, omega = as_scalar(q), as_scalar(omega)
    if omega == 0:
        raise BadParameter("omega must be nonzero")
    if q == 0 or _is_root_of_unity(q):
        raise BadParameter(f"q = {q} is zero or a root of unity")
    if isinstance(q, Fraction) and isinstance(omega, Fraction):
        n = _power_hits(q, -1 / omega)
        if n is not None:
            raise BadParameter(f"1 + omega q^{n} vanishes", index=n)
    out = [Poly.constant(1 + omega)]
    out += [Poly.monomial(n, omega * (q - 1) ** n) for n in range(1, N + 1)]
    return OperatorJ(out, N)


BUILDERS = {
    "identity": identity,
    "derivative": derivative,
    "dxd": dxd,
    "affine": affine,
    "divided_difference": divided_difference,
    "q_derivative": q_derivative,
    "i_q_omega": i_q_omega,
}
