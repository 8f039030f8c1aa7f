"""Monic polynomial sequences, their dual sequences, and J-images.

Structure coefficients come in three shapes (orthogonal three-term,
two-orthogonal four-term, general triangular ``chi`` table).  Index
conventions used throughout:

* ``betas[n]`` is ``beta_n``;
* ``gammas[i]`` is ``gamma_{i+1}`` and ``alphas[i]`` is ``alpha_{i+1}``;
* ``chis[n][v]`` is ``chi_{n,v}`` for ``0 <= v <= n``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import DegenerateAffine, NeedMoreCoeffs, NotMonic
from .functional import MomentFunctional, fn_left_mul, fn_pair, fn_transpose_apply
from .operator import OperatorJ, op_apply, op_lowering_order
from .polyalg import ONE, Poly, X, as_scalar, expand_in_basis

__all__ = [
    "Orthogonal",
    "TwoOrtho",
    "General",
    "MPS",
    "DualTable",
    "Orthogonality",
    "FixedPointVerdict",
    "mps_generate",
    "mps_structure_from_polys",
    "mps_dual_table",
    "mps_orthogonality_check",
    "mps_affine_image",
    "mps_j_image",
    "mps_fixed_point_check",
    "to_general",
]


def _scalars(xs) -> tuple:
    return tuple(as_scalar(x) for x in xs)


@dataclass(frozen=True)
class Orthogonal:
    betas: tuple
    gammas: tuple

    def __post_init__(self):
        object.__setattr__(self, "betas", _scalars(self.betas))
        object.__setattr__(self, "gammas", _scalars(self.gammas))
        for i, g in enumerate(self.gammas):
            if g == 0:
                raise ValueError(f"gamma_{i + 1} must be nonzero")

    kind = "orthogonal"


@dataclass(frozen=True)
class TwoOrtho:
    betas: tuple
    alphas: tuple
    gammas: tuple

    def __post_init__(self):
        object.__setattr__(self, "betas", _scalars(self.betas))
        object.__setattr__(self, "alphas", _scalars(self.alphas))
        object.__setattr__(self, "gammas", _scalars(self.gammas))
        for i, g in enumerate(self.gammas):
            if g == 0:
                raise ValueError(f"gamma_{i + 1} must be nonzero")

    kind = "two-ortho"


@dataclass(frozen=True)
class General:
    betas: tuple
    chis: tuple

    def __post_init__(self):
        object.__setattr__(self, "betas", _scalars(self.betas))
        object.__setattr__(self, "chis", tuple(_scalars(row) for row in self.chis))
        for n, row in enumerate(self.chis):
            if len(row) != n + 1:
                raise ValueError(f"chi row {n} must have {n + 1} entries")

    kind = "general"


StructureCoeffs = Orthogonal | TwoOrtho | General


@dataclass(frozen=True)
class MPS:
    structure: object
    polys: tuple

    def __post_init__(self):
        for n, p in enumerate(self.polys):
            if p.degree != n or not p.is_monic():
                raise NotMonic(f"P_{n} is not monic of degree {n}", index=n)

    @property
    def N(self) -> int:
        return len(self.polys) - 1

    def __getitem__(self, n):
        return self.polys[n]


def _need(seq, count, name):
    if len(seq) < count:
        raise NeedMoreCoeffs(f"need {count} {name}, got {len(seq)}", index=len(seq))


def mps_generate(s, N: int) -> MPS:
    """``P_0 .. P_N`` from structure coefficients."""
    if N < 0:
        raise ValueError("N must be >= 0")
    if N >= 1:
        _need(s.betas, N, "betas")
    polys = [ONE]
    if N >= 1:
        polys.append(X - s.betas[0])
    if isinstance(s, Orthogonal):
        _need(s.gammas, N - 1, "gammas")
        for n in range(N - 1):
            polys.append((X - s.betas[n + 1]) * polys[n + 1] - polys[n] * s.gammas[n])
    elif isinstance(s, TwoOrtho):
        _need(s.alphas, N - 1, "alphas")
        _need(s.gammas, N - 2, "gammas")
        if N >= 2:
            polys.append((X - s.betas[1]) * polys[1] - s.alphas[0])
        for n in range(N - 2):
            polys.append(
                (X - s.betas[n + 2]) * polys[n + 2]
                - polys[n + 1] * s.alphas[n + 1]
                - polys[n] * s.gammas[n]
            )
    elif isinstance(s, General):
        _need(s.chis, N - 1, "chi rows")
        for n in range(N - 1):
            p = (X - s.betas[n + 1]) * polys[n + 1]
            for v, c in enumerate(s.chis[n]):
                if c:
                    p = p - polys[v] * c
            polys.append(p)
    else:
        raise TypeError(f"unknown structure {type(s).__name__}")
    return MPS(s, tuple(polys))


def mps_structure_from_polys(polys) -> General:
    """Recover ``beta_n`` and ``chi_{n,v}`` by expanding ``x P_n - P_{n+1}`` in the P-basis."""
    polys = tuple(polys)
    for n, p in enumerate(polys):
        if p.degree != n or not p.is_monic():
            raise NotMonic(f"P_{n} is not monic of degree {n}", index=n)
    betas, chis = [], []
    for n in range(len(polys) - 1):
        c = expand_in_basis(X * polys[n] - polys[n + 1], polys)
        c += [Fraction(0)] * (n + 1 - len(c))
        betas.append(c[n])
        if n >= 1:
            chis.append(c[:n])
    return General(betas, chis)


def to_general(s, N: int) -> General:
    """Rewrite orthogonal / two-orthogonal coefficients as a ``chi`` table covering ``P_0..P_N``."""
    if isinstance(s, General):
        return s
    betas = list(s.betas[:N])
    chis = []
    for n in range(N - 1):
        row = [Fraction(0)] * (n + 1)
        if isinstance(s, Orthogonal):
            row[n] = s.gammas[n]
        else:
            row[n] = s.alphas[n]
            if n >= 1:
                row[n - 1] = s.gammas[n - 1]
        chis.append(row)
    return General(betas, chis)


@dataclass(frozen=True)
class DualTable:
    """``coeffs[m][j]`` with ``x^m = sum_j coeffs[m][j] P_j``; row ``n`` of the dual is column ``n``."""

    coeffs: tuple
    _cache: dict = field(default_factory=dict, compare=False, repr=False)

    @property
    def horizon(self) -> int:
        return len(self.coeffs) - 1

    def dual(self, n: int) -> MomentFunctional:
        """``u_n`` as moments ``(u_n)_m = c_{m,n}`` for ``m <= horizon``."""
        if n not in self._cache:
            self._cache[n] = MomentFunctional(
                row[n] if n < len(row) else Fraction(0) for row in self.coeffs
            )
        return self._cache[n]


def mps_dual_table(m: MPS) -> DualTable:
    rows = []
    for k in range(m.N + 1):
        rows.append(tuple(expand_in_basis(Poly.monomial(k), m.polys)))
    return DualTable(tuple(rows))


class Orthogonality(str, enum.Enum):
    ORTHOGONAL = "orthogonal"
    TWO_ORTHOGONAL_CANDIDATE = "two-orthogonal-candidate"
    NEITHER = "neither"


def mps_orthogonality_check(s: General) -> Orthogonality:
    """Classify a ``chi`` table (horizon-scoped).

    Orthogonal: ``chi_{n,v} = 0`` for ``v < n`` and ``chi_{n,n} != 0``.
    Two-orthogonal: ``chi_{n,v} = 0`` for ``v < n-1`` and ``chi_{n,n-1} != 0``
    (``n >= 1``); ``chi_{n,n}`` is then ``alpha_{n+1}``, free.
    """
    rows = s.chis
    if all(row[n] != 0 and all(c == 0 for c in row[:n]) for n, row in enumerate(rows)):
        return Orthogonality.ORTHOGONAL
    if all(
        all(c == 0 for c in row[: max(n - 1, 0)]) and (n == 0 or row[n - 1] != 0)
        for n, row in enumerate(rows)
    ):
        return Orthogonality.TWO_ORTHOGONAL_CANDIDATE
    return Orthogonality.NEITHER


def mps_affine_image(m: MPS, A, B) -> MPS:
    """``A^{-n} P_n(Ax + B)``; orthogonal coefficients are carried over as ``((b - B)/A, g/A^2)``."""
    A, B = as_scalar(A), as_scalar(B)
    if A == 0:
        raise DegenerateAffine("affine map needs A != 0")
    polys = tuple(p.affine_sub(A, B) / (A**n) for n, p in enumerate(m.polys))
    s = m.structure
    if isinstance(s, Orthogonal):
        new = Orthogonal([(b - B) / A for b in s.betas], [g / (A * A) for g in s.gammas])
    elif isinstance(s, TwoOrtho):
        new = TwoOrtho(
            [(b - B) / A for b in s.betas],
            [a / (A * A) for a in s.alphas],
            [g / (A**3) for g in s.gammas],
        )
    else:
        new = mps_structure_from_polys(polys)
    return MPS(new, polys)


def mps_j_image(m: MPS, J: OperatorJ, profile=None) -> MPS:
    """Normalized J-image ``J(P_{n+k}) / lambda_{n+k}`` for every ``n`` the horizons allow."""
    profile = profile or op_lowering_order(J)
    k = profile.order
    top = min(m.N, J.N)
    polys = tuple(op_apply(J, m.polys[n + k]) / profile.lam(n + k) for n in range(top - k + 1))
    return MPS(mps_structure_from_polys(polys), polys)


@dataclass(frozen=True)
class FixedPointVerdict:
    polynomial_side: bool
    dual_side: bool
    horizon: int  # fixed point checked for n <= horizon
    moment_horizon: int
    first_failure: int | None = None

    @property
    def holds(self) -> bool:
        return self.polynomial_side and self.dual_side

    def __bool__(self):
        return self.holds


def mps_fixed_point_check(m: MPS, J: OperatorJ, profile=None, dual: DualTable | None = None) -> FixedPointVerdict:
    """Check ``P~_n = P_n`` directly and through ``J(u_n) = lambda_{n+k} u_{n+k}``.

    Both sides are checked for ``n <= H = min(N_P, N_J) - k``; the dual side
    compares moments ``0..H+k``, which is exactly the range on which the two
    statements are equivalent.  Disagreement means a bug and raises.
    """
    profile = profile or op_lowering_order(J)
    k = profile.order
    top = min(m.N, J.N)
    H = top - k
    image = mps_j_image(m, J, profile)
    poly_fail = next((n for n in range(H + 1) if image.polys[n] != m.polys[n]), None)

    dual = dual or mps_dual_table(m)
    dual_fail = None
    for n in range(H + 1):
        lhs = fn_transpose_apply(J, dual.dual(n)).truncate(top)
        rhs = dual.dual(n + k).truncate(top) * profile.lam(n + k)
        if lhs != rhs:
            dual_fail = n
            break
    poly_ok, dual_ok = poly_fail is None, dual_fail is None
    if poly_ok != dual_ok:
        raise AssertionError(
            f"fixed-point sides disagree (polynomial={poly_ok}, dual={dual_ok}); library bug"
        )
    return FixedPointVerdict(poly_ok, dual_ok, H, top, poly_fail)


def check_orthogonal_dual_recurrence(m: MPS, dual: DualTable | None = None) -> bool:
    """``x u_n = u_{n-1} + beta_n u_n + gamma_{n+1} u_{n+1}`` on the available moments."""
    s = m.structure
    if not isinstance(s, Orthogonal):
        raise TypeError("needs orthogonal structure coefficients")
    dual = dual or mps_dual_table(m)
    for n in range(min(m.N, len(s.betas), len(s.gammas))):
        lhs = fn_left_mul(X, dual.dual(n))
        rhs = dual.dual(n) * s.betas[n] + dual.dual(n + 1) * s.gammas[n]
        if n >= 1:
            rhs = rhs + dual.dual(n - 1)
        if lhs != rhs.truncate(lhs.horizon):
            return False
    return True


def recompute_structure_from_duals(m: MPS, dual: DualTable | None = None) -> General:
    """``beta_n = <u_n, x P_n>`` and ``chi_{n,v} = <u_v, x P_{n+1}>`` from the dual table."""
    dual = dual or mps_dual_table(m)
    betas = [fn_pair(dual.dual(n), X * m.polys[n]) for n in range(m.N)]
    chis = [[fn_pair(dual.dual(v), X * m.polys[n + 1]) for v in range(n + 1)] for n in range(m.N - 1)]
    return General(betas, chis)
