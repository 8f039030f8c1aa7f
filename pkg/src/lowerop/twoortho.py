"""Two-orthogonal sequences and the matrix Pearson relation.

A two-orthogonal MPS obeys the four-term recurrence

    P_{n+3} = (x - beta_{n+2}) P_{n+2} - alpha_{n+2} P_{n+1} - gamma_{n+1} P_n

and its dual sequence is generated by the pair ``U = (u_0, u_1)``.  When the
sequence is also a fixed point of a first-order lowering operator
``J = a_1 D + (a_2/2) D^2`` the pair satisfies ``D(Phi U) + Psi U = 0``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import HorizonExceeded, NeedMoreCoeffs, NoFixedPointSequence, NotAFixedPoint, NotLowering
from .functional import MomentFunctional, fn_derive, fn_left_mul
from .mps import MPS, DualTable, TwoOrtho, mps_dual_table, mps_fixed_point_check, mps_generate
from .operator import LoweringProfile, OperatorJ, op_apply, op_lowering_order
from .polyalg import ONE, Poly, X, as_scalar, expand_in_basis

__all__ = [
    "TwoOrthoData",
    "MatrixPearson",
    "PearsonCheck",
    "two_ortho_data",
    "to_dual_expressions",
    "dual_recurrence_check",
    "dual_pair_expressions_check",
    "build_matrix_pearson",
    "verify_matrix_pearson",
    "find_appell_2ortho",
]


@dataclass(frozen=True)
class TwoOrthoData:
    structure: TwoOrtho
    mps: MPS
    dual_rows: DualTable

    @property
    def N(self) -> int:
        return self.mps.N

    def u(self, n: int) -> MomentFunctional:
        return self.dual_rows.dual(n)


def two_ortho_data(structure: TwoOrtho, N: int) -> TwoOrthoData:
    """Generate ``P_0 .. P_N`` and the dual table with moments ``0..N``."""
    if not isinstance(structure, TwoOrtho):
        raise TypeError("two_ortho_data needs TwoOrtho structure coefficients")
    m = mps_generate(structure, N)
    return TwoOrthoData(structure, m, mps_dual_table(m))


def _coeffs(s: TwoOrtho, count: int = 3):
    for name in ("betas", "alphas", "gammas"):
        if len(getattr(s, name)) < count:
            raise NeedMoreCoeffs(f"need {count} {name}", index=len(getattr(s, name)))
    b, a, g = s.betas, s.alphas, s.gammas
    # a[i] = alpha_{i+1}, g[i] = gamma_{i+1}
    return b, a, g


def to_dual_expressions(t: TwoOrthoData) -> dict:
    """The polynomials with ``u_2 = E1 u_0 + A0 u_1``, ``u_3 = B1 u_0 + F1 u_1``, ``u_4 = E2 u_0 + A1 u_1``."""
    b, a, g = _coeffs(t.structure)
    a1, a2, a3 = a[0], a[1], a[2]
    g1, g2, g3 = g[0], g[1], g[2]
    E1 = (X - b[0]) / g1
    A0 = Poly.constant(-a1 / g1)
    B1 = (X - b[0]) * (-a2 / (g1 * g2)) - Fraction(1) / g2
    F1 = (X - b[1] + a2 * a1 / g1) / g2
    E2 = ((X - b[2]) * E1 - B1 * a3) / g3
    A1 = -(F1 * a3 + ONE + (X - b[2]) * (a1 / g1)) / g3
    return {"E1": E1, "A0": A0, "B1": B1, "F1": F1, "E2": E2, "A1": A1}


def _agree(lhs: MomentFunctional, rhs: MomentFunctional) -> bool:
    M = min(lhs.horizon, rhs.horizon)
    return lhs.truncate(M) == rhs.truncate(M)


def dual_recurrence_check(t: TwoOrthoData) -> bool:
    """``x u_n = u_{n-1} + beta_n u_n + alpha_{n+1} u_{n+1} + gamma_{n+1} u_{n+2}`` for every ``n + 2 <= N``."""
    s = t.structure
    top = min(t.N - 2, len(s.betas) - 1, len(s.alphas) - 1, len(s.gammas) - 1)
    for n in range(top + 1):
        lhs = fn_left_mul(X, t.u(n))
        rhs = t.u(n) * s.betas[n] + t.u(n + 1) * s.alphas[n] + t.u(n + 2) * s.gammas[n]
        if n >= 1:
            rhs = rhs + t.u(n - 1)
        if not _agree(lhs, rhs):
            return False
    return True


def _combo(p: Poly, u: MomentFunctional, q: Poly, v: MomentFunctional) -> MomentFunctional:
    return fn_left_mul(p, u) + fn_left_mul(q, v)


def dual_pair_expressions_check(t: TwoOrthoData) -> bool:
    """``u_2``, ``u_3``, ``u_4`` against their expressions in ``(u_0, u_1)``, moment by moment."""
    if t.N < 4:
        raise HorizonExceeded(f"need P_0 .. P_4, have N = {t.N}", index=4)
    e = to_dual_expressions(t)
    u0, u1 = t.u(0), t.u(1)
    pairs = [(2, "E1", "A0"), (3, "B1", "F1"), (4, "E2", "A1")]
    return all(_agree(t.u(n), _combo(e[p], u0, e[q], u1)) for n, p, q in pairs)


@dataclass(frozen=True)
class MatrixPearson:
    """``D(Phi U) + Psi U = 0`` with ``U = (u_0, u_1)^T``; entries indexed ``phi[i][j]`` from 0."""

    phi: tuple
    psi: tuple
    J: OperatorJ | None = field(default=None, compare=False, repr=False)

    _PHI_BOUNDS = ((1, 1), (2, 1))

    def __post_init__(self):
        for i in range(2):
            for j in range(2):
                if self.phi[i][j].degree > self._PHI_BOUNDS[i][j]:
                    raise ValueError(
                        f"deg phi_{i + 1},{j + 1} = {self.phi[i][j].degree} exceeds {self._PHI_BOUNDS[i][j]}"
                    )

    def degrees(self) -> tuple:
        return tuple(tuple(p.degree for p in row) for row in self.phi)


def _pearson_profile(J: OperatorJ) -> LoweringProfile:
    top = J.support()
    if J.relaxed or top > 2:
        raise NotLowering(f"J needs the form a_1 D + (a_2/2) D^2; a_{top} != 0", index=top, condition="profile")
    profile = op_lowering_order(J)
    if profile.order != 1:
        raise NotLowering(f"J has lowering order {profile.order}, expected 1", condition="profile")
    return profile


def build_matrix_pearson(t: TwoOrthoData, J: OperatorJ) -> MatrixPearson:
    profile = _pearson_profile(J)
    if J.N < 4:
        raise HorizonExceeded("lambda_1 .. lambda_4 need J.N >= 4", index=4)
    l1, l2, l3, l4 = (profile.lam(m) for m in range(1, 5))
    b, a, g = _coeffs(t.structure)
    a1, a2 = a[0], a[1]
    g1, g2 = g[0], g[1]
    e = to_dual_expressions(t)
    E1, A0, B1, F1, E2, A1 = (e[k] for k in ("E1", "A0", "B1", "F1", "E2", "A1"))

    c_a = a1 * l2 / (2 * l1)
    c_g = g1 * l3 / (2 * l1)
    phi11 = Fraction(1, 2) - E1 * c_a - B1 * c_g
    phi12 = (X - b[0]) / 2 - A0 * c_a - F1 * c_g
    d_a = a2 * l3 / l2
    d_g = g2 * l4 / l2
    phi21 = (X - b[1]) * E1 - B1 * d_a - E2 * d_g
    phi22 = (X - b[1]) * A0 - F1 * d_a - A1 * d_g
    psi = ((Poly(), ONE), (E1 * 2, A0 * 2))
    return MatrixPearson(((phi11, phi12), (phi21, phi22)), psi, J)


@dataclass(frozen=True)
class PearsonCheck:
    first: bool
    second: bool
    horizon: int

    def __bool__(self):
        return self.first and self.second


def verify_matrix_pearson(t: TwoOrthoData, mp: MatrixPearson, J: OperatorJ | None = None) -> PearsonCheck:
    """Check both rows of ``D(Phi U) + Psi U = 0`` after gating on the fixed-point property."""
    J = J or mp.J
    if J is None:
        raise ValueError("no operator to gate the fixed-point precondition")
    verdict = mps_fixed_point_check(t.mps, J, dual=t.dual_rows)
    if not verdict:
        raise NotAFixedPoint("J(P_{n+1}) != lambda_{n+1} P_n", index=verdict.first_failure)
    U = (t.u(0), t.u(1))
    rows = []
    for i in range(2):
        lhs = fn_derive(_combo(mp.phi[i][0], U[0], mp.phi[i][1], U[1]))
        lhs = lhs + _combo(mp.psi[i][0], U[0], mp.psi[i][1], U[1])
        rows.append(lhs)
    M = min(r.horizon for r in rows)
    return PearsonCheck(rows[0].truncate(M).is_zero(), rows[1].truncate(M).is_zero(), M)


def find_appell_2ortho(J: OperatorJ, N: int, seeds=(0, 1, 1)) -> TwoOrthoData:
    """Two-orthogonal MPS with ``J(P_{n+1}) = lambda_{n+1} P_n`` for ``n <= N``.

    Degree by degree: with ``r = J(x P_n) - lambda_{n+1} P_n`` written as
    ``sum c_j P_j``, the fixed-point property forces
    ``c_{n-1} = beta_n lambda_n``, ``c_{n-2} = alpha_n lambda_{n-1}``,
    ``c_{n-3} = gamma_{n-1} lambda_{n-2}`` and every lower ``c_j = 0``.
    ``alpha_1`` and ``gamma_1`` are not reached by this system (``J(P_0) = 0``)
    and come from the seeds along with ``beta_0``.
    """
    if N < 1:
        raise ValueError("N must be >= 1")
    _pearson_profile(J)
    # a_v = 0 for v >= 3, so J extends to any horizon
    J = OperatorJ([J.a(v) for v in range(3)], max(J.N, N + 1))
    profile = op_lowering_order(J)
    lam = profile.lam
    b0, a1, g1 = (as_scalar(s) for s in seeds)
    if g1 == 0:
        raise NoFixedPointSequence("seed gamma_1 = 0", index=0)
    betas, alphas, gammas = [b0], [a1], [g1]
    P = [ONE, X - b0]
    for n in range(1, N + 1):
        r = op_apply(J, X * P[n]) - P[n] * lam(n + 1)
        c = expand_in_basis(r, P) + [Fraction(0)] * n
        bad = next((j for j in range(n - 3) if c[j] != 0), None)
        if bad is not None:
            raise NoFixedPointSequence(f"inconsistent at degree {n + 1}: c_{bad} != 0", index=n)
        betas.append(c[n - 1] / lam(n))
        if n >= 2:
            alphas.append(c[n - 2] / lam(n - 1))
        if n >= 3:
            g = c[n - 3] / lam(n - 2)
            if g == 0:
                raise NoFixedPointSequence(f"gamma_{n - 1} = 0: sequence degenerates", index=n)
            gammas.append(g)
        nxt = (X - betas[n]) * P[n] - P[n - 1] * alphas[n - 1]
        if n >= 2:
            nxt = nxt - P[n - 2] * gammas[n - 2]
        P.append(nxt)
    s = TwoOrtho(betas, alphas, gammas)
    m = MPS(s, tuple(P))
    return TwoOrthoData(s, m, mps_dual_table(m))
