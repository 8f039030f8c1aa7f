"""Fixed points of three-term operators ``J = a_0 I + a_1 D + (a_2/2) D^2``.

Three solvers, one per lowering order:

* ``k = 0``: the fixed points are classical; the operator's coefficients give
  a Pearson pair ``(phi, psi) = (a_2, -2 a_1)`` which is classified (Bessel,
  Jacobi, Laguerre, Hermite) together with the affine map to canonical form.
* ``k = 1``: Laguerre family (or Hermite when ``J`` is a multiple of ``D``).
* ``k = 2``: Hermite.

Each solver rebuilds a concrete sequence and verifies it exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import (
    BadParameter,
    InadmissiblePair,
    NoClassicalSolution,
    NoSolution,
    NotAFixedPoint,
    NotLowering,
    NotRegular,
)
from .functional import MomentFunctional, fn_derive, fn_left_mul, fn_pair
from .mps import MPS, Orthogonal, mps_fixed_point_check, mps_generate
from .operator import OperatorJ, isomorphism_lambdas, op_apply, op_lowering_order
from .polyalg import Poly, Surd, X, as_scalar, sqrt

__all__ = [
    "PearsonPair",
    "ClassificationReport",
    "FamilySolution",
    "pearson_from_J_k0",
    "moments_from_pearson",
    "classify_affine",
    "mops_from_moments",
    "solve_k0",
    "solve_k1",
    "solve_k2",
    "pearson_verify",
    "pearson_affine",
    "admissibility_index",
    "laguerre_structure",
    "hermite_structure",
]


@dataclass(frozen=True)
class PearsonPair:
    """``D(phi u) + psi u = 0``."""

    phi: Poly
    psi: Poly

    def __post_init__(self):
        if self.phi.degree > 2:
            raise ValueError("deg phi must be <= 2")
        if self.psi.degree > 1:
            raise ValueError("deg psi must be <= 1")

    def scaled(self, c) -> PearsonPair:
        return PearsonPair(self.phi * c, self.psi * c)


@dataclass
class ClassificationReport:
    case_tag: str  # A-Bessel | A-Jacobi | B-Laguerre | C-Hermite
    params: dict
    affine: tuple  # (A, B): x -> A x + B carries the form to canonical shape
    intermediate: dict = field(default_factory=dict)
    admissible_up_to: int | None = None
    regularity_notes: list = field(default_factory=list)

    @property
    def family(self) -> str:
        return self.case_tag.split("-", 1)[1]


@dataclass
class FamilySolution:
    family: str
    params: dict
    affine: tuple
    free_parameters: list = field(default_factory=list)
    notes: list = field(default_factory=list)
    verified_up_to: int | None = None


def _three_term(J: OperatorJ, lowering: bool = False) -> list:
    """``[a_0, a_1, a_2]``, rejecting operators with any later nonzero coefficient."""
    top = J.support()
    if J.relaxed or top > 2:
        msg = "relaxed-degree operator" if J.relaxed else (
            f"operator has a nonzero coefficient a_{top}; only a_0, a_1, a_2 are allowed"
        )
        if lowering:
            raise NotLowering(msg, index=top, condition="profile")
        raise BadParameter(msg, index=top)
    return [J.coeffs[v] if v <= J.N else Poly() for v in range(3)]


def admissibility_index(a11, a22) -> int | None:
    """First ``n >= 0`` with ``2 a_1^{[1]} + a_2^{[2]} n = 0``, or ``None`` if there is none."""
    if a22 == 0:
        return 0 if a11 == 0 else None
    r = -2 * a11 / a22
    if r.denominator == 1 and r >= 0:
        return int(r)
    return None


def pearson_from_J_k0(J: OperatorJ) -> tuple[PearsonPair, Fraction]:
    """``(phi, psi) = (a_2, -2 a_1)`` and ``beta_0 = -a_0^{[1]} / a_1^{[1]}``."""
    a0, a1, a2 = _three_term(J)
    a11, a01 = a1.coeff(1), a1.coeff(0)
    if a11 == 0:
        raise NoClassicalSolution("a_1^[1] = 0 leaves no classical solution")
    a22 = a2.coeff(2)
    n = admissibility_index(a11, a22)
    if n is not None:
        raise InadmissiblePair(f"2 a_1^[1] + a_2^[2] n vanishes at n = {n}", index=n)
    return PearsonPair(a2, -2 * a1), -a01 / a11


def moments_from_pearson(p: PearsonPair, M: int) -> MomentFunctional:
    """Moments ``(u)_0 = 1, .., (u)_M`` solving ``D(phi u) + psi u = 0`` degree by degree.

    Pairing with ``x^n`` gives
    ``(psi_1 - n phi_2) m_{n+1} = n phi_1 m_n + n phi_0 m_{n-1} - psi_0 m_n``.
    """
    phi, psi = p.phi, p.psi
    m = [Fraction(1)]
    for n in range(M):
        lead = psi.coeff(1) - n * phi.coeff(2)
        if lead == 0:
            raise InadmissiblePair(f"moment recursion stalls at n = {n}", index=n)
        rhs = n * phi.coeff(1) * m[n] - psi.coeff(0) * m[n]
        if n >= 1:
            rhs += n * phi.coeff(0) * m[n - 1]
        m.append(rhs / lead)
    return MomentFunctional(m)


def pearson_verify(p: PearsonPair, u: MomentFunctional) -> bool:
    """Every determined moment of ``D(phi u) + psi u`` vanishes."""
    lhs = fn_derive(fn_left_mul(p.phi, u)) + fn_left_mul(p.psi, u)
    return lhs.is_zero()


def pearson_affine(p: PearsonPair, A, B) -> PearsonPair:
    """Pair for the transported form: ``A^{-t} phi(Ax+B)``, ``A^{1-t} psi(Ax+B)``, ``t = deg phi``."""
    t = max(p.phi.degree, 0)
    A = as_scalar(A)
    return PearsonPair(p.phi.affine_sub(A, B) * A ** (-t), p.psi.affine_sub(A, B) * A ** (1 - t))


def classify_affine(p: PearsonPair, beta0, horizon: int | None = None) -> ClassificationReport:
    """Reduce ``(phi, psi)`` to a canonical classical pair.

    ``phi = a_2`` and ``psi = -2 a_1`` as produced by :func:`pearson_from_J_k0`;
    every formula below only uses ratios of these coefficients, so a common
    scale factor on the pair does not change the report.
    """
    phi, psi = p.phi, p.psi
    if phi.is_zero():
        raise NoClassicalSolution("phi = 0")
    a22, a12, a02 = phi.coeff(2), phi.coeff(1), phi.coeff(0)
    a11, a01 = -psi.coeff(1) / 2, -psi.coeff(0) / 2
    if a11 == 0:
        raise NoClassicalSolution("psi is constant")
    beta0 = as_scalar(beta0)
    notes = []
    deg = phi.degree
    if deg == 2:
        d = -a12 / (2 * a22)
        mu = -a02 / a22 + d * d
        ratio = a11 / a22
        if mu == 0:
            report = ClassificationReport(
                "A-Bessel",
                {"alpha": ratio},
                (Fraction(1), d),
                {"d": d, "mu": mu},
            )
            notes.append("Bessel regularity not enforced; see Gram check during reconstruction")
        else:
            root = sqrt(mu)
            shift = a01 / a11
            alpha = ratio * (root - d - shift) - 1
            beta = ratio * (root + d + shift) - 1
            report = ClassificationReport(
                "A-Jacobi",
                {"alpha": alpha, "beta": beta},
                (root, d),
                {"d": d, "mu": mu},
            )
            if isinstance(root, Surd) and root.formal_nonreal:
                notes.append("mu < 0: sqrt(mu) is formal (non-real)")
            notes.append("Jacobi regularity (alpha, beta, alpha+beta+1 conditions) not enforced")
    elif deg == 1:
        A = -a12 / (2 * a11)
        B = -a02 / a12
        alpha = -1 + (2 / a12) * (a01 - a02 * a11 / a12)
        report = ClassificationReport("B-Laguerre", {"alpha": alpha}, (A, B))
        if alpha.denominator == 1 and alpha <= -1:
            notes.append(f"alpha = {alpha} is a negative integer: form is not regular")
    else:
        A = sqrt(-a02 / a11)
        report = ClassificationReport("C-Hermite", {}, (A, beta0))
        if isinstance(A, Surd) and A.formal_nonreal:
            notes.append("dilation sqrt(-a_0^[2]/a_1^[1]) is formal (non-real)")
    report.admissible_up_to = horizon
    report.regularity_notes = notes
    return report


def mops_from_moments(u: MomentFunctional, N: int) -> tuple[list, list]:
    """Monic orthogonal ``P_0..P_N`` and norms ``<u, P_n^2>`` by exact Gram-Schmidt.

    Needs moments up to ``2N``; a vanishing norm raises :class:`NotRegular`.
    """
    polys, norms = [], []
    for n in range(N + 1):
        p = Poly.monomial(n)
        for j in range(n):
            p = p - polys[j] * (fn_pair(u, Poly.monomial(n) * polys[j]) / norms[j])
        h = fn_pair(u, p * p)
        if h == 0:
            raise NotRegular(f"<u, P_{n}^2> = 0: the form is not regular", index=n)
        polys.append(p)
        norms.append(h)
    return polys, norms


def solve_k0(J: OperatorJ, N: int) -> tuple[ClassificationReport, MPS, list]:
    """Classify the orthogonal fixed points of a three-term ``J`` of order ``k = 0``.

    Pipeline: Pearson pair, moments, Gram reconstruction of the MOPS, then the
    eigenrelation ``J(P_n) = lambda_n P_n`` checked for ``n <= N``.
    """
    if J.N < N:
        raise BadParameter(f"operator horizon {J.N} below requested N={N}", index=N)
    pair, beta0 = pearson_from_J_k0(J)
    report = classify_affine(pair, beta0, horizon=N)
    u = moments_from_pearson(pair, 2 * N + 1)
    polys, norms = mops_from_moments(u, N)
    betas = [fn_pair(u, X * p * p) / h for p, h in zip(polys, norms)]
    gammas = [norms[n + 1] / norms[n] for n in range(N)]
    mops = mps_generate(Orthogonal(betas, gammas), N)
    if tuple(polys) != mops.polys:
        raise AssertionError("Gram and recurrence reconstructions disagree")
    lambdas = isomorphism_lambdas(J)[: N + 1]
    for n, p in enumerate(mops.polys):
        if op_apply(J, p) != p * lambdas[n]:
            raise NotAFixedPoint(f"J(P_{n}) != lambda_{n} P_{n}", index=n)
    zeros = [n for n, l in enumerate(lambdas) if l == 0]
    if zeros:
        report.regularity_notes.append(
            f"lambda_n^[0] vanishes at n = {zeros}: J is not an isomorphism; "
            "the eigenrelation J(P_n) = lambda_n P_n still holds"
        )
    report.regularity_notes.append(f"MOPS regular and eigenrelation verified up to n = {N}")
    return report, mops, lambdas


def laguerre_structure(alpha, N: int, A=1, B=0) -> Orthogonal:
    """Monic Laguerre coefficients carried by ``x -> (x - B)/A``: ``beta_n = A(2n+alpha+1) + B``."""
    A, B = as_scalar(A), as_scalar(B)
    return Orthogonal(
        [A * (2 * n + alpha + 1) + B for n in range(N + 1)],
        [A * A * (n + 1) * (n + alpha + 1) for n in range(N + 1)],
    )


def hermite_structure(N: int) -> Orthogonal:
    """Monic Hermite: ``beta_n = 0``, ``gamma_{n+1} = (n+1)/2``."""
    return Orthogonal([0] * (N + 1), [Fraction(n + 1, 2) for n in range(N + 1)])


def _lowering_three_term(J: OperatorJ, k: int, N: int):
    if J.N < N + k:
        raise BadParameter(f"operator horizon {J.N} below N + k = {N + k}", index=N + k)
    profile = op_lowering_order(J)
    if profile.order != k:
        raise NotLowering(
            f"operator has lowering order {profile.order}, expected {k}",
            index=profile.order,
            condition="profile",
        )
    coeffs = _three_term(J, lowering=True)
    return profile, coeffs


def solve_k1(J: OperatorJ, N: int) -> tuple[FamilySolution, MPS, list]:
    """Orthogonal fixed points of a three-term lowering operator of order one."""
    profile, (_, a1, a2) = _lowering_three_term(J, 1, N)
    a01, a02, a12 = a1.coeff(0), a2.coeff(0), a2.coeff(1)
    lambdas = list(profile.lambdas[: N + 1])
    if a12 != 0:
        alpha = 2 * a01 / a12 - 1
        B = -a02 / a12
        structure = laguerre_structure(alpha, N + 1, 1, B)
        sol = FamilySolution(
            "Laguerre",
            {"alpha": alpha},
            (Fraction(1), B),
            free_parameters=["A"],
            notes=[
                "dilation A is not fixed by the eigenrelation; representative A = 1",
                "beta_n = A(2n + alpha + 1) + B, gamma_{n+1} = A^2 (n+1)(n+alpha+1)",
            ],
        )
    elif a02 == 0:
        structure = hermite_structure(N + 1)
        sol = FamilySolution(
            "Hermite",
            {},
            (Fraction(1), Fraction(0)),
            free_parameters=["A", "B"],
            notes=["J is a multiple of D: Appell case; any affine image of Hermite is a solution"],
        )
    else:
        raise NoSolution("a_1^[2] = 0 with a_0^[2] != 0 forces psi = 0 and a_2 = 0")
    mps = mps_generate(structure, N + 1)
    verdict = mps_fixed_point_check(mps, J, profile)
    if not verdict:
        raise NotAFixedPoint("representative fails the fixed-point check", index=verdict.first_failure)
    sol.verified_up_to = verdict.horizon
    return sol, mps, lambdas


def solve_k2(J: OperatorJ, N: int) -> tuple[FamilySolution, MPS, list]:
    """Orthogonal fixed points of a lowering operator of order two: Hermite."""
    profile, _ = _lowering_three_term(J, 2, N)
    lambdas = list(profile.lambdas[: N + 1])
    mps = mps_generate(hermite_structure(N + 2), N + 2)
    for n in range(N + 1):
        if mps.polys[n + 2].derive(2) != mps.polys[n] * ((n + 1) * (n + 2)):
            raise NotAFixedPoint(f"P''_{n + 2} != (n+1)(n+2) P_{n}", index=n)
    verdict = mps_fixed_point_check(mps, J, profile)
    if not verdict:
        raise NotAFixedPoint("representative fails the fixed-point check", index=verdict.first_failure)
    sol = FamilySolution(
        "Hermite",
        {},
        (Fraction(1), Fraction(0)),
        free_parameters=["A", "B"],
        notes=["Hermite is the only Appell MOPS; affine images are solutions too"],
        verified_up_to=verdict.horizon,
    )
    return sol, mps, lambdas
