import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lowerop.errors import NoFixedPointSequence, NotAFixedPoint, NotLowering
from lowerop.mps import TwoOrtho, mps_fixed_point_check
from lowerop.operator import OperatorJ, derivative
from lowerop.polyalg import Poly, X
from lowerop.twoortho import (
    MatrixPearson,
    build_matrix_pearson,
    dual_pair_expressions_check,
    dual_recurrence_check,
    find_appell_2ortho,
    to_dual_expressions,
    two_ortho_data,
    verify_matrix_pearson,
)
from lowerop.mps import DualTable

from helpers import nonzero_rats, rand_two_ortho, rats

D8 = derivative(8)


def data(betas, alphas, gammas, N=4):
    return two_ortho_data(TwoOrtho(betas, alphas, gammas), N)


def test_dual_expression_examples():
    e = to_dual_expressions(data([0, 5, 5, 5], [0, 7, 7], [1, 3, 3]))
    assert e["E1"] == X and e["A0"] == Poly()
    e = to_dual_expressions(data([0, 5, 5, 5], [3, 0, 7], [1, 1, 3]))
    assert e["B1"] == Poly([-1])
    e = to_dual_expressions(data([5, 0, 5, 5], [1, 1, 7], [1, 2, 3]))
    assert e["F1"] == Poly([F(1, 2), F(1, 2)])


def test_checks_on_random_structures():
    rng = random.Random(5)
    for _ in range(10):
        t = two_ortho_data(rand_two_ortho(rng, 9), 8)
        assert dual_recurrence_check(t)
        assert dual_pair_expressions_check(t)


def test_perturbed_dual_row_fails():
    t = two_ortho_data(rand_two_ortho(random.Random(2), 9), 8)
    rows = [list(r) for r in t.dual_rows.coeffs]
    rows[3][1] += 1
    bad = type(t)(t.structure, t.mps, DualTable(tuple(tuple(r) for r in rows)))
    assert not dual_recurrence_check(bad)


def test_degenerate_gamma_rejected():
    with pytest.raises(ValueError):
        TwoOrtho([0, 0, 0], [1, 1, 1], [1, 0, 1])


def test_appell_instance():
    t = find_appell_2ortho(D8, 6)
    s = t.structure
    assert all(g != 0 for g in s.gammas)
    assert mps_fixed_point_check(t.mps, D8, dual=t.dual_rows).holds
    mp = build_matrix_pearson(t, D8)
    assert mp.psi[1][0] == (X - s.betas[0]) * (2 / s.gammas[0])
    assert mp.psi[1][1] == Poly([-2 * s.alphas[0] / s.gammas[0]])
    e = to_dual_expressions(t)
    # lambda_n = n for J = D
    assert mp.phi[0][0] == F(1, 2) - e["E1"] * s.alphas[0] - e["B1"] * (3 * s.gammas[0] / 2)
    assert verify_matrix_pearson(t, mp)


def test_appell_frozen_values():
    # sequential solve with seeds (0, 1, 1), frozen
    s = find_appell_2ortho(D8, 6).structure
    assert list(s.betas) == [0] * 7
    assert list(s.alphas) == [1, 2, 3, 4, 5, 6]
    assert list(s.gammas) == [1, 3, 6, 10, 15]


def test_appell_n1_seeds():
    b0, a1, g1 = F(1, 3), F(2), F(5)
    t = find_appell_2ortho(D8, 1, (b0, a1, g1))
    P1, P2 = t.mps[1], t.mps[2]
    b1 = t.structure.betas[1]
    assert P2 == (X - b1) * P1 - a1
    assert P2.derive() == 2 * P1
    assert b1 == b0


def test_perturbed_phi_fails():
    t = find_appell_2ortho(D8, 6)
    mp = build_matrix_pearson(t, D8)
    phi = ((mp.phi[0][0] + X, mp.phi[0][1]), mp.phi[1])
    assert not verify_matrix_pearson(t, MatrixPearson(phi, mp.psi, D8))


def test_non_fixed_point_gate():
    t = two_ortho_data(rand_two_ortho(random.Random(9), 9), 8)
    mp = build_matrix_pearson(t, D8)
    with pytest.raises(NotAFixedPoint):
        verify_matrix_pearson(t, mp, D8)


def test_profile_violation():
    with pytest.raises(NotLowering):
        find_appell_2ortho(OperatorJ([Poly(), Poly([0, 1])], 8), 4)
    with pytest.raises(NotLowering):
        find_appell_2ortho(OperatorJ([Poly(), Poly(), Poly([1])], 8), 4)


def test_inconsistency_reported():
    J = OperatorJ([Poly(), Poly([3]), Poly([0, 2])], 10)
    with pytest.raises(NoFixedPointSequence) as e:
        find_appell_2ortho(J, 6)
    assert e.value.index is not None


@settings(max_examples=25, deadline=None)
@given(
    st.lists(rats, min_size=9, max_size=9),
    st.lists(rats, min_size=9, max_size=9),
    st.lists(nonzero_rats, min_size=9, max_size=9),
)
def test_dual_identities_property(b, a, g):
    t = two_ortho_data(TwoOrtho(b, a, g), 8)
    assert dual_recurrence_check(t) and dual_pair_expressions_check(t)
    mp = build_matrix_pearson(t, D8)
    degs = mp.degrees()
    assert degs[0][0] <= 1 and degs[0][1] <= 1 and degs[1][0] <= 2 and degs[1][1] <= 1


@settings(max_examples=15, deadline=None)
@given(rats, rats, nonzero_rats)
def test_appell_property(b0, a1, g1):
    try:
        t = find_appell_2ortho(D8, 5, (b0, a1, g1))
    except NoFixedPointSequence:
        return
    mp = build_matrix_pearson(t, D8)
    assert mps_fixed_point_check(t.mps, D8, dual=t.dual_rows).holds
    assert verify_matrix_pearson(t, mp)
