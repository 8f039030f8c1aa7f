import math
from fractions import Fraction as F

import pytest
from hypothesis import given, settings

from lowerop.errors import BadParameter, DegreeViolation, HorizonExceeded, NotDegreeNonincreasing, NotIsomorphism, NotLowering
from lowerop.operator import (
    OperatorJ,
    affine,
    derivative,
    divided_difference,
    dxd,
    i_q_omega,
    identity,
    isomorphism_lambdas,
    op_apply,
    op_compose,
    op_from_images,
    op_images,
    op_invert,
    op_lowering_order,
    op_series_truncated,
    op_shift,
    q_derivative,
)
from lowerop.polyalg import Poly, X

from helpers import operators, polys

N = 8


def test_from_coeffs_examples():
    D = OperatorJ([Poly(), Poly([1])], N)
    assert op_apply(D, Poly.monomial(3)) == Poly.monomial(2, 3)
    assert dxd(N).coeffs[:3] == (Poly(), Poly([1]), 2 * X)
    I = OperatorJ([Poly([1])], N)
    assert op_apply(I, Poly([1, 2, 3])) == Poly([1, 2, 3])


def test_degree_violation():
    with pytest.raises(DegreeViolation):
        OperatorJ([Poly([0, 1])], 4)


def test_apply_examples():
    assert op_apply(dxd(N), Poly.monomial(3)) == Poly.monomial(2, 9)
    assert op_apply(i_q_omega(2, 1, N), Poly.monomial(2)) == Poly.monomial(2, 5)
    J = OperatorJ([Poly([F(7, 3)]), Poly([1, 1])], N)
    assert op_apply(J, Poly([5])) == Poly([F(35, 3)])
    with pytest.raises(HorizonExceeded):
        op_apply(derivative(2), Poly.monomial(3))


def test_images_examples():
    assert op_images(derivative(N), 5) == Poly.monomial(4, 5)
    w = F(1, 2)
    assert op_images(divided_difference(w, N), 2) == Poly([w, 2])
    q = F(3)
    assert op_images(q_derivative(q, N), 3) == Poly.monomial(2, q * q + q + 1)


def test_from_images_examples():
    J = op_from_images([Poly.monomial(n) for n in range(N + 1)])
    assert J == identity(N)
    B = F(2, 3)
    J = op_from_images([Poly([B, 1]) ** n for n in range(N + 1)])
    assert all(J.a(n) == Poly([B**n]) for n in range(N + 1))
    J = op_from_images([Poly.monomial(n - 1, n * n) if n else Poly() for n in range(N + 1)])
    assert J == dxd(N)
    with pytest.raises(NotDegreeNonincreasing):
        op_from_images([Poly([1]), Poly([0, 0, 1])])


def test_builders_closed_forms():
    s, A, B, w, q, om = F(2), F(3), F(1), F(1, 2), F(3), F(2)
    J = affine(s, A, B, 10)
    assert all(J.a(n) == Poly([B, A - 1]) ** n * s for n in range(11))
    J = divided_difference(w, 10)
    assert J.a(0) == Poly() and all(J.a(n + 1) == Poly([w**n]) for n in range(10))
    J = q_derivative(q, 10)
    assert all(J.a(n + 1) == Poly.monomial(n, (q - 1) ** n) for n in range(10))
    J = i_q_omega(q, om, 10)
    assert J.a(0) == Poly([1 + om])
    assert all(J.a(n) == Poly.monomial(n, om * (q - 1) ** n) for n in range(1, 11))


def test_builder_guards():
    with pytest.raises(BadParameter):
        q_derivative(1, 4)
    with pytest.raises(BadParameter):
        q_derivative(-1, 4)
    with pytest.raises(BadParameter):
        i_q_omega(2, F(-1, 4), 4)  # 1 + omega q^2 = 0
    with pytest.raises(BadParameter):
        affine(0, 1, 1, 4)


def test_shift_examples():
    assert op_shift(derivative(N), 1).a(0) == Poly([1])
    J = dxd(N)
    assert op_shift(J, 0) is J
    S = op_shift(J, 1)
    assert S.relaxed and S.a(0) == Poly([1]) and S.a(1) == 2 * X
    with pytest.raises(NotLowering):
        op_lowering_order(S)


def test_compose_examples():
    D = derivative(N)
    DD = op_compose(D, D)
    assert DD.a(2) == Poly([2]) and all(DD.a(v) == Poly() for v in range(N + 1) if v != 2)
    assert op_apply(DD, Poly.monomial(3)) == Poly([0, 6])
    J = dxd(N)
    assert op_compose(identity(N), J) == J
    A, B, A2, B2 = F(2), F(-1), F(1, 3), F(5)
    K, J = affine(1, A, B, N), affine(1, A2, B2, N)
    # K(J(p))(x) = p(A2 (A x + B) + B2)
    assert op_apply(op_compose(K, J), X) == Poly([A2 * B + B2, A * A2])
    # the map x -> A (A2 x + B2) + B is the other order
    assert op_apply(op_compose(J, K), X) == Poly([A * B2 + B, A * A2])


def test_invert_examples():
    assert op_invert(identity(N, 2)) == identity(N, F(1, 2))
    inv = op_invert(OperatorJ([Poly([1]), Poly([1])], N))
    assert all(inv.a(n) == Poly([(-1) ** n * math.factorial(n)]) for n in range(N + 1))
    with pytest.raises(NotIsomorphism):
        op_invert(derivative(N))


def test_lowering_order_examples():
    p = op_lowering_order(derivative(N))
    assert p.order == 1 and list(p.lambdas) == list(range(1, N + 1))
    p = op_lowering_order(OperatorJ([Poly(), Poly(), Poly([1])], N))
    assert p.order == 2 and list(p.lambdas) == [F((n + 1) * (n + 2), 2) for n in range(N - 1)]
    q, om = F(2), F(3)
    p = op_lowering_order(i_q_omega(q, om, N))
    assert p.order == 0 and list(p.lambdas) == [1 + om * q**n for n in range(N + 1)]
    p = op_lowering_order(dxd(N))
    assert p.order == 1 and list(p.lambdas) == [(n + 1) ** 2 for n in range(N)]


def test_lowering_order_failures():
    with pytest.raises(NotLowering) as e:
        op_lowering_order(OperatorJ([Poly(), Poly(), Poly([0, 1])], N))
    assert e.value.condition == "b"
    with pytest.raises(NotLowering) as e:
        op_lowering_order(OperatorJ([Poly(), Poly([-1]), Poly([0, 2])], N))
    assert (e.value.condition, e.value.index) == ("c", 2)


def test_series_examples():
    assert op_series_truncated(derivative(N), F(7), 3) == Poly([0, 1])
    w = F(1, 2)
    assert op_series_truncated(divided_difference(w, N), 5, 3) == Poly([0, 1, w / 2, w * w / 6])
    q, om, x0 = F(3), F(2), F(1, 5)
    assert op_series_truncated(i_q_omega(q, om, N), x0, 1) == Poly([1 + om, om * (q - 1) * x0])


@settings(max_examples=40, deadline=None)
@given(operators(6), polys(6))
def test_canonical_round_trip_and_images(J, p):
    assert op_from_images([op_images(J, n) for n in range(J.N + 1)]) == J
    assert sum((op_images(J, n) * c for n, c in enumerate(p.coeffs)), Poly()) == op_apply(J, p)


@settings(max_examples=30, deadline=None)
@given(operators(5), operators(5), polys(5))
def test_compose_is_composition(K, J, p):
    assert op_apply(op_compose(K, J), p) == op_apply(K, op_apply(J, p))


@settings(max_examples=30, deadline=None)
@given(operators(5), polys(3), polys(2))
def test_leibniz_both_orderings(J, f, g):
    fg = op_apply(J, f * g)
    lhs_f = sum((op_apply(op_shift(J, n), f) * g.derive(n) / math.factorial(n) for n in range(g.degree + 1)), Poly())
    lhs_g = sum((op_apply(op_shift(J, n), g) * f.derive(n) / math.factorial(n) for n in range(f.degree + 1)), Poly())
    assert lhs_f == fg and lhs_g == fg


def test_isomorphism_lambdas_match_diagonal():
    J = i_q_omega(F(2), F(3), N)
    assert isomorphism_lambdas(J) == [op_images(J, n).coeff(n) for n in range(N + 1)]
