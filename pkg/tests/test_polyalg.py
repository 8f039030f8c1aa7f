from fractions import Fraction as F

import pytest
from hypothesis import given

from lowerop.errors import DegenerateAffine, FieldMismatch
from lowerop.polyalg import Poly, Surd, X, as_scalar, expand_in_basis, sqrt, surd_normalize

from helpers import polys, rats


def P(*cs):
    return Poly(cs)


def test_add_examples():
    assert P(1, 1) + P(-1, -1) == Poly()
    assert (P(1, 1) + P(-1, -1)).degree == -1
    assert P(0, 0, 1) + P(0, 2) == P(0, 2, 1)
    assert P(F(1, 2), 1) + P(F(1, 3)) == P(F(5, 6), 1)


def test_mul_examples():
    assert (X - 1) * (X + 1) == P(-1, 0, 1)
    assert Poly() * P(3, 4) == Poly()
    assert (X - 3) * (X - 5) == P(15, -8, 1)


def test_derive_examples():
    assert P(0, 0, 0, 1).derive() == P(0, 0, 3)
    assert P(0, 0, 0, 1).derive(4) == Poly()
    assert Poly.monomial(4).derive(2) == P(0, 0, 12)


def test_affine_sub_examples():
    assert X.affine_sub(2, 1) == P(1, 2)
    assert P(0, 0, 1).affine_sub(1, 0) == P(0, 0, 1)
    assert P(-1, 0, 1).affine_sub(1, 1) == P(0, 2, 1)
    with pytest.raises(DegenerateAffine):
        X.affine_sub(0, 1)


def test_surd_normalize_examples():
    assert surd_normalize(Surd(0, 1, 4)) == 2
    s = Surd(1, 2, F(9, 4))
    assert (s.rat, s.coef, s.rad) == (4, 0, 1)
    s = Surd(0, 1, 8)
    assert (s.rat, s.coef, s.rad) == (0, 2, 2)


def test_surd_arithmetic():
    r = sqrt(2)
    assert r * r == 2
    assert isinstance(r * r, F)
    assert (1 + r) * (1 - r) == -1
    assert 1 / r == Surd(0, F(1, 2), 2)
    assert sqrt(F(1, 2)) == Surd(0, F(1, 2), 2)
    assert sqrt(-3).formal_nonreal and sqrt(-3) ** 2 == -3
    with pytest.raises(FieldMismatch):
        sqrt(2) + sqrt(3)


def test_as_scalar_rejects_floats():
    with pytest.raises(TypeError):
        as_scalar(0.5)
    assert as_scalar("3/4") == F(3, 4)


def test_expand_in_basis():
    basis = [Poly([1]), X - 3, P(12, -8, 1)]
    assert expand_in_basis(P(0, 0, 1), basis) == [12, 8, 1]


@given(polys(5), polys(5), polys(5))
def test_ring_laws(p, q, r):
    assert (p + q) * r == p * r + q * r
    assert p * q == q * p
    assert (p * q).degree == (-1 if p.is_zero() or q.is_zero() else p.degree + q.degree)


@given(polys(5), polys(5))
def test_leibniz(p, q):
    assert (p * q).derive() == p.derive() * q + p * q.derive()


@given(polys(5), rats.filter(bool), rats, rats)
def test_affine_sub_is_substitution(p, A, B, x):
    assert p.affine_sub(A, B)(x) == p(A * x + B)
