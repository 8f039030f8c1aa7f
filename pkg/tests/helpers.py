"""Random exact inputs shared by the test modules."""

from __future__ import annotations

import random
from fractions import Fraction

from hypothesis import strategies as st

from lowerop.functional import MomentFunctional
from lowerop.mps import TwoOrtho
from lowerop.operator import OperatorJ
from lowerop.polyalg import Poly


def rand_rat(rng: random.Random, lo=-6, hi=6, den=4, nonzero=False) -> Fraction:
    while True:
        q = Fraction(rng.randint(lo, hi), rng.randint(1, den))
        if q or not nonzero:
            return q


def rand_poly(rng: random.Random, deg: int, density=0.7) -> Poly:
    if deg < 0:
        return Poly()
    return Poly(rand_rat(rng) if rng.random() < density else 0 for _ in range(deg + 1))


def rand_operator(rng: random.Random, N: int, sparse=0.4) -> OperatorJ:
    """Random canonical operator: ``deg a_v <= v``, some coefficients left at zero."""
    coeffs = [Poly() if rng.random() < sparse else rand_poly(rng, v) for v in range(N + 1)]
    return OperatorJ(coeffs, N)


def rand_functional(rng: random.Random, M: int) -> MomentFunctional:
    return MomentFunctional(rand_rat(rng) for _ in range(M + 1))


def rand_two_ortho(rng: random.Random, n: int) -> TwoOrtho:
    return TwoOrtho(
        [rand_rat(rng) for _ in range(n)],
        [rand_rat(rng) for _ in range(n)],
        [rand_rat(rng, nonzero=True) for _ in range(n)],
    )


rats = st.fractions(min_value=-8, max_value=8, max_denominator=6)
nonzero_rats = rats.filter(lambda q: q != 0)


def polys(max_deg: int):
    return st.lists(rats, min_size=0, max_size=max_deg + 1).map(Poly)


@st.composite
def operators(draw, N: int):
    coeffs = [draw(polys(v)) for v in range(N + 1)]
    return OperatorJ(coeffs, N)


def functionals(M: int):
    return st.lists(rats, min_size=M + 1, max_size=M + 1).map(MomentFunctional)
