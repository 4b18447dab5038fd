import random
from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given, settings, strategies as st

from toricmor.errors import JacobianError
from toricmor.fan import fan_f1, projective_space
from toricmor.jacobian import (ExteriorElement, PsiMap, alpha, beta, integrate_Jl, integrate_V,
                               psi_pullback, theta_class)
from toricmor.numerics import derive_degree_data
from toricmor.selftest import random_theta
from toricmor.theta import ThetaPoly


def gen(ngens, i):
    return ExteriorElement.generator(ngens, i)


def test_anticommutation():
    a, b = gen(4, 0), gen(4, 3)
    assert a * b == -(b * a)
    assert (a * a).is_zero()


@settings(max_examples=50)
@given(st.lists(st.integers(0, 5), min_size=1, max_size=6))
def test_sign_is_permutation_parity(indices):
    prod = ExteriorElement.one(6)
    for i in indices:
        prod = prod * gen(6, i)
    if len(set(indices)) < len(indices):
        assert prod.is_zero()
        return
    inversions = sum(1 for i in range(len(indices)) for j in range(i + 1, len(indices))
                     if indices[i] > indices[j])
    mask = sum(1 << i for i in indices)
    assert prod.terms == {mask: (-1) ** inversions}


def test_even_elements_commute():
    rng = random.Random(3)
    for _ in range(10):
        x = ExteriorElement(6, {rng.choice([3, 5, 6, 9, 12, 48]): rng.randint(-3, 3)
                                for _ in range(3)})
        y = ExteriorElement(6, {rng.choice([3, 10, 17, 33, 15]): rng.randint(-3, 3)
                                for _ in range(3)})
        assert x * y == y * x


def test_generator_ordering():
    assert [alpha(2, 0, 0), beta(2, 0, 0), alpha(2, 0, 1), beta(2, 0, 1), alpha(2, 1, 0)] == \
        [0, 1, 2, 3, 4]


@pytest.mark.parametrize("g", range(5))
def test_theta_top_power(g):
    t = theta_class(g, 1, 0)
    assert integrate_Jl(t ** g) == factorial(g)
    assert (t ** (g + 1)).is_zero()


def test_integration_examples():
    t = theta_class(2, 1, 0)
    assert integrate_Jl(t * t) == 2
    t1, t2 = theta_class(1, 2, 0), theta_class(1, 2, 1)
    assert integrate_Jl(t1 * t2) == 1
    assert integrate_Jl(t1) == 0


def test_integration_vanishes_off_top_degree():
    e = ExteriorElement(4, {0b0011: 5, 0b0111: 2, 0: 1})
    assert integrate_Jl(e) == 0


def test_psi_p1_identity():
    psi = PsiMap(((1,),), 1, 1)
    assert psi.theta_image(1) == theta_class(1, 1, 0)
    assert psi_pullback(ThetaPoly.theta(2, 1, 1), psi) == theta_class(1, 1, 0)


def test_psi_f1_cross_terms():
    psi = PsiMap.from_fan(fan_f1(), 1)
    ngens = 4
    a1, b1, a2, b2 = (gen(ngens, i) for i in range(4))
    cross = a1 * b2 + a2 * b1
    assert psi.theta_image(3) == theta_class(1, 2, 0) + theta_class(1, 2, 1) - cross
    assert integrate_Jl(psi.theta_image(3) ** 2) == 0


def test_psi_unit():
    psi = PsiMap.from_fan(fan_f1(), 2)
    assert psi_pullback(ThetaPoly.one(4, 2), psi) == ExteriorElement.one(8)


def test_psi_mismatch():
    with pytest.raises(JacobianError, match="parameter mismatch"):
        psi_pullback(ThetaPoly.one(3, 1), PsiMap.from_fan(fan_f1(), 1))


@pytest.mark.parametrize("fan, g", [(fan_f1(), 1), (fan_f1(), 2), (projective_space(2), 3)])
def test_ring_hom_and_nilpotency(fan, g):
    psi = PsiMap.from_fan(fan, g)
    rng = random.Random(5)
    for _ in range(10):
        p, q = random_theta(rng, fan.r, g), random_theta(rng, fan.r, g)
        assert psi_pullback(p * q, psi) == psi_pullback(p, psi) * psi_pullback(q, psi)
    for nu in range(fan.n):
        image = psi.theta_image(fan.l + nu)
        assert (image ** (g + 1)).is_zero()


def test_integrate_V_examples(p1):
    assert integrate_V(p1, derive_degree_data(p1, 0, [1]), (3, 0)) == 1
    assert integrate_V(p1, derive_degree_data(p1, 1, [2]), (2, 2)) == 2
    assert integrate_V(p1, derive_degree_data(p1, 2, [4]), (4, 3)) == 4


def test_integrate_V_degree_check(p1):
    with pytest.raises(JacobianError, match="degree mismatch"):
        integrate_V(p1, derive_degree_data(p1, 1, [2]), (2, 1))


@pytest.mark.parametrize("g, d", [(0, 1), (1, 2), (1, 3), (2, 4), (3, 6)])
def test_split_invariance_p1(p1, g, d):
    dd = derive_degree_data(p1, g, [d])
    values = {integrate_V(p1, dd, (k, dd.dim_V - k)) for k in range(dd.dim_V + 1)}
    assert values == {Fraction(2 ** g)}


@pytest.mark.parametrize("g, d", [(0, 1), (1, 2), (2, 4)])
def test_split_invariance_p2(g, d):
    fan = projective_space(2)
    dd = derive_degree_data(fan, g, [d])
    total = dd.dim_V
    values = {integrate_V(fan, dd, (i, j, total - i - j))
              for i in range(0, total + 1, 2) for j in range(0, total - i + 1, 3)}
    assert values == {Fraction(3 ** g)}
