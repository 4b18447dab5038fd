"""The engine against oracles that never touch localization."""

import random

import pytest

from toricmor.fan import fan_f1, fan_p1xp1, projective_space
from toricmor.jacobian import integrate_V
from toricmor.numerics import derive_degree_data
from toricmor.oracles import GenusZeroRing, projective_top_integral


@pytest.mark.parametrize("n, g, d", [(1, 0, 1), (1, 2, 4), (2, 1, 2), (3, 2, 5), (4, 1, 3)])
def test_projective_top_integral(n, g, d):
    assert projective_top_integral(n, g, d) == (n + 1) ** g


@pytest.mark.parametrize("fan_factory, d", [(fan_f1, [1, 3]), (fan_f1, [2, 5]), (fan_p1xp1, [2, 3])])
def test_genus_zero_presentation(fan_factory, d):
    fan = fan_factory()
    dd = derive_degree_data(fan, 0, d)
    ring = GenusZeroRing(fan, dd)
    rng = random.Random(17)
    seen = set()
    for _ in range(12):
        cuts = sorted(rng.randint(0, dd.dim_V) for _ in range(fan.r - 1))
        m = [b - a for a, b in zip([0] + cuts, cuts + [dd.dim_V])]
        value = integrate_V(fan, dd, m)
        assert value == ring.integral(m)
        seen.add(value)
    assert len(seen) > 1


def test_point_class_at_genus_zero(f1):
    dd = derive_degree_data(f1, 0, [1, 3])
    for cone in f1.max_cones:
        m = [dd.N[rho] if rho in cone else dd.N[rho] - 1 for rho in range(f1.r)]
        assert integrate_V(f1, dd, m) == 1


def test_projective_plane_genus_zero_is_constant():
    fan = projective_space(2)
    dd = derive_degree_data(fan, 0, [2])
    ring = GenusZeroRing(fan, dd)
    for m in [(dd.dim_V, 0, 0), (3, 3, 2), (0, 1, 7)]:
        assert integrate_V(fan, dd, m) == ring.integral(m) == 1
