import pytest

from toricmor.errors import DegreeError
from toricmor.fan import build_fan, projective_space
from toricmor.numerics import derive_degree_data, euler_char_Y
from toricmor.oracles import euler_char_by_counting


def test_p1_degree_data(p1):
    dd = derive_degree_data(p1, 1, [2])
    assert dd.d == (2, 2) and dd.N == (2, 2)
    assert dd.dim_V == 4 and dd.dim_W == 5


def test_f1_degree_data(f1):
    dd = derive_degree_data(f1, 1, [4, 8])
    assert dd.d == (4, 8, 4, 4)
    assert dd.N == (4, 8, 4, 4)
    assert dd.dim_V == 20 == dd.dim_mor
    assert dd.dim_Y == dd.dim_W - 4


def test_degree_bound(f1):
    with pytest.raises(DegreeError, match="rho=4"):
        derive_degree_data(f1, 1, [4, 4])


def test_wrong_number_of_degrees(f1):
    with pytest.raises(DegreeError, match="expected 2 free degrees"):
        derive_degree_data(f1, 1, [4, 8, 4, 4])


def test_negative_genus(p1):
    with pytest.raises(DegreeError):
        derive_degree_data(p1, -1, [2])


def test_chi_examples(p1, f1):
    assert euler_char_Y(p1, derive_degree_data(p1, 0, [1])) == 4
    dd = derive_degree_data(f1, 0, [1, 3])
    assert dd.d == (1, 3, 1, 2) and dd.N == (2, 4, 2, 3)
    assert euler_char_Y(f1, dd) == 28


@pytest.mark.parametrize("g, d", [(0, 1), (1, 2), (2, 5), (3, 9)])
def test_chi_p1_closed(p1, g, d):
    assert euler_char_Y(p1, derive_degree_data(p1, g, [d])) == 2 * (d - g + 1)


@pytest.mark.parametrize("fan_name, g, d", [
    ("p1", 0, [1]), ("p1", 0, [3]), ("p1xp1", 0, [1, 2]), ("f1", 0, [1, 3]), ("f1", 1, [3, 6]),
    ("p1xp1", 2, [4, 5]),
])
def test_chi_matches_counting_oracle(request, fan_name, g, d):
    fan = request.getfixturevalue(fan_name)
    dd = derive_degree_data(fan, g, d)
    assert euler_char_Y(fan, dd) == euler_char_by_counting(fan, dd)


def test_chi_p2():
    fan = projective_space(2)
    dd = derive_degree_data(fan, 0, [1])
    # Y is P^5
    assert euler_char_Y(fan, dd) == 6 == euler_char_by_counting(fan, dd)


def test_chi_invariant_under_chart(f1):
    dd = derive_degree_data(f1, 1, [4, 8])
    chi = euler_char_Y(f1, dd)
    for dist in range(4):
        fan = build_fan(f1.rays, f1.max_cones, dist)
        d = [dd.d[old] for old in fan.permutation]
        dd2 = derive_degree_data(fan, 1, d[:2])
        assert dd2.d == tuple(d)
        assert sorted(dd2.N) == sorted(dd.N)
        assert euler_char_Y(fan, dd2) == chi
