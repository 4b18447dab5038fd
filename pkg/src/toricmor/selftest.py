"""Invariant suite over the built-in fans, with fixed random seeds.

Each check returns None on success and raises (AssertionError or a package
error) on failure. :func:`run` collects the outcomes.
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations
from math import factorial
from typing import Callable, Iterator

from .fan import (BUILTIN_FANS, build_fan, dual_basis, fan_f1, fan_p1, fan_p1xp1,
                  primitive_collections, projective_space, relation_matrix, restriction_coeffs)
from .jacobian import (ExteriorElement, PsiMap, integrate_Jl, integrate_V, psi_pullback,
                       theta_class)
from .localization import (WClass, choose_direction, explicit_exponents,
                           explicit_pushforward, localization_sum, make_direction,
                           pushforward_class, pushforward_combination, relation_class,
                           vanishing_predicate)
from .numerics import derive_degree_data, euler_char_Y
from .oracles import GenusZeroRing, euler_char_by_counting, projective_top_integral
from .theta import LMonomial, ThetaPoly, segre_pushforward, theta_mul

SEED = 20240611

# (fan name, genus, free degrees) used across the suite
CASES = [
    ("P1", 0, (1,)), ("P1", 1, (2,)), ("P1", 2, (4,)),
    ("P1xP1", 0, (1, 2)), ("P1xP1", 1, (2, 3)),
    ("F1", 0, (1, 3)), ("F1", 1, (4, 8)),
]


def _cases():
    for name, g, d in CASES:
        fan = BUILTIN_FANS[name]()
        yield name, fan, derive_degree_data(fan, g, d)


def random_exponents(rng: random.Random, r: int, total: int) -> tuple[int, ...]:
    cuts = sorted(rng.randint(0, total) for _ in range(r - 1))
    bounds = [0] + cuts + [total]
    return tuple(b - a for a, b in zip(bounds, bounds[1:]))


def random_theta(rng: random.Random, r: int, g: int, terms: int = 3) -> ThetaPoly:
    out = {}
    for _ in range(terms):
        exps = tuple(rng.randint(0, g) for _ in range(r))
        out[exps] = Fraction(rng.randint(-5, 5), rng.randint(1, 3))
    return ThetaPoly(r, g, out)


def check_fan_invariants() -> None:
    for fan in [f() for f in BUILTIN_FANS.values()] + [projective_space(2), projective_space(3)]:
        A = relation_matrix(fan)
        again = build_fan(fan.rays, fan.max_cones, fan.distinguished)
        assert relation_matrix(again) == A, "relation matrix unstable under reparse"
        for x, cone in enumerate(fan.max_cones):
            duals = dual_basis(fan, x)
            for rho, u in duals.items():
                for rp in cone:
                    assert fan.pairing(u, rp) == int(rho == rp), "dual basis"
            restr = restriction_coeffs(fan, x)
            for j in range(fan.n):
                m = tuple(int(i == j) for i in range(fan.n))
                combo = {rho: fan.pairing(m, rho) for rho in fan.complement(x)}
                for rho in cone:
                    c = fan.pairing(m, rho)
                    for rp, v in restr[rho].items():
                        combo[rp] = combo.get(rp, 0) + c * v
                assert not any(combo.values()), "restriction relation"
        for p in primitive_collections(fan):
            assert not fan.spans_cone(p)
            assert all(fan.spans_cone(s) for s in combinations(p, len(p) - 1))


def check_dimensions_and_chi() -> None:
    for name, fan, dd in _cases():
        assert dd.dim_V == dd.dim_mor
        chi = euler_char_Y(fan, dd)
        assert chi > 0
        if dd.g == 0:
            assert chi == euler_char_by_counting(fan, dd), f"chi oracle on {name}"
        # relabelling the distinguished cone changes A and d but not chi
        for other in range(len(fan.max_cones)):
            refan = build_fan([fan.rays[i] for i in range(fan.r)], fan.max_cones, other)
            d_new = [dd.d[old] for old in refan.permutation]
            dd2 = derive_degree_data(refan, dd.g, d_new[:refan.l])
            assert tuple(d_new) == dd2.d, "degree completion depends on the chart"
            assert euler_char_Y(refan, dd2) == chi


def check_theta_ring() -> None:
    rng = random.Random(SEED)
    for g in range(4):
        N = [g + 1 + rng.randint(0, 3)]
        # c(W) s(W) = 1 with c = exp(-theta) and s_i = q_* O(1)^{N-1+i}
        for i in range(1, g + 1):
            acc = ThetaPoly.zero(1, g)
            for j in range(i + 1):
                c_j = ThetaPoly.theta(1, g, 0, j).scale(Fraction((-1) ** j, factorial(j)))
                s = segre_pushforward(LMonomial((0,), (N[0] - 1 + i - j,)), N, g)
                acc = acc + theta_mul(c_j, s)
            assert acc.is_zero(), "Chern/Segre duality"
    for _ in range(20):
        a, b, c = (random_theta(rng, 3, 2) for _ in range(3))
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a * b == b * a


def check_cancellation_and_direction() -> None:
    rng = random.Random(SEED)
    for name, fan, dd in _cases():
        d1 = choose_direction(fan)
        d2 = make_direction(fan, tuple(3 ** i + 1 for i in range(fan.n))) if fan.n > 1 \
            else make_direction(fan, (2,))
        for _ in range(3):
            total = dd.dim_Y + rng.randint(0, fan.r * dd.g)
            m = random_exponents(rng, fan.r, total)
            series = localization_sum(fan, dd, m, d1)
            assert not series.polar_part(), f"noncancellation on {name} m={m}"
            assert pushforward_class(fan, dd, m, d1) == pushforward_class(fan, dd, m, d2), \
                f"direction dependence on {name} m={m}"


def check_relations() -> None:
    rng = random.Random(SEED + 1)
    for name, fan, dd in _cases():
        A = relation_matrix(fan)
        r, g = fan.r, dd.g
        prims = primitive_collections(fan)
        for _ in range(2):
            nu = rng.randrange(fan.n)
            lin = WClass.linear(r, g, {fan.l + nu: 1, **{lam: -A[lam][nu] for lam in range(fan.l)}})
            M = WClass.monomial(r, g, random_exponents(rng, r, dd.dim_Y - 1 + rng.randint(0, r * g)))
            assert pushforward_combination(fan, dd, lin * M).is_zero(), f"linear relation on {name}"
            pi = rng.choice(prims)
            e = relation_class(fan, dd, pi)
            low = max(0, dd.dim_Y - sum(dd.N[rho] for rho in pi))
            M = WClass.monomial(r, g, random_exponents(rng, r, low + rng.randint(0, r * g)))
            assert pushforward_combination(fan, dd, e * M).is_zero(), f"Euler relation on {name}"


def check_explicit_formula() -> None:
    for fan, g, d_free, a in [(fan_p1(), 1, (6,), (2, 2)), (fan_p1(), 2, (9,), (1, 1)),
                              (fan_f1(), 0, (1, 9), (1, 1, 1, 3)),
                              (fan_f1(), 1, (4, 12), (1, 1, 1, 3))]:
        dd = derive_degree_data(fan, g, d_free)
        m = explicit_exponents(fan, dd, a)
        assert explicit_pushforward(fan, dd, a) == pushforward_class(fan, dd, m)


def check_vanishing() -> None:
    fan = fan_f1()
    dd = derive_degree_data(fan, 1, (4, 8))
    m = (5, 7, 5, 3)
    assert vanishing_predicate(fan, dd, (0, 2), m).holds
    assert integrate_V(fan, dd, m) == 0
    assert not vanishing_predicate(fan, dd, (2, 3), m).holds


def check_jacobian() -> None:
    for g in range(5):
        assert integrate_Jl(theta_class(g, 1, 0) ** g) == factorial(g)
    rng = random.Random(SEED + 2)
    for fan, g in [(fan_f1(), 1), (fan_f1(), 2), (fan_p1xp1(), 2), (projective_space(2), 2)]:
        psi = PsiMap.from_fan(fan, g)
        for _ in range(5):
            p, q = random_theta(rng, fan.r, g), random_theta(rng, fan.r, g)
            assert psi_pullback(p * q, psi) == psi_pullback(p, psi) * psi_pullback(q, psi)
        for nu in range(fan.n):
            assert (psi.theta_image(fan.l + nu) ** (g + 1)).is_zero()
    psi = PsiMap.from_fan(fan_f1(), 1)
    assert integrate_Jl(psi.theta_image(3) ** 2) == 0
    e = ExteriorElement.generator(2, 0)
    assert integrate_Jl(e) == 0


def check_closed_families() -> None:
    for n, g, d in [(1, 0, 1), (1, 1, 2), (1, 2, 4), (2, 0, 1), (2, 1, 2)]:
        fan = projective_space(n)
        dd = derive_degree_data(fan, g, (d,))
        expected = projective_top_integral(n, g, d)
        assert expected == (n + 1) ** g
        for rho in range(fan.r):
            m = [0] * fan.r
            m[rho] = dd.dim_V
            assert integrate_V(fan, dd, m) == expected


def check_genus_zero_ring() -> None:
    rng = random.Random(SEED + 3)
    for name, fan, dd in _cases():
        if dd.g:
            continue
        ring = GenusZeroRing(fan, dd)
        for _ in range(4):
            m = random_exponents(rng, fan.r, dd.dim_V)
            assert ring.integral(m) == integrate_V(fan, dd, m), f"genus-zero ring on {name}"


CHECKS: dict[str, Callable[[], None]] = {
    "fan-core: duals, restrictions, primitive collections": check_fan_invariants,
    "moduli-numerics: dimensions and chi(Y)": check_dimensions_and_chi,
    "theta-ring: Chern/Segre duality and ring laws": check_theta_ring,
    "localization: cancellation and direction independence": check_cancellation_and_direction,
    "localization: linear and Euler relations annihilated": check_relations,
    "localization: closed form equals constant term": check_explicit_formula,
    "localization: vanishing certificate": check_vanishing,
    "jacobian: normalisation, ring map, nilpotency": check_jacobian,
    "jacobian: projective-space family": check_closed_families,
    "jacobian: genus-zero presentation agrees": check_genus_zero_ring,
}


def run() -> Iterator[tuple[str, bool, str]]:
    for name, check in CHECKS.items():
        try:
            check()
        except Exception as exc:  # report every failure, keep going
            yield name, False, f"{type(exc).__name__}: {exc}"
        else:
            yield name, True, ""
