"""Independent checks that avoid the localization engine.

* projective-space targets: W is the projectivisation of one bundle of rank
  ``sum N_rho`` with total Chern class ``exp(-sum theta_rho)``, so push-forwards
  are Segre classes;
* the Euler number of the fibre Y, counted as maximal cones of its fan;
* genus zero: the cohomology ring of Y presented by linear and
  primitive-collection relations, evaluated with a Groebner basis.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import factorial, prod
from typing import Sequence

import sympy

from .fan import Fan, primitive_collections, relation_matrix
from .numerics import DegreeData
from .theta import ThetaPoly, theta_pow


def projective_segre(r: int, g: int, N: Sequence[int], k: int) -> ThetaPoly:
    """``q_* O(1)^k`` on P(W_1 + ... + W_r) with ``c(W_rho) = exp(-theta_rho)``."""
    i = k - (sum(N) - 1)
    if i < 0:
        return ThetaPoly.zero(r, g)
    total = ThetaPoly.zero(r, g)
    for rho in range(r):
        total = total + ThetaPoly.theta(r, g, rho)
    return theta_pow(total, i).scale(Fraction(1, factorial(i)))


def projective_top_integral(n: int, g: int, d: int) -> Fraction:
    """``int_V Lambda^{dim V}`` for P^n targets, pulling back diagonally to one Jacobian."""
    r = n + 1
    N = [d - (g - 1)] * r
    dim_V = sum(N) + (g - 1)
    s = projective_segre(r, g, N, dim_V)
    # every theta_rho pulls back to the same theta, and int_J theta^g = g!
    return sum((c * factorial(g) for exps, c in s.items() if sum(exps) == g), Fraction(0))


def euler_char_by_counting(fan: Fan, dd: DegreeData) -> int:
    """Maximal cones of the fibre's fan: (sum N - l)-subsets of the block
    coordinates containing no full block-union over a primitive collection."""
    blocks = [(rho, i) for rho in range(fan.r) for i in range(dd.N[rho])]
    prims = [set(p) for p in primitive_collections(fan)]
    count = 0
    for removed in combinations(range(len(blocks)), fan.l):
        dropped_rays = {blocks[j][0] for j in removed}
        # a full block of rho survives iff no coordinate of rho was removed
        if all(p & dropped_rays for p in prims):
            count += 1
    return count


class GenusZeroRing:
    """H*(Y) = Q[L_1..L_l] / (prod_{rho in pi} Lambda_rho^{N_rho}) at genus zero."""

    def __init__(self, fan: Fan, dd: DegreeData):
        if dd.g != 0:
            raise ValueError("genus-zero presentation only")
        self.fan, self.dd = fan, dd
        self.gens = sympy.symbols(f"L1:{fan.l + 1}")
        A = relation_matrix(fan)
        self.lams = list(self.gens) + [
            sum(A[lam][nu] * self.gens[lam] for lam in range(fan.l)) for nu in range(fan.n)]
        rels = [sympy.expand(prod(self.lams[rho] ** dd.N[rho] for rho in p))
                for p in primitive_collections(fan)]
        self.basis = sympy.groebner(rels, *self.gens, order="grevlex", domain="QQ")
        cone = fan.max_cones[fan.distinguished]
        point = [dd.N[rho] if rho in cone else dd.N[rho] - 1 for rho in range(fan.r)]
        self.point = self._reduce(point)
        if self.point == 0:
            raise ArithmeticError("point class reduced to zero")

    def _reduce(self, m: Sequence[int]):
        expr = sympy.expand(prod(self.lams[rho] ** k for rho, k in enumerate(m)))
        return self.basis.reduce(expr)[1]

    def integral(self, m: Sequence[int]) -> Fraction:
        rem = self._reduce(m)
        if rem == 0:
            return Fraction(0)
        ratio = sympy.nsimplify(sympy.cancel(rem / self.point))
        if not ratio.is_Rational:
            raise ArithmeticError(f"top-degree part is not one-dimensional: {ratio}")
        return Fraction(int(ratio.p), int(ratio.q))
