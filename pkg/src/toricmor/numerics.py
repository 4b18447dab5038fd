"""Degree data, rank and dimension constants, and the Euler number of the fibre."""

from __future__ import annotations

from dataclasses import dataclass
from math import prod
from typing import Sequence

from .errors import DegreeError
from .fan import Fan, relation_matrix


@dataclass(frozen=True)
class DegreeData:
    g: int
    d: tuple[int, ...]
    N: tuple[int, ...]
    dim_mor: int
    dim_W: int
    dim_V: int
    dim_Y: int

    @property
    def r(self) -> int:
        return len(self.d)

    def cap(self, rho: int) -> int:
        """Largest exponent of Lambda_rho with a nonzero Segre push-forward."""
        return self.N[rho] + self.g - 1


def derive_degree_data(fan: Fan, g: int, d_free: Sequence[int],
                       A: Sequence[Sequence[int]] | None = None) -> DegreeData:
    """Complete the multi-degree from its first ``l`` entries and derive all constants."""
    if isinstance(g, bool) or not isinstance(g, int) or g < 0:
        raise DegreeError(f"genus must be a nonnegative integer, got {g!r}")
    if len(d_free) != fan.l:
        raise DegreeError(f"expected {fan.l} free degrees, got {len(d_free)}")
    if A is None:
        A = relation_matrix(fan)
    d = list(int(v) for v in d_free)
    for nu in range(fan.n):
        d.append(sum(A[lam][nu] * d[lam] for lam in range(fan.l)))
    for rho, value in enumerate(d):
        if value <= 2 * g - 1:
            raise DegreeError(f"d_rho <= 2g-1 at rho={rho + 1} (d={value}, g={g})")
    N = tuple(v - (g - 1) for v in d)
    dim_mor = sum(d) - fan.n * (g - 1)
    dim_W = sum(d) + fan.n
    dim_V = sum(N) + fan.l * (g - 1)
    dim_Y = dim_W - fan.r * g
    if dim_V != dim_mor:
        raise DegreeError(f"dimension mismatch: dim V = {dim_V} but dim Mor = {dim_mor}")
    return DegreeData(g, tuple(d), N, dim_mor, dim_W, dim_V, dim_Y)


def euler_char_Y(fan: Fan, dd: DegreeData) -> int:
    """Sum over maximal cones of the product of ``N_rho`` over rays outside the cone."""
    return sum(prod(dd.N[rho] for rho in fan.complement(x)) for x in range(len(fan.max_cones)))
