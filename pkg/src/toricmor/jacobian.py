"""Exterior-algebra model of H*(J^l), pull-back along psi: J^l -> J^r, and integration.

Generators are ordered ``alpha_1^1, beta_1^1, ..., alpha_g^1, beta_g^1,
alpha_1^2, ...`` and a monomial is a bit set over that ordering. The full
monomial integrates to +1, so ``theta^g`` integrates to ``g!`` on each factor.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .errors import JacobianError
from .fan import Fan, relation_matrix
from .localization import Direction, pushforward_class
from .numerics import DegreeData
from .theta import ThetaPoly


def _reorder_sign(a: int, b: int) -> int:
    """Sign of sorting the concatenation of monomials ``a`` then ``b``."""
    swaps = 0
    while b:
        low = b & -b
        swaps += bin(a & ~((low << 1) - 1)).count("1")
        b ^= low
    return -1 if swaps & 1 else 1


class ExteriorElement:
    __slots__ = ("ngens", "terms")

    def __init__(self, ngens: int, terms: Mapping[int, Fraction] | None = None):
        self.ngens = ngens
        self.terms = {k: Fraction(v) for k, v in (terms or {}).items() if v}

    @classmethod
    def one(cls, ngens: int) -> ExteriorElement:
        return cls(ngens, {0: 1})

    @classmethod
    def generator(cls, ngens: int, index: int, coeff=1) -> ExteriorElement:
        return cls(ngens, {1 << index: coeff})

    def __add__(self, other: ExteriorElement) -> ExteriorElement:
        self._check(other)
        out = defaultdict(Fraction, self.terms)
        for k, v in other.terms.items():
            out[k] += v
        return ExteriorElement(self.ngens, out)

    def __neg__(self) -> ExteriorElement:
        return ExteriorElement(self.ngens, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other: ExteriorElement) -> ExteriorElement:
        return self + (-other)

    def scale(self, c) -> ExteriorElement:
        c = Fraction(c)
        return ExteriorElement(self.ngens, {k: c * v for k, v in self.terms.items()})

    def __mul__(self, other: ExteriorElement) -> ExteriorElement:
        self._check(other)
        out: dict[int, Fraction] = defaultdict(Fraction)
        for ka, va in self.terms.items():
            for kb, vb in other.terms.items():
                if ka & kb:
                    continue
                out[ka | kb] += _reorder_sign(ka, kb) * va * vb
        return ExteriorElement(self.ngens, out)

    def __pow__(self, k: int) -> ExteriorElement:
        out = ExteriorElement.one(self.ngens)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        return (isinstance(other, ExteriorElement) and self.ngens == other.ngens
                and self.terms == other.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def degrees(self) -> set[int]:
        return {bin(k).count("1") for k in self.terms}

    def _check(self, other: ExteriorElement) -> None:
        if self.ngens != other.ngens:
            raise JacobianError(f"parameter mismatch: {self.ngens} vs {other.ngens} generators")

    def __repr__(self) -> str:
        return f"ExteriorElement({self.ngens}, {dict(sorted(self.terms.items()))})"


def alpha(g: int, lam: int, i: int) -> int:
    """Bit index of ``alpha_i^lam`` (0-based ``lam`` and ``i``)."""
    return 2 * (g * lam + i)


def beta(g: int, lam: int, i: int) -> int:
    return 2 * (g * lam + i) + 1


def theta_class(g: int, l: int, lam: int) -> ExteriorElement:  # noqa: E741
    """``theta_lam = sum_i alpha_i^lam beta_i^lam``."""
    ngens = 2 * g * l
    return ExteriorElement(ngens, {(1 << alpha(g, lam, i)) | (1 << beta(g, lam, i)): 1
                                   for i in range(g)})


@dataclass(frozen=True)
class PsiMap:
    """Pull-back along ``(L_1..L_l) -> (L_1..L_l, a_1^lam L_lam, ..., a_n^lam L_lam)``."""

    A: tuple[tuple[int, ...], ...]
    l: int  # noqa: E741
    g: int

    @classmethod
    def from_fan(cls, fan: Fan, g: int) -> PsiMap:
        return cls(relation_matrix(fan), fan.l, g)

    @property
    def r(self) -> int:
        return self.l + (len(self.A[0]) if self.A else 0)

    @property
    def ngens(self) -> int:
        return 2 * self.g * self.l

    def theta_image(self, rho: int) -> ExteriorElement:
        g, l = self.g, self.l
        if rho < l:
            return theta_class(g, l, rho)
        nu = rho - l
        coeffs = [self.A[lam][nu] for lam in range(l)]
        out = ExteriorElement(self.ngens)
        for i in range(g):
            left = ExteriorElement(self.ngens, {1 << alpha(g, lam, i): c
                                                for lam, c in enumerate(coeffs) if c})
            right = ExteriorElement(self.ngens, {1 << beta(g, lam, i): c
                                                 for lam, c in enumerate(coeffs) if c})
            out = out + left * right
        return out


def psi_pullback(p: ThetaPoly, psi: PsiMap) -> ExteriorElement:
    if p.r != psi.r or p.g != psi.g:
        raise JacobianError(f"parameter mismatch: ThetaPoly over (r, g) = {(p.r, p.g)}, "
                            f"psi over {(psi.r, psi.g)}")
    images = [psi.theta_image(rho) for rho in range(psi.r)]
    powers: dict[tuple[int, int], ExteriorElement] = {}

    def power(rho: int, k: int) -> ExteriorElement:
        if (rho, k) not in powers:
            powers[(rho, k)] = ExteriorElement.one(psi.ngens) if k == 0 else power(rho, k - 1) * images[rho]
        return powers[(rho, k)]

    out = ExteriorElement(psi.ngens)
    for exps, coeff in sorted(p.items()):
        term = ExteriorElement(psi.ngens, {0: coeff})
        for rho, k in enumerate(exps):
            if k:
                term = term * power(rho, k)
        out = out + term
    return out


def integrate_Jl(e: ExteriorElement) -> Fraction:
    """Coefficient of the full monomial."""
    return e.terms.get((1 << e.ngens) - 1, Fraction(0))


def integrate_V(fan: Fan, dd: DegreeData, m: Sequence[int],
                direction: Direction | None = None) -> Fraction:
    """``int_V prod Lambda_rho^{m_rho}``; requires ``sum m = dim V``."""
    if sum(m) != dd.dim_V:
        raise JacobianError(f"degree mismatch: sum m = {sum(m)} != dim_V = {dd.dim_V}")
    return integrate_theta(pushforward_class(fan, dd, m, direction), fan, dd.g)


def integrate_theta(p: ThetaPoly, fan: Fan, g: int) -> Fraction:
    return integrate_Jl(psi_pullback(p, PsiMap.from_fan(fan, g)))
