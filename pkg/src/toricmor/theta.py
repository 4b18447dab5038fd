"""The theta subring of H*(J^r) and the Segre push-forward from products of
projectivised Picard bundles.

A :class:`ThetaPoly` is a polynomial in ``theta_1, ..., theta_r`` modulo
``theta_rho^{g+1}``. The cohomological degree of a monomial is twice its
total exponent; methods below report the complex degree.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Iterable, Mapping

from .errors import ThetaError

Exponents = tuple[int, ...]


class ThetaPoly:
    __slots__ = ("r", "g", "_terms")

    def __init__(self, r: int, g: int, terms: Mapping[Exponents, Fraction] | None = None):
        self.r = r
        self.g = g
        clean: dict[Exponents, Fraction] = {}
        for exps, coeff in (terms or {}).items():
            exps = tuple(exps)
            if len(exps) != r:
                raise ThetaError(f"exponent vector {exps} has length {len(exps)}, expected {r}")
            if any(e < 0 for e in exps):
                raise ThetaError(f"negative exponent in {exps}")
            if any(e > g for e in exps):
                continue
            coeff = Fraction(coeff)
            if coeff:
                clean[exps] = clean.get(exps, Fraction(0)) + coeff
        self._terms = {k: v for k, v in clean.items() if v}

    @classmethod
    def one(cls, r: int, g: int) -> ThetaPoly:
        return cls(r, g, {(0,) * r: Fraction(1)})

    @classmethod
    def zero(cls, r: int, g: int) -> ThetaPoly:
        return cls(r, g)

    @classmethod
    def theta(cls, r: int, g: int, rho: int, power: int = 1) -> ThetaPoly:
        exps = [0] * r
        exps[rho] = power
        return cls(r, g, {tuple(exps): Fraction(1)})

    @property
    def terms(self) -> dict[Exponents, Fraction]:
        return dict(self._terms)

    def items(self) -> Iterable[tuple[Exponents, Fraction]]:
        return self._terms.items()

    def is_zero(self) -> bool:
        return not self._terms

    def degrees(self) -> set[int]:
        return {sum(e) for e in self._terms}

    def _check(self, other: ThetaPoly) -> None:
        if (self.r, self.g) != (other.r, other.g):
            raise ThetaError(
                f"parameter mismatch: (r, g) = {(self.r, self.g)} vs {(other.r, other.g)}")

    def __add__(self, other: ThetaPoly) -> ThetaPoly:
        self._check(other)
        out = dict(self._terms)
        for k, v in other._terms.items():
            out[k] = out.get(k, Fraction(0)) + v
        return ThetaPoly(self.r, self.g, out)

    def __neg__(self) -> ThetaPoly:
        return ThetaPoly(self.r, self.g, {k: -v for k, v in self._terms.items()})

    def __sub__(self, other: ThetaPoly) -> ThetaPoly:
        return self + (-other)

    def scale(self, c) -> ThetaPoly:
        c = Fraction(c)
        return ThetaPoly(self.r, self.g, {k: c * v for k, v in self._terms.items()})

    def __mul__(self, other):
        if not isinstance(other, ThetaPoly):
            return self.scale(other)
        return theta_mul(self, other)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, ThetaPoly):
            return NotImplemented
        return (self.r, self.g) == (other.r, other.g) and self._terms == other._terms

    def __hash__(self):
        return hash((self.r, self.g, frozenset(self._terms.items())))

    def __repr__(self) -> str:
        return f"ThetaPoly({self.r}, {self.g}, {format_theta(self)})"

    def to_records(self) -> list[dict]:
        return [{"exponents": list(k), "coeff": str(v)} for k, v in sorted(self._terms.items())]

    @classmethod
    def from_records(cls, r: int, g: int, records: Iterable[Mapping]) -> ThetaPoly:
        return cls(r, g, {tuple(rec["exponents"]): Fraction(rec["coeff"]) for rec in records})


def theta_mul(a: ThetaPoly, b: ThetaPoly) -> ThetaPoly:
    """Product with ``theta_rho^{g+1} = 0``."""
    a._check(b)
    g = a.g
    out: dict[Exponents, Fraction] = {}
    for ka, va in a._terms.items():
        for kb, vb in b._terms.items():
            k = tuple(x + y for x, y in zip(ka, kb))
            if any(e > g for e in k):
                continue
            out[k] = out.get(k, Fraction(0)) + va * vb
    return ThetaPoly(a.r, g, out)


def theta_pow(a: ThetaPoly, k: int) -> ThetaPoly:
    out = ThetaPoly.one(a.r, a.g)
    for _ in range(k):
        out = theta_mul(out, a)
    return out


def format_theta(p: ThetaPoly) -> str:
    if p.is_zero():
        return "0"
    parts = []
    for exps, c in sorted(p.items()):
        mono = "*".join(f"t{i + 1}" if e == 1 else f"t{i + 1}^{e}"
                        for i, e in enumerate(exps) if e)
        if not mono:
            parts.append(str(c))
        elif c == 1:
            parts.append(mono)
        else:
            parts.append(f"({c})*{mono}")
    return " + ".join(parts)


@dataclass(frozen=True)
class LMonomial:
    """``prod Lambda_rho^{k_rho}`` over the rays ``support`` surviving on a fixed component."""

    support: tuple[int, ...]
    exponents: tuple[int, ...]

    def __post_init__(self):
        if len(self.support) != len(self.exponents):
            raise ThetaError("support and exponents differ in length")
        if any(k < 0 for k in self.exponents):
            raise ThetaError(f"negative exponent in {self.exponents}")


def segre_factor(k: int, N: int, g: int) -> tuple[int, Fraction] | None:
    """Push-forward of ``O(1)^k`` from P(W) with rank N and c(W) = exp(-theta).

    Returns ``(theta power, coefficient)`` or None when the result vanishes.
    """
    j = k - N + 1
    if 0 <= j <= g:
        return j, Fraction(1, factorial(j))
    return None


def segre_pushforward(mono: LMonomial, N, g: int, r: int | None = None) -> ThetaPoly:
    """``prod theta_rho^{k-N+1} / (k-N+1)!`` inside the window, else zero."""
    r = len(N) if r is None else r
    exps = [0] * r
    coeff = Fraction(1)
    for rho, k in zip(mono.support, mono.exponents):
        res = segre_factor(k, N[rho], g)
        if res is None:
            return ThetaPoly.zero(r, g)
        exps[rho] = res[0]
        coeff *= res[1]
    out = ThetaPoly(r, g, {tuple(exps): coeff})
    fibre_dim = sum(N[rho] - 1 for rho in mono.support)
    assert out.degrees() == {sum(mono.exponents) - fibre_dim}
    return out
