"""Fixed-point localization for push-forwards ``q_*(prod Lambda_rho^{m_rho})``.

Every equivariant parameter ``u_rho(x)`` is restricted to a line ``u = c * t``
through a direction ``v`` in which all of them are nonzero. Each fixed-point
term becomes a finite Laurent series in ``t`` with theta-class coefficients;
after summing over fixed points the negative powers of ``t`` must cancel and
the ``t^0`` coefficient is the non-equivariant push-forward.

Series on a fixed component carry monomials in the surviving classes
``Lambda_rho`` (rho outside the cone). Any monomial whose exponent at some
rho exceeds ``N_rho + g - 1`` is discarded on the spot: it pushes forward to
zero and stays beyond the window after further multiplication.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import count
from math import comb, factorial
from typing import Iterable, Mapping, Sequence

from .errors import LocalizationError, NonCancellationError
from .fan import Fan, dual_basis, restriction_coeffs
from .numerics import DegreeData
from .theta import ThetaPoly, segre_factor

Key = tuple[int, tuple[int, ...], tuple[int, ...]]


# -- directions --------------------------------------------------------------


@dataclass(frozen=True)
class Direction:
    v: tuple[int, ...]
    pairings: Mapping[int, Mapping[int, int]]  # cone -> ray -> <u_rho(x), v>


@lru_cache(maxsize=256)
def _cone_data(fan: Fan, x: int):
    return dual_basis(fan, x), restriction_coeffs(fan, x)


def _pairings(fan: Fan, v: Sequence[int]) -> dict[int, dict[int, int]]:
    out = {}
    for x in range(len(fan.max_cones)):
        duals, _ = _cone_data(fan, x)
        out[x] = {rho: sum(a * b for a, b in zip(u, v)) for rho, u in duals.items()}
    return out


def make_direction(fan: Fan, v: Sequence[int]) -> Direction:
    v = tuple(int(a) for a in v)
    if len(v) != fan.n:
        raise LocalizationError(f"direction has length {len(v)}, expected {fan.n}")
    pairings = _pairings(fan, v)
    for x, row in pairings.items():
        for rho, c in row.items():
            if c == 0:
                raise LocalizationError(
                    f"direction {v} is orthogonal to u_{rho + 1} at max cone {x + 1}")
    return Direction(v, pairings)


def choose_direction(fan: Fan) -> Direction:
    """First ``v = (1, B, ..., B^{n-1})``, B = 2, 3, ..., with every pairing nonzero."""
    for base in count(2):
        v = tuple(base ** i for i in range(fan.n))
        pairings = _pairings(fan, v)
        if all(c for row in pairings.values() for c in row.values()):
            return Direction(v, pairings)
    raise AssertionError("unreachable")


# -- series on a fixed component --------------------------------------------


@dataclass(frozen=True)
class Caps:
    """Truncation data on one fixed component."""

    support: tuple[int, ...]  # surviving rays, in increasing order
    lam_caps: tuple[int, ...]  # N_rho + g - 1 for each surviving ray
    g: int
    r: int

    @classmethod
    def for_cone(cls, fan: Fan, dd: DegreeData, x: int) -> Caps:
        support = fan.complement(x)
        return cls(support, tuple(dd.cap(rho) for rho in support), dd.g, fan.r)


class LocalSeries:
    """Laurent series in t over the ring of surviving Lambdas and thetas, truncated by caps."""

    __slots__ = ("caps", "terms")

    def __init__(self, caps: Caps, terms: Mapping[Key, Fraction] | None = None):
        self.caps = caps
        self.terms: dict[Key, Fraction] = {k: v for k, v in (terms or {}).items() if v}

    @classmethod
    def monomial(cls, caps: Caps, lam: Sequence[int], t: int = 0,
                 theta: Sequence[int] | None = None, coeff=1) -> LocalSeries:
        lam = tuple(lam)
        theta = tuple(theta) if theta is not None else (0,) * caps.r
        if any(k > c for k, c in zip(lam, caps.lam_caps)) or any(e > caps.g for e in theta):
            return cls(caps)
        return cls(caps, {(t, lam, theta): Fraction(coeff)})

    def __mul__(self, other: LocalSeries) -> LocalSeries:
        lam_caps, g = self.caps.lam_caps, self.caps.g
        out: dict[Key, Fraction] = defaultdict(Fraction)
        for (ta, la, tha), va in self.terms.items():
            for (tb, lb, thb), vb in other.terms.items():
                lam = tuple(a + b for a, b in zip(la, lb))
                if any(k > c for k, c in zip(lam, lam_caps)):
                    continue
                th = tuple(a + b for a, b in zip(tha, thb))
                if any(e > g for e in th):
                    continue
                out[(ta + tb, lam, th)] += va * vb
        return LocalSeries(self.caps, out)

    def __add__(self, other: LocalSeries) -> LocalSeries:
        out = defaultdict(Fraction, self.terms)
        for k, v in other.terms.items():
            out[k] += v
        return LocalSeries(self.caps, out)

    def __eq__(self, other) -> bool:
        return isinstance(other, LocalSeries) and self.terms == other.terms

    def __repr__(self) -> str:
        return f"LocalSeries({sorted(self.terms.items())})"


def _linear_powers(L: Mapping[int, int], caps: Caps) -> list[dict[tuple[int, ...], Fraction]]:
    """Truncated powers ``L^0, L^1, ...`` of a linear form in the surviving classes,
    stopping at the first power that vanishes."""
    pos = {rho: i for i, rho in enumerate(caps.support)}
    for rho in L:
        if rho not in pos:
            raise LocalizationError(f"class Lambda_{rho + 1} does not survive on this component")
    unit = (0,) * len(caps.support)
    powers = [{unit: Fraction(1)}]
    while True:
        nxt: dict[tuple[int, ...], Fraction] = defaultdict(Fraction)
        for lam, v in powers[-1].items():
            for rho, c in L.items():
                i = pos[rho]
                if lam[i] + 1 > caps.lam_caps[i]:
                    continue
                key = lam[:i] + (lam[i] + 1,) + lam[i + 1:]
                nxt[key] += v * c
        nxt = {k: v for k, v in nxt.items() if v}
        if not nxt:
            return powers
        powers.append(nxt)


def expand_weighted_factor(p: int, c: int, L: Mapping[int, int], theta_index: int,
                           caps: Caps) -> LocalSeries:
    """Expand ``(c t + L)^p exp(theta / (c t + L))`` as a Laurent series in t.

    Uses the closed expansions: for ``p >= 0`` a polynomial part plus a
    polar tail starting at ``theta^{p+1}``; for ``p < 0`` a purely polar
    series starting at ``t^p``.
    """
    if c == 0:
        raise LocalizationError("direction violation: a weight vanishes on the chosen line")
    g = caps.g
    powers = _linear_powers(L, caps)
    c = Fraction(c)
    out: dict[Key, Fraction] = defaultdict(Fraction)

    def add(j: int, theta_pow: int, coeff: Fraction, u_exp: int) -> None:
        if j >= len(powers) or theta_pow > g:
            return
        th = tuple(theta_pow if i == theta_index else 0 for i in range(caps.r))
        scale = coeff * c ** u_exp
        for lam, v in powers[j].items():
            out[(u_exp, lam, th)] += scale * v

    top = len(powers) + g
    if p >= 0:
        for k in range(p + 1):
            for a in range(min(k, g) + 1):
                add(k - a, a, Fraction(comb(p - a, k - a), factorial(a)), p - k)
        if p + 1 <= g:
            for k in range(top):
                for b in range(min(k, g - p - 1) + 1):
                    coeff = Fraction((-1) ** (k - b) * comb(k, k - b), factorial(p + 1 + b))
                    add(k - b, p + 1 + b, coeff, -(k + 1))
    else:
        q = -p
        for k in range(top):
            for b in range(min(k, g) + 1):
                coeff = Fraction((-1) ** (k - b) * comb(q + k - 1, k - b), factorial(b))
                add(k - b, b, coeff, -(q + k))
    return LocalSeries(caps, out)


# -- Laurent classes with theta coefficients --------------------------------


class TLaurentClass:
    """Finitely supported Laurent series in t with :class:`ThetaPoly` coefficients."""

    __slots__ = ("r", "g", "coeffs")

    def __init__(self, r: int, g: int, coeffs: Mapping[int, ThetaPoly] | None = None):
        self.r, self.g = r, g
        self.coeffs = {t: p for t, p in (coeffs or {}).items() if not p.is_zero()}

    def __add__(self, other: TLaurentClass) -> TLaurentClass:
        out = dict(self.coeffs)
        for t, p in other.coeffs.items():
            out[t] = out[t] + p if t in out else p
        return TLaurentClass(self.r, self.g, out)

    def __getitem__(self, t: int) -> ThetaPoly:
        return self.coeffs.get(t, ThetaPoly.zero(self.r, self.g))

    def __eq__(self, other) -> bool:
        return isinstance(other, TLaurentClass) and self.coeffs == other.coeffs

    def exponents(self) -> list[int]:
        return sorted(self.coeffs)

    def polar_part(self) -> dict[int, ThetaPoly]:
        return {t: p for t, p in sorted(self.coeffs.items()) if t < 0}

    def constant_term(self) -> ThetaPoly:
        return self[0]

    def to_json(self) -> dict[str, list[dict]]:
        return {str(t): p.to_records() for t, p in sorted(self.coeffs.items())}


def _push_series(series: LocalSeries, dd: DegreeData) -> TLaurentClass:
    """Apply the Segre push-forward to every monomial in the surviving classes."""
    caps = series.caps
    acc: dict[int, dict[tuple[int, ...], Fraction]] = defaultdict(lambda: defaultdict(Fraction))
    for (t, lam, th), v in series.terms.items():
        exps = list(th)
        coeff = v
        for rho, k in zip(caps.support, lam):
            res = segre_factor(k, dd.N[rho], dd.g)
            if res is None:
                break
            exps[rho] += res[0]
            coeff *= res[1]
        else:
            acc[t][tuple(exps)] += coeff
    return TLaurentClass(caps.r, caps.g,
                         {t: ThetaPoly(caps.r, caps.g, terms) for t, terms in acc.items()})


def fixed_point_term(fan: Fan, dd: DegreeData, x: int, m: Sequence[int],
                     direction: Direction) -> TLaurentClass:
    """Push-forward to J^r of the localization summand at the max cone ``x``."""
    caps = Caps.for_cone(fan, dd, x)
    _, restr = _cone_data(fan, x)
    series = LocalSeries.monomial(caps, [m[rho] for rho in caps.support])
    for rho in fan.max_cones[x]:
        if not series.terms:
            break
        factor = expand_weighted_factor(m[rho] - dd.N[rho], direction.pairings[x][rho],
                                        restr[rho], rho, caps)
        series = series * factor
    return _push_series(series, dd)


def _check_exponents(fan: Fan, dd: DegreeData, m: Sequence[int]) -> tuple[int, ...]:
    m = tuple(int(v) for v in m)
    if len(m) != fan.r:
        raise LocalizationError(f"expected {fan.r} exponents, got {len(m)}")
    if len(dd.N) != fan.r:
        raise LocalizationError("degree data does not match the fan")
    if any(v < 0 for v in m):
        raise LocalizationError(f"exponents must be nonnegative, got {list(m)}")
    return m


def localization_terms(fan: Fan, dd: DegreeData, m: Sequence[int],
                       direction: Direction | None = None) -> list[TLaurentClass]:
    """The pushed-forward summand of every max cone, in max-cone order."""
    m = _check_exponents(fan, dd, m)
    direction = direction or choose_direction(fan)
    return [fixed_point_term(fan, dd, x, m, direction) for x in range(len(fan.max_cones))]


def localization_sum(fan: Fan, dd: DegreeData, m: Sequence[int],
                     direction: Direction | None = None) -> TLaurentClass:
    total = TLaurentClass(fan.r, dd.g)
    for term in localization_terms(fan, dd, m, direction):
        total = total + term
    return total


def certify(total: TLaurentClass, fan: Fan, dd: DegreeData, m: Sequence[int]) -> ThetaPoly:
    """Check cancellation and homogeneity of a summed series; return its constant term."""
    polar = total.polar_part()
    if polar:
        listing = "; ".join(f"t^{t}: {p.to_records()}" for t, p in polar.items())
        raise NonCancellationError(f"noncancellation for m={list(m)}: {listing}")
    expected = sum(m) - dd.dim_Y
    for t, p in total.coeffs.items():
        if p.degrees() != {expected - t}:
            raise LocalizationError(
                f"inhomogeneous coefficient at t^{t}: degrees {sorted(p.degrees())}, "
                f"expected {expected - t}")
    return total.constant_term()


def pushforward_class(fan: Fan, dd: DegreeData, m: Sequence[int],
                      direction: Direction | None = None) -> ThetaPoly:
    """``q_*(prod Lambda_rho^{m_rho})`` in the theta ring of J^r."""
    total = localization_sum(fan, dd, m, direction)
    return certify(total, fan, dd, m)


# -- closed form for the special exponents ----------------------------------


def explicit_exponents(fan: Fan, dd: DegreeData, a: Sequence[int]) -> tuple[int, ...]:
    """Exponents built from positive ``a`` with ``a_1 + ... + a_{r-1} = a_r``."""
    r, n, l, g = fan.r, fan.n, fan.l, dd.g
    a = [int(v) for v in a]
    if len(a) != r:
        raise LocalizationError(f"expected {r} integers a_rho, got {len(a)}")
    if any(v <= 0 for v in a):
        raise LocalizationError(f"a_rho must be positive, got {a}")
    if sum(a[:-1]) != a[-1]:
        raise LocalizationError(f"a_1 + ... + a_(r-1) = {sum(a[:-1])} differs from a_r = {a[-1]}")
    m = [dd.N[rho] + g + a[rho] for rho in range(r - 1)]
    m_last = dd.N[r - 1] - (n - 1) * g - l - a[-1]
    if m_last <= 0:
        raise LocalizationError(f"m_r not positive (m_r = {m_last})")
    return tuple(m + [m_last])


def explicit_pushforward(fan: Fan, dd: DegreeData, a: Sequence[int]) -> ThetaPoly:
    """Closed-form push-forward: only cones avoiding the last ray contribute, at u = 0."""
    m = explicit_exponents(fan, dd, a)
    last = fan.r - 1
    total = ThetaPoly.zero(fan.r, dd.g)
    for x, cone in enumerate(fan.max_cones):
        if last in cone:
            continue
        caps = Caps.for_cone(fan, dd, x)
        _, restr = _cone_data(fan, x)
        series = LocalSeries.monomial(caps, [m[rho] for rho in caps.support])
        for rho in cone:
            e = m[rho] - dd.N[rho]
            powers = _linear_powers(restr[rho], caps)
            factor: dict[Key, Fraction] = defaultdict(Fraction)
            for b in range(min(e, dd.g) + 1):
                if e - b >= len(powers):
                    continue
                th = tuple(b if i == rho else 0 for i in range(fan.r))
                for lam, v in powers[e - b].items():
                    factor[(0, lam, th)] += v / factorial(b)
            series = series * LocalSeries(caps, factor)
        total = total + _push_series(series, dd)[0]
    return total


# -- relations and vanishing -------------------------------------------------


class WClass:
    """A polynomial in the classes Lambda_rho with theta-class coefficients on W.

    Keys are ``(m, b)``: the monomial ``prod Lambda^m * prod theta^b``.
    """

    __slots__ = ("r", "g", "terms")

    def __init__(self, r: int, g: int, terms: Mapping[tuple, Fraction] | None = None):
        self.r, self.g = r, g
        self.terms = {}
        for (m, b), v in (terms or {}).items():
            if v and all(e <= g for e in b):
                self.terms[(tuple(m), tuple(b))] = Fraction(v)

    @classmethod
    def monomial(cls, r: int, g: int, m: Sequence[int], coeff=1) -> WClass:
        return cls(r, g, {(tuple(m), (0,) * r): Fraction(coeff)})

    @classmethod
    def linear(cls, r: int, g: int, coeffs: Mapping[int, int]) -> WClass:
        out = {}
        for rho, c in coeffs.items():
            m = [0] * r
            m[rho] = 1
            out[(tuple(m), (0,) * r)] = Fraction(c)
        return cls(r, g, out)

    def __add__(self, other: WClass) -> WClass:
        out = defaultdict(Fraction, self.terms)
        for k, v in other.terms.items():
            out[k] += v
        return WClass(self.r, self.g, out)

    def __sub__(self, other: WClass) -> WClass:
        return self + WClass(self.r, self.g, {k: -v for k, v in other.terms.items()})

    def __mul__(self, other: WClass) -> WClass:
        out = defaultdict(Fraction)
        for (ma, ba), va in self.terms.items():
            for (mb, bb), vb in other.terms.items():
                key = (tuple(x + y for x, y in zip(ma, mb)), tuple(x + y for x, y in zip(ba, bb)))
                out[key] += va * vb
        return WClass(self.r, self.g, out)

    def degrees(self) -> set[int]:
        return {sum(m) + sum(b) for m, b in self.terms}


def pushforward_combination(fan: Fan, dd: DegreeData, cls: WClass,
                            direction: Direction | None = None) -> ThetaPoly:
    """Linear extension of :func:`pushforward_class`; thetas factor out by the projection formula."""
    direction = direction or choose_direction(fan)
    total = ThetaPoly.zero(fan.r, dd.g)
    cache: dict[tuple[int, ...], ThetaPoly] = {}
    for (m, b), v in sorted(cls.terms.items()):
        if m not in cache:
            cache[m] = pushforward_class(fan, dd, m, direction)
        theta = ThetaPoly(fan.r, dd.g, {b: v})
        total = total + theta * cache[m]
    return total


def relation_class(fan: Fan, dd: DegreeData, pi: Iterable[int]) -> WClass:
    """Euler class of ``sum_{rho in pi} q^*W_rho (x) Lambda_rho``, using c(W_rho) = exp(-theta_rho)."""
    r, g = fan.r, dd.g
    out = WClass.monomial(r, g, (0,) * r)
    for rho in pi:
        factor = {}
        for a in range(min(g, dd.N[rho]) + 1):
            m = [0] * r
            m[rho] = dd.N[rho] - a
            b = [0] * r
            b[rho] = a
            factor[(tuple(m), tuple(b))] = Fraction((-1) ** a, factorial(a))
        out = out * WClass(r, g, factor)
    return out


@dataclass(frozen=True)
class VanishingCertificate:
    subset: tuple[int, ...]
    spans_cone: bool
    short_rays: tuple[int, ...]  # rays of the subset with m_rho < N_rho + g

    @property
    def holds(self) -> bool:
        return not self.spans_cone and not self.short_rays


def vanishing_predicate(fan: Fan, dd: DegreeData, J: Iterable[int],
                        m: Sequence[int]) -> VanishingCertificate:
    """True when J spans no cone and every m_rho, rho in J, is at least N_rho + g."""
    J = tuple(sorted(set(J)))
    for rho in J:
        if not 0 <= rho < fan.r:
            raise LocalizationError(f"ray {rho + 1} out of range")
    short = tuple(rho for rho in J if m[rho] < dd.N[rho] + dd.g)
    return VanishingCertificate(J, fan.spans_cone(J), short)
