"""Smooth projective toric fans: parsing, validation and derived combinatorics.

Ray and cone indices are 0-based inside the package. Documents and reports
use 1-based indices; the conversion happens in :func:`parse_fan` and in the
CLI only.

After parsing, rays are reindexed so that the distinguished maximal cone is
made of the last ``n`` rays. All coordinates of ``M`` (characters) are taken
in the basis dual to that cone.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from math import gcd
from typing import Any, Mapping, Sequence

import sympy

from .errors import FanError

Vector = tuple[int, ...]


def _int_matrix(rows: Sequence[Sequence[int]]) -> sympy.Matrix:
    return sympy.Matrix([list(row) for row in rows])


def _as_int_tuple(mat: sympy.Matrix, i: int) -> Vector:
    out = []
    for v in mat.row(i):
        if not v.is_integer:
            raise FanError(f"non-integral entry {v} in a unimodular inverse")
        out.append(int(v))
    return tuple(out)


@dataclass(frozen=True)
class Fan:
    """A validated, reindexed smooth complete fan.

    ``rays[l:]`` span the distinguished cone. ``permutation[i]`` is the
    0-based index in the input document of reindexed ray ``i``.
    """

    rays: tuple[Vector, ...]
    max_cones: tuple[tuple[int, ...], ...]
    distinguished: int
    permutation: tuple[int, ...] = field(default=())

    @property
    def n(self) -> int:
        return len(self.rays[0])

    @property
    def r(self) -> int:
        return len(self.rays)

    @property
    def l(self) -> int:  # noqa: E743
        return self.r - self.n

    @cached_property
    def coords(self) -> tuple[Vector, ...]:
        """Each ray written in the basis ``e^{l+1}, ..., e^r``."""
        basis = _int_matrix(self.rays[self.l:]).T
        inv = basis.inv()
        out = []
        for ray in self.rays:
            col = inv * sympy.Matrix(ray)
            out.append(tuple(int(v) for v in col))
        return tuple(out)

    @cached_property
    def faces(self) -> frozenset[frozenset[int]]:
        """All cones of the fan (faces of maximal cones), as ray sets."""
        out = set()
        for cone in self.max_cones:
            for k in range(len(cone) + 1):
                out.update(frozenset(s) for s in combinations(cone, k))
        return frozenset(out)

    def spans_cone(self, rays: Sequence[int]) -> bool:
        return frozenset(rays) in self.faces

    def pairing(self, m: Sequence[int], rho: int) -> int:
        """<m, e^rho> for ``m`` in distinguished-dual coordinates."""
        return sum(a * b for a, b in zip(m, self.coords[rho]))

    def complement(self, x: int) -> tuple[int, ...]:
        cone = set(self.max_cones[x])
        return tuple(rho for rho in range(self.r) if rho not in cone)


# -- parsing and validation -------------------------------------------------


def _require_int_list(value: Any, what: str) -> list[int]:
    if not isinstance(value, list) or not value:
        raise FanError(f"{what} must be a non-empty array of integers")
    for v in value:
        if isinstance(v, bool) or not isinstance(v, int):
            raise FanError(f"{what} contains non-integer entry {v!r}")
    return list(value)


def parse_fan(document: str | bytes | Mapping[str, Any]) -> Fan:
    """Parse a fan document (JSON text or an already decoded mapping).

    Keys: ``rays``, ``max_cones`` (1-based ray indices) and ``distinguished``
    (1-based index into ``max_cones``).
    """
    if isinstance(document, (str, bytes)):
        try:
            document = json.loads(document)
        except json.JSONDecodeError as exc:
            raise FanError(f"malformed document: {exc}") from None
    if not isinstance(document, Mapping):
        raise FanError("malformed document: expected an object")
    for key in ("rays", "max_cones", "distinguished"):
        if key not in document:
            raise FanError(f"malformed document: missing key {key!r}")

    raw_rays = document["rays"]
    if not isinstance(raw_rays, list) or not raw_rays:
        raise FanError("malformed document: 'rays' must be a non-empty array")
    rays = [tuple(_require_int_list(ray, f"ray {i + 1}")) for i, ray in enumerate(raw_rays)]
    raw_cones = document["max_cones"]
    if not isinstance(raw_cones, list) or not raw_cones:
        raise FanError("malformed document: 'max_cones' must be a non-empty array")
    cones = []
    for i, cone in enumerate(raw_cones):
        idx = _require_int_list(cone, f"max cone {i + 1}")
        for j in idx:
            if not 1 <= j <= len(rays):
                raise FanError(f"max cone {i + 1} refers to unknown ray {j}")
        cones.append(tuple(j - 1 for j in idx))
    dist = document["distinguished"]
    if isinstance(dist, bool) or not isinstance(dist, int):
        raise FanError("malformed document: 'distinguished' must be an integer")
    if not 1 <= dist <= len(cones):
        raise FanError(f"distinguished index {dist} out of range 1..{len(cones)}")
    return build_fan(rays, cones, dist - 1)


def build_fan(rays: Sequence[Sequence[int]], max_cones: Sequence[Sequence[int]],
              distinguished: int) -> Fan:
    """Validate 0-based data and return the canonically reindexed fan."""
    rays = [tuple(int(v) for v in ray) for ray in rays]
    max_cones = [tuple(cone) for cone in max_cones]
    _validate(rays, max_cones, distinguished)

    dist_cone = sorted(max_cones[distinguished])
    rest = [i for i in range(len(rays)) if i not in set(dist_cone)]
    perm = tuple(rest + dist_cone)
    new_of_old = {old: new for new, old in enumerate(perm)}
    new_rays = tuple(rays[old] for old in perm)
    new_cones = tuple(tuple(sorted(new_of_old[i] for i in cone)) for cone in max_cones)
    return Fan(new_rays, new_cones, distinguished, perm)


def _validate(rays: list[Vector], cones: list[tuple[int, ...]], distinguished: int) -> None:
    n = len(rays[0])
    if n == 0:
        raise FanError("rays must have positive length")
    for i, ray in enumerate(rays):
        if len(ray) != n:
            raise FanError(f"ray {i + 1} has length {len(ray)}, expected {n}")
        if all(v == 0 for v in ray):
            raise FanError(f"ray {i + 1} is zero")
        if gcd(*ray) != 1:
            raise FanError(f"ray {i + 1} not primitive")
    seen: dict[Vector, int] = {}
    for i, ray in enumerate(rays):
        if ray in seen:
            raise FanError(f"ray {i + 1} duplicates ray {seen[ray] + 1}")
        seen[ray] = i
    if len(rays) <= n:
        raise FanError(f"a complete fan in dimension {n} needs more than {n} rays")

    cone_sets: dict[frozenset[int], int] = {}
    for i, cone in enumerate(cones):
        if len(cone) != n or len(set(cone)) != n:
            raise FanError(f"max cone {i + 1} must list {n} distinct rays")
        key = frozenset(cone)
        if key in cone_sets:
            raise FanError(f"max cone {i + 1} duplicates max cone {cone_sets[key] + 1}")
        cone_sets[key] = i
        det = _int_matrix([rays[j] for j in cone]).det()
        if abs(det) != 1:
            raise FanError(f"max cone {i + 1} is not unimodular (determinant {det})")
    used = set().union(*cone_sets)
    for i in range(len(rays)):
        if i not in used:
            raise FanError(f"ray {i + 1} lies in no max cone")
    if not 0 <= distinguished < len(cones):
        raise FanError(f"distinguished index {distinguished + 1} out of range")

    # Facet pairing: each facet is shared by exactly two max cones, which lie
    # on opposite sides of it. Also collects the adjacency graph.
    facets: dict[frozenset[int], list[int]] = {}
    for i, cone in enumerate(cones):
        for facet in combinations(sorted(cone), n - 1):
            facets.setdefault(frozenset(facet), []).append(i)
    adjacency: dict[int, set[int]] = {i: set() for i in range(len(cones))}
    for facet, owners in facets.items():
        if len(owners) != 2:
            names = ",".join(str(j + 1) for j in sorted(facet)) or "(empty)"
            owner_names = ", ".join(str(o + 1) for o in owners)
            raise FanError(
                f"facet {{{names}}} lies in {len(owners)} max cones ({owner_names}), expected 2"
            )
        a, b = owners
        base = [rays[j] for j in sorted(facet)]
        (pa,) = set(cones[a]) - facet
        (pb,) = set(cones[b]) - facet
        sa = _int_matrix(base + [rays[pa]]).det()
        sb = _int_matrix(base + [rays[pb]]).det()
        if sa * sb >= 0:
            raise FanError(f"max cones {a + 1} and {b + 1} overlap across a common facet")
        adjacency[a].add(b)
        adjacency[b].add(a)
    reached = {0}
    stack = [0]
    while stack:
        for j in adjacency[stack.pop()]:
            if j not in reached:
                reached.add(j)
                stack.append(j)
    if len(reached) != len(cones):
        missing = min(set(range(len(cones))) - reached)
        raise FanError(f"max cone {missing + 1} is not connected to max cone 1 through facets")


# -- derived data ------------------------------------------------------------


def relation_matrix(fan: Fan) -> tuple[Vector, ...]:
    """Rows ``a^lambda`` with ``e^lambda + sum_nu a_nu^lambda e^{l+nu} = 0``."""
    rows = tuple(tuple(-c for c in fan.coords[lam]) for lam in range(fan.l))
    for lam, row in enumerate(rows):
        total = [fan.rays[lam][k] + sum(a * fan.rays[fan.l + nu][k] for nu, a in enumerate(row))
                 for k in range(fan.n)]
        if any(total):
            raise FanError(f"relation for ray {lam + 1} does not hold")
    return rows


def primitive_collections(fan: Fan) -> list[tuple[int, ...]]:
    """Minimal ray subsets spanning no cone, sorted by size then lexicographically."""
    found: list[tuple[int, ...]] = []
    for size in range(2, fan.r + 1):
        for subset in combinations(range(fan.r), size):
            s = frozenset(subset)
            if fan.spans_cone(s):
                continue
            if any(set(p) <= s for p in found):
                continue
            # subsets of size `size - 1` all span cones when no smaller
            # primitive collection is contained in s
            found.append(subset)
    return found


def dual_basis(fan: Fan, x: int) -> dict[int, Vector]:
    """``rho -> u_rho(x)`` with ``<u_rho(x), e^rho'> = delta`` on the cone ``x``."""
    cone = fan.max_cones[x]
    mat = _int_matrix([fan.coords[rho] for rho in cone])
    inv_t = mat.inv().T
    return {rho: _as_int_tuple(inv_t, i) for i, rho in enumerate(cone)}


def restriction_coeffs(fan: Fan, x: int) -> dict[int, dict[int, int]]:
    """Express ``Lambda_rho``, rho in cone ``x``, through the complementary classes.

    ``Lambda_rho = - sum_{rho' not in x} <u_rho(x), e^rho'> Lambda_rho'``.
    """
    duals = dual_basis(fan, x)
    outside = fan.complement(x)
    out = {}
    for rho, u in duals.items():
        combo = {}
        for rp in outside:
            c = -fan.pairing(u, rp)
            if c:
                combo[rp] = c
        out[rho] = combo
    return out


# -- built-in fans -----------------------------------------------------------


def fan_p1() -> Fan:
    return build_fan([(-1,), (1,)], [(0,), (1,)], 1)


def fan_p1xp1() -> Fan:
    rays = [(-1, 0), (0, -1), (1, 0), (0, 1)]
    cones = [(2, 3), (3, 0), (0, 1), (1, 2)]
    return build_fan(rays, cones, 0)


def fan_f1() -> Fan:
    """The first Hirzebruch surface."""
    rays = [(-1, 1), (0, -1), (1, 0), (0, 1)]
    cones = [(2, 3), (3, 0), (0, 1), (1, 2)]
    return build_fan(rays, cones, 0)


def projective_space(n: int) -> Fan:
    """P^n with rays ``-sum e_i, e_1, ..., e_n``; every relation coefficient is 1."""
    rays = [tuple(-1 for _ in range(n))]
    rays += [tuple(int(i == j) for j in range(n)) for i in range(n)]
    cones = list(combinations(range(n + 1), n))
    return build_fan(rays, cones, cones.index(tuple(range(1, n + 1))))


BUILTIN_FANS = {"P1": fan_p1, "P1xP1": fan_p1xp1, "F1": fan_f1}
