"""Hypercubes of smoothing states and circle correspondences.

Two hypercubes are used: the *vertex hypercube* over {0,1}^|V| (a vertex
1-smoothing half-twists all three bands at that vertex) and the *matching
hypercube* over {0,1}^|M| of a perfect matching diagram (a 1-smoothing
half-twists one matching band).

Vertex states are refined by *sites*: site ``3v + i`` is vertex ``v``'s
``i``-th band end.  Flipping a site toggles the side-swap of the underlying
edge, so a full vertex flip is three site flips — the three matching
half-edges at that vertex's blowup cycle in the bubbled blowup.  Intermediate
site states realize the 3-edge paths along which vertex differentials are
composed.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .vpd import (
    CircleDecomposition,
    PerfectMatchingDiagram,
    RotationSystem,
    edge_tokens,
    trace_boundary,
)

DEFAULT_STATE_CAP = 24


class StateSpaceError(ValueError):
    pass


@dataclass(frozen=True)
class StateIndex:
    bits: tuple[int, ...]

    @property
    def weight(self) -> int:
        return sum(self.bits)

    def flip(self, site: int) -> "StateIndex":
        b = list(self.bits)
        b[site] ^= 1
        return StateIndex(tuple(b))

    def sign_at(self, site: int) -> int:
        """(-1)^(number of 1s strictly left of the site)."""
        return -1 if sum(self.bits[:site]) % 2 else 1


@dataclass(frozen=True)
class HypercubeEdge:
    tail: StateIndex
    head: StateIndex
    site: int
    sign: int


@dataclass(frozen=True)
class CircleCorrespondence:
    kind: str  # merge | split | same-circle
    stable_pairs: tuple[tuple[int, int], ...]  # (before idx, after idx)
    active_before: tuple[int, ...]
    active_after: tuple[int, ...]


def all_states(sites: int):
    for mask in range(1 << sites):
        yield StateIndex(tuple((mask >> (sites - 1 - i)) & 1 for i in range(sites)))


def hypercube_edges(state: StateIndex):
    for site, b in enumerate(state.bits):
        if b == 0:
            yield HypercubeEdge(state, state.flip(site), site, state.sign_at(site))


def vertex_state(rs: RotationSystem, nu: StateIndex) -> RotationSystem:
    """Realize a vertex state: multiply each edge sign by (-1)^(1-smoothed ends)."""
    if len(nu.bits) != rs.vertex_count:
        raise StateSpaceError("state length != vertex count")
    flips = _vertex_swaps(rs, nu.bits)
    verts = []
    for v in rs.vertices:
        tup = []
        for h in v:
            e = (abs(h) + 1) // 2
            if e in flips and abs(h) % 2 == 1:
                tup.append(-h)
            else:
                tup.append(h)
        verts.append(tuple(tup))
    return RotationSystem(tuple(verts))


def _vertex_swaps(rs: RotationSystem, bits: tuple[int, ...]) -> frozenset[int]:
    ends = rs.edge_endpoints()
    return frozenset(
        e for e, (u, w) in ends.items() if (bits[u] + bits[w]) % 2 == 1
    )


def pm_state(pmd: PerfectMatchingDiagram, alpha: StateIndex) -> RotationSystem:
    """Realize a matching state: flip the sign of each 1-smoothed matching edge."""
    if len(alpha.bits) != len(pmd.matching):
        raise StateSpaceError("state length != matching size")
    flips = frozenset(e for e, b in zip(pmd.matching, alpha.bits) if b)
    verts = []
    for v in pmd.rs.vertices:
        tup = []
        for h in v:
            e = (abs(h) + 1) // 2
            if e in flips and abs(h) % 2 == 1:
                tup.append(-h)
            else:
                tup.append(h)
        verts.append(tuple(tup))
    return RotationSystem(tuple(verts))


def circle_correspondence(
    before: CircleDecomposition, after: CircleDecomposition, edge: int
) -> CircleCorrespondence:
    """Match circles across a single band flip on ``edge``.

    Stable circles avoid the flipped band's four tokens and are paired by
    token-set equality; active circles meet the band.  The kind follows the
    circle-count delta.
    """
    pts = edge_tokens(edge)
    act_b = tuple(i for i, c in enumerate(before.circles) if set(c) & pts)
    act_a = tuple(i for i, c in enumerate(after.circles) if set(c) & pts)
    stable_b = [i for i in range(before.circle_count) if i not in act_b]
    by_tokens = {
        after.circle_tokens(i): i
        for i in range(after.circle_count)
        if i not in act_a
    }
    pairs = []
    for i in stable_b:
        j = by_tokens.get(before.circle_tokens(i))
        if j is None:
            raise StateSpaceError("stable circle has no token-set partner")
        pairs.append((i, j))
    if len(pairs) != after.circle_count - len(act_a):
        raise StateSpaceError("stable circle matching is not a bijection")
    delta = after.circle_count - before.circle_count
    if (len(act_b), len(act_a)) == (2, 1) and delta == -1:
        kind = "merge"
    elif (len(act_b), len(act_a)) == (1, 2) and delta == 1:
        kind = "split"
    elif (len(act_b), len(act_a)) == (1, 1) and delta == 0:
        kind = "same-circle"
    elif not act_b and not act_a and delta == 0:
        kind = "same-circle"
    else:
        raise StateSpaceError(
            f"impossible correspondence: {len(act_b)} -> {len(act_a)} circles"
        )
    return CircleCorrespondence(kind, tuple(pairs), act_b, act_a)


def vertex_to_bubbled_path(
    nu_tail: StateIndex, nu_head: StateIndex, bubbled: PerfectMatchingDiagram
) -> tuple[int, ...]:
    """Canonical 3-edge path in the bubbled blowup for a vertex flip.

    Returns the three matching-site indices incident to the flipped vertex's
    blowup cycle, in ascending site order.
    """
    diff = [i for i, (a, b) in enumerate(zip(nu_tail.bits, nu_head.bits)) if a != b]
    if len(diff) != 1 or nu_tail.bits[diff[0]] != 0:
        raise StateSpaceError("states do not differ by a single raised bit")
    v = diff[0]
    sites = tuple(
        s for s, (ov, _pos) in enumerate(bubbled.site_origin) if ov == v
    )
    if len(sites) != 3:
        raise StateSpaceError("flipped vertex does not own exactly 3 matching sites")
    return sites


class VertexHypercube:
    """Lazy, memoized realization of vertex/site smoothing states.

    A *site state* is a tuple over the ``3|V|`` band ends; a vertex state
    ``nu`` embeds as the site state raising all three sites of each
    1-smoothed vertex (the ``|alpha| = 3|nu|`` embedding).
    """

    def __init__(self, rs: RotationSystem, cap: int = DEFAULT_STATE_CAP):
        if not rs.is_trivalent():
            raise StateSpaceError("vertex hypercube requires a trivalent diagram")
        self.rs = rs
        self.cap = cap
        self.n_vertices = rs.vertex_count
        self.site_edge = [
            (abs(h) + 1) // 2 for v in rs.vertices for h in v
        ]
        self._dec_cache: dict[tuple[int, ...], CircleDecomposition] = {}

    def check_cap(self) -> None:
        if self.n_vertices > self.cap:
            raise StateSpaceError(
                f"|V| = {self.n_vertices} exceeds the state cap {self.cap}"
            )

    def site_state_of(self, nu: StateIndex) -> tuple[int, ...]:
        return tuple(b for b in nu.bits for _ in range(3))

    def swaps_of(self, sigma: tuple[int, ...]) -> frozenset[int]:
        flips = [0] * (self.rs.edge_count + 1)
        for bit, e in zip(sigma, self.site_edge):
            if bit:
                flips[e] ^= 1
        return frozenset(e for e, f in enumerate(flips) if f)

    def decomposition(self, sigma: tuple[int, ...]) -> CircleDecomposition:
        dec = self._dec_cache.get(sigma)
        if dec is None:
            dec = trace_boundary(self.rs, self.swaps_of(sigma))
            self._dec_cache[sigma] = dec
        return dec

    def vertex_decomposition(self, nu: StateIndex) -> CircleDecomposition:
        return self.decomposition(self.site_state_of(nu))

    def circle_count(self, nu: StateIndex) -> int:
        return self.vertex_decomposition(nu).circle_count

    def site_path(self, nu: StateIndex, vertex: int, order=(0, 1, 2)):
        """Site states and flipped edges along a 3-edge path flipping ``vertex``."""
        sigma = list(self.site_state_of(nu))
        sigmas = [tuple(sigma)]
        edges = []
        for i in order:
            site = 3 * vertex + i
            sigma[site] ^= 1
            sigmas.append(tuple(sigma))
            edges.append(self.site_edge[site])
        return sigmas, edges
