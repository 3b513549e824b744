"""VPD notation, signed rotation systems, and boundary-circle tracing.

A trivalent ribbon graph is given as a *vertex planar diagram* (VPD): a list
of triples of half-edge labels, one triple per vertex, read counterclockwise.
Half-edges ``2i-1`` and ``2i`` form edge ``e_i``; a minus sign on the
odd-magnitude label marks a negative (half-twisted) edge.

Boundary circles are traced with a fixed convention: every half-edge ``h``
carries two side tokens ``(|h|, 1)`` and ``(|h|, 2)``.  Inside a vertex disk
with counterclockwise order ``(a, b, c)`` the corner arcs join the *outgoing*
side of each half-edge to the *incoming* side of the next one; across an edge
the tokens of the two half-edges are glued side-to-side, with the sides
swapped when the edge is negative.  Circles are the closed curves formed by
the corner arcs and the gluings.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field


class VPDError(ValueError):
    """Malformed or invalid VPD input."""


# ---------------------------------------------------------------------------
# rotation systems


@dataclass(frozen=True)
class RotationSystem:
    """Signed rotation system: cyclic half-edge orders plus edge signs.

    ``vertices[v]`` is the tuple of (possibly negative) half-edge labels at
    vertex ``v`` in counterclockwise order, exactly as written in the VPD.
    """

    vertices: tuple[tuple[int, ...], ...]

    @property
    def vertex_count(self) -> int:
        return len(self.vertices)

    @property
    def edge_count(self) -> int:
        return sum(len(v) for v in self.vertices) // 2

    def edge_sign(self, e: int) -> int:
        """Sign of edge ``e`` (1-based): -1 iff its odd label is negated."""
        return -1 if self._negative()[e] else 1

    def _negative(self) -> list[bool]:
        neg = [False] * (self.edge_count + 1)
        for v in self.vertices:
            for h in v:
                if h < 0:
                    neg[(abs(h) + 1) // 2] = True
        return neg

    def edge_endpoints(self) -> dict[int, list[int]]:
        """Edge index -> list of incident vertex indices (twice for loops)."""
        ends: dict[int, list[int]] = {e: [] for e in range(1, self.edge_count + 1)}
        for vi, v in enumerate(self.vertices):
            for h in v:
                ends[(abs(h) + 1) // 2].append(vi)
        return ends

    def is_trivalent(self) -> bool:
        return all(len(v) == 3 for v in self.vertices)

    def is_connected(self) -> bool:
        if not self.vertices:
            return False
        adj = {v: set() for v in range(self.vertex_count)}
        for ends in self.edge_endpoints().values():
            u, w = ends
            adj[u].add(w)
            adj[w].add(u)
        seen = {0}
        stack = [0]
        while stack:
            for w in adj[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == self.vertex_count


@dataclass(frozen=True)
class PerfectMatchingDiagram:
    """A rotation system together with a perfect matching of non-loop edges."""

    rs: RotationSystem
    matching: tuple[int, ...]
    # for bubbled blowups: matching site -> (original vertex, position 0..2)
    site_origin: tuple[tuple[int, int], ...] = field(default=())

    def __post_init__(self):
        ends = self.rs.edge_endpoints()
        covered: list[int] = []
        for e in self.matching:
            u, w = ends[e]
            if u == w:
                raise VPDError(f"matching edge e{e} is a loop")
            covered += [u, w]
        if sorted(covered) != list(range(self.rs.vertex_count)):
            raise VPDError("matching does not cover every vertex exactly once")


# ---------------------------------------------------------------------------
# parsing and serialization

_TOKEN = re.compile(r"\s*(G\s*\[|V\s*\[|\]|,|-?\s*\d+)")


def parse_vpd(text: str, any_valence: bool = False) -> RotationSystem:
    """Parse VPD text ``G[V[...],...]`` into a validated RotationSystem."""
    pos = 0
    tokens: list[tuple[str, int]] = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            if text[pos:].strip() == "":
                break
            line = text.count("\n", 0, pos) + 1
            col = pos - (text.rfind("\n", 0, pos) + 1) + 1
            raise VPDError(f"unexpected character {text[pos]!r} at line {line}, column {col}")
        tokens.append((re.sub(r"\s+", "", m.group(1)), m.start(1)))
        pos = m.end()

    def fail(msg: str, at: int) -> None:
        line = text.count("\n", 0, at) + 1
        col = at - (text.rfind("\n", 0, at) + 1) + 1
        raise VPDError(f"{msg} at line {line}, column {col}")

    i = 0

    def expect(tok: str) -> None:
        nonlocal i
        if i >= len(tokens) or tokens[i][0] != tok:
            fail(f"expected {tok!r}", tokens[i][1] if i < len(tokens) else len(text))
        i += 1

    expect("G[")
    verts: list[tuple[int, ...]] = []
    while True:
        expect("V[")
        tup: list[int] = []
        while True:
            if i >= len(tokens):
                fail("unterminated V-tuple", len(text))
            tok, at = tokens[i]
            if not re.fullmatch(r"-?\d+", tok):
                fail("expected integer", at)
            val = int(tok)
            if val == 0:
                fail("half-edge labels must be nonzero", at)
            tup.append(val)
            i += 1
            if i < len(tokens) and tokens[i][0] == ",":
                i += 1
                continue
            expect("]")
            break
        verts.append(tuple(tup))
        if i < len(tokens) and tokens[i][0] == ",":
            i += 1
            continue
        expect("]")
        break
    if i != len(tokens):
        fail("trailing input after closing bracket", tokens[i][1])

    rs = RotationSystem(tuple(verts))
    validate(rs, any_valence=any_valence)
    return rs


def validate(rs: RotationSystem, any_valence: bool = False) -> None:
    labels = [h for v in rs.vertices for h in v]
    mags = sorted(abs(h) for h in labels)
    if len(mags) % 2:
        raise VPDError("odd number of half-edge labels")
    if mags != list(range(1, len(mags) + 1)):
        missing = sorted(set(range(1, len(mags) + 1)) - set(mags))
        dupes = sorted({m for m in mags if mags.count(m) > 1})
        if dupes:
            raise VPDError(f"duplicate half-edge label(s): {dupes}")
        raise VPDError(f"missing half-edge label(s): {missing}")
    for h in labels:
        if h < 0 and abs(h) % 2 == 0:
            raise VPDError(f"negative sign on even-magnitude label {h}")
    if not any_valence and not rs.is_trivalent():
        raise VPDError("non-trivalent vertex tuple (pass any_valence=True to allow)")
    if not rs.is_connected():
        raise VPDError("underlying graph is disconnected")


def serialize_vpd(rs: RotationSystem) -> str:
    body = ",".join("V[" + ",".join(str(h) for h in v) + "]" for v in rs.vertices)
    return f"G[{body}]"


# ---------------------------------------------------------------------------
# boundary tracing

Token = tuple[int, int]  # (half-edge magnitude, side 1|2)


def _out_token(h: int) -> Token:
    H = abs(h)
    return (H, 2) if H % 2 == 1 else (H, 1)


def _in_token(h: int) -> Token:
    H = abs(h)
    return (H, 1) if H % 2 == 1 else (H, 2)


def edge_tokens(e: int) -> frozenset[Token]:
    """The four side tokens living on edge ``e``'s band."""
    return frozenset({(2 * e - 1, 1), (2 * e - 1, 2), (2 * e, 1), (2 * e, 2)})


@dataclass(frozen=True)
class CircleDecomposition:
    """Boundary circles of a ribbon state plus per-vertex corner incidences.

    ``circles[c]`` lists the tokens of circle ``c`` in traversal order;
    circles are sorted by minimal token.  ``corner_map[v]`` gives, for each
    vertex, the circle index of each of its three (or r) corner arcs, aligned
    with the vertex's half-edge tuple: corner ``i`` is the arc leaving
    half-edge ``i`` toward half-edge ``i+1``.
    """

    circles: tuple[tuple[Token, ...], ...]
    corner_map: tuple[tuple[int, ...], ...]

    @property
    def circle_count(self) -> int:
        return len(self.circles)

    def token_owner(self) -> dict[Token, int]:
        return {t: c for c, circ in enumerate(self.circles) for t in circ}

    def circle_tokens(self, c: int) -> frozenset[Token]:
        return frozenset(self.circles[c])


def trace_boundary(rs: RotationSystem, extra_swaps: frozenset[int] = frozenset()) -> CircleDecomposition:
    """Trace the boundary circles of the ribbon surface of ``rs``.

    ``extra_swaps`` lists edges whose side gluing is flipped on top of the
    edge sign; internal callers use it to realize smoothing states without
    rebuilding rotation systems.
    """
    neg = rs._negative()
    # corner arcs: token pairs inside each vertex disk
    arc: dict[Token, Token] = {}
    arc_owner: dict[Token, tuple[int, int]] = {}  # out-token -> (vertex, corner)
    for vi, v in enumerate(rs.vertices):
        r = len(v)
        for i in range(r):
            a, b = _out_token(v[i]), _in_token(v[(i + 1) % r])
            arc[a] = b
            arc[b] = a
            arc_owner[a] = (vi, i)
    glue: dict[Token, Token] = {}
    for e in range(1, rs.edge_count + 1):
        swap = neg[e] ^ (e in extra_swaps)
        if not swap:
            pairs = (((2 * e - 1, 1), (2 * e, 1)), ((2 * e - 1, 2), (2 * e, 2)))
        else:
            pairs = (((2 * e - 1, 1), (2 * e, 2)), ((2 * e - 1, 2), (2 * e, 1)))
        for a, b in pairs:
            glue[a] = b
            glue[b] = a

    seen: set[Token] = set()
    circles: list[tuple[Token, ...]] = []
    for start in sorted(arc):
        if start in seen:
            continue
        walk: list[Token] = []
        p = start
        while p not in seen:
            seen.add(p)
            q = arc[p]
            seen.add(q)
            walk += [p, q]
            p = glue[q]
        circles.append(tuple(walk))
    circles.sort(key=lambda c: min(c))

    owner = {t: c for c, circ in enumerate(circles) for t in circ}
    corner_map = tuple(
        tuple(owner[_out_token(v[i])] for i in range(len(v)))
        for v in rs.vertices
    )
    return CircleDecomposition(tuple(circles), corner_map)


def genus_and_orientability(rs: RotationSystem) -> tuple[bool, int]:
    """(orientable, genus) for orientable systems; (False, crosscaps) else.

    Orientability: the system is orientable iff some set of vertex
    reflections makes every edge positive, i.e. iff no negative loop exists
    and the sign constraints are consistent along every cycle.
    """
    if not rs.is_connected():
        raise VPDError("genus requires a connected graph")
    neg = rs._negative()
    ends = rs.edge_endpoints()
    orient: dict[int, int] = {0: 1}
    stack = [0]
    adj: dict[int, list[tuple[int, int]]] = {v: [] for v in range(rs.vertex_count)}
    for e, (u, w) in ends.items():
        adj[u].append((w, e))
        adj[w].append((u, e))
    orientable = all(not neg[e] or u != w for e, (u, w) in ends.items())
    while stack and orientable:
        u = stack.pop()
        for w, e in adj[u]:
            if u == w:
                continue
            want = orient[u] * (-1 if neg[e] else 1)
            if w not in orient:
                orient[w] = want
                stack.append(w)
            elif orient[w] != want:
                orientable = False
                break
    F = trace_boundary(rs).circle_count
    euler = rs.vertex_count - rs.edge_count + F
    if orientable:
        return True, (2 - euler) // 2
    return False, 2 - euler


# ---------------------------------------------------------------------------
# blowups


def blowup(rs: RotationSystem, at: tuple[int, ...] | None = None) -> PerfectMatchingDiagram:
    """Replace each vertex in ``at`` (default: all) by a cycle.

    Original edges keep their labels and signs and become the matching of the
    result (only when every vertex is blown up does the matching cover all
    vertices; partial blowups return the diagram with matching = original
    edges only if perfect, else raise).
    """
    targets = set(range(rs.vertex_count)) if at is None else set(at)
    k = rs.edge_count
    next_label = 2 * k + 1
    new_verts: list[tuple[int, ...]] = []
    for vi, v in enumerate(rs.vertices):
        if vi not in targets or len(v) == 1:
            new_verts.append(v)
            continue
        r = len(v)
        # cycle edges c_0..c_{r-1}; c_i joins new vertex i to new vertex i+1
        cyc = []
        for _ in range(r):
            cyc.append((next_label, next_label + 1))
            next_label += 2
        for i in range(r):
            nxt = cyc[i][0]
            prv = cyc[(i - 1) % r][1]
            new_verts.append((v[i], nxt, prv))
    out = RotationSystem(tuple(new_verts))
    validate(out)
    if at is None:
        return PerfectMatchingDiagram(out, tuple(range(1, k + 1)))
    matching = tuple(range(1, k + 1))
    try:
        return PerfectMatchingDiagram(out, matching)
    except VPDError:
        return PerfectMatchingDiagram(out, _greedy_matching(out))


def _greedy_matching(rs: RotationSystem) -> tuple[int, ...]:
    ends = rs.edge_endpoints()
    free = set(range(rs.vertex_count))
    chosen: list[int] = []
    for e in range(1, rs.edge_count + 1):
        u, w = ends[e]
        if u != w and u in free and w in free:
            chosen.append(e)
            free -= {u, w}
    if free:
        raise VPDError("no perfect matching found for partial blowup")
    return tuple(chosen)


def bubbled_blowup(rs: RotationSystem) -> PerfectMatchingDiagram:
    """Blowup with every matching edge split in two around a 2-cycle bubble.

    The matching of the result has ``2|E|`` half-edges; ``site_origin`` maps
    each matching site (0-based position in the matching tuple) to the
    original vertex and the half-edge position it is incident to.
    """
    bl = blowup(rs)
    base = bl.rs
    k = rs.edge_count
    neg = base._negative()
    # original vertex and half-edge position owning each original half-edge
    where: dict[int, tuple[int, int]] = {}
    for vi, v in enumerate(rs.vertices):
        for i, h in enumerate(v):
            where[abs(h)] = (vi, i)
    # slot (vertex index, position) of each half-edge label in the blowup
    slot_of: dict[int, tuple[int, int]] = {}
    for vi, v in enumerate(base.vertices):
        for i, h in enumerate(v):
            slot_of[abs(h)] = (vi, i)

    # Rebuild the diagram from an edge list with fresh labels.  Each matching
    # edge e of the blowup becomes half-edge A, a 2-cycle bubble (p, q), and
    # half-edge B; A keeps e's sign, the rest are positive.
    edges: list[tuple[tuple[int, int], tuple[int, int], int]] = []
    nbase = len(base.vertices)
    final_matching_sites: list[int] = []
    site_origin: list[tuple[int, int]] = []
    for e in range(1, base.edge_count + 1):
        a, b = slot_of[2 * e - 1], slot_of[2 * e]
        if e <= k:
            pi = nbase + 2 * (e - 1)
            qi = pi + 1
            edges.append((a, (pi, 0), -1 if neg[e] else 1))
            site_origin.append(where[2 * e - 1])
            final_matching_sites.append(len(edges))
            edges.append(((qi, 0), b, 1))
            site_origin.append(where[2 * e])
            final_matching_sites.append(len(edges))
            edges.append(((pi, 1), (qi, 2), 1))
            edges.append(((pi, 2), (qi, 1), 1))
        else:
            edges.append((a, b, 1))

    total_verts = nbase + 2 * k
    tuples: list[list[int]] = [[0, 0, 0] for _ in range(total_verts)]
    for idx, (sa, sb, sgn) in enumerate(edges, start=1):
        la, lb = 2 * idx - 1, 2 * idx
        tuples[sa[0]][sa[1]] = -la if sgn < 0 else la
        tuples[sb[0]][sb[1]] = lb
    out = RotationSystem(tuple(tuple(t) for t in tuples))
    validate(out)
    return PerfectMatchingDiagram(
        out, tuple(final_matching_sites), tuple(site_origin)
    )
