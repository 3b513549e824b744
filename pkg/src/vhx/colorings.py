"""Filtered homology ranks via harmonic circle colorings.

The filtered homology rank in homological degree i equals the number of
n-colorings of the boundary circles, summed over weight-i states, in which
every vertex sees at least two colors among its three corner arcs.  This
module counts those colorings combinatorially, derives the total matching
polynomial, extracts the matching a coloring induces, and cross-checks the
combinatorics against a numeric kernel computation.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .poly import _Poly
from .states import DEFAULT_STATE_CAP, StateIndex, VertexHypercube
from .vpd import CircleDecomposition, RotationSystem


class TPoly(_Poly):
    """Integer polynomial in the filtration variable t."""

    var = "t"


# ---------------------------------------------------------------------------
# counting


def _structure(dec: CircleDecomposition) -> tuple[tuple[tuple[int, ...], ...], int]:
    """Constraints with circles relabeled by first occurrence, plus the
    number of unconstrained circles (each contributes a free factor n)."""
    relabel: dict[int, int] = {}
    constraints = []
    for corners in dec.corner_map:
        row = []
        for c in corners:
            if c not in relabel:
                relabel[c] = len(relabel)
            row.append(relabel[c])
        constraints.append(tuple(row))
    free = dec.circle_count - len(relabel)
    return tuple(sorted(constraints)), free


def _count_constrained(constraints, ncircles: int, n: int) -> int:
    """Backtracking count of circle colorings avoiding monochromatic
    constraint triples; circles with most constraints are colored first."""
    if any(len(set(c)) == 1 for c in constraints):
        return 0
    load = [0] * ncircles
    for c in constraints:
        for x in set(c):
            load[x] += 1
    order = sorted(range(ncircles), key=lambda x: (-load[x], x))
    pos = {c: i for i, c in enumerate(order)}
    # a constraint becomes checkable once its last circle is colored
    ready: list[list[tuple[int, ...]]] = [[] for _ in range(ncircles)]
    for con in constraints:
        ready[max(pos[c] for c in con)].append(con)
    color = [0] * ncircles

    def rec(depth: int) -> int:
        if depth == ncircles:
            return 1
        total = 0
        for col in range(n):
            color[order[depth]] = col
            if all(
                len({color[c] for c in con}) > 1 for con in ready[depth]
            ):
                total += rec(depth + 1)
        return total

    return rec(0)


_memo: dict[tuple, int] = {}


def count_partial_colorings(dec: CircleDecomposition, n: int, use_memo: bool = True) -> int:
    """Number of n-colorings of the circles with no monochromatic vertex."""
    constraints, free = _structure(dec)
    key = (constraints, n)
    if use_memo and key in _memo:
        base = _memo[key]
    else:
        ncon = 1 + max((c for con in constraints for c in con), default=-1)
        base = _count_constrained(constraints, ncon, n)
        if use_memo:
            _memo[key] = base
    return base * n**free


def enumerate_partial_colorings(dec: CircleDecomposition, n: int):
    """All valid color tuples (small inputs / debugging only)."""
    for colors in itertools.product(range(n), repeat=dec.circle_count):
        if all(len({colors[c] for c in corners}) > 1 for corners in dec.corner_map):
            yield colors


# ---------------------------------------------------------------------------
# filtered ranks


@dataclass
class FaceColoring:
    """A circle coloring of one vertex state."""

    state: StateIndex
    colors: tuple[int, ...]


@dataclass
class FilteredRanks:
    n: int
    ranks: list[int]  # indexed by homological degree i
    state_counts: dict[tuple[int, ...], int] = field(default_factory=dict)

    @property
    def euler(self) -> int:
        return sum((-1) ** i * r for i, r in enumerate(self.ranks))

    @property
    def total(self) -> int:
        return sum(self.ranks)

    def tm_poly(self) -> TPoly:
        return TPoly({i: r for i, r in enumerate(self.ranks) if r})

    def to_json(self) -> str:
        import json

        return json.dumps(
            {"n": self.n, "ranks": self.ranks, "euler": self.euler, "tm": self.total}
        )


def filtered_ranks(
    rs: RotationSystem,
    n: int,
    cap: int = DEFAULT_STATE_CAP,
    use_memo: bool = True,
) -> FilteredRanks:
    """Filtered homology ranks: per-state harmonic-coloring counts summed by
    state weight."""
    if n < 2:
        raise ValueError("n must be >= 2")
    hc = VertexHypercube(rs, cap)
    hc.check_cap()
    ranks = [0] * (hc.n_vertices + 1)
    state_counts: dict[tuple[int, ...], int] = {}
    for bits in itertools.product([0, 1], repeat=hc.n_vertices):
        dec = hc.vertex_decomposition(StateIndex(bits))
        cnt = count_partial_colorings(dec, n, use_memo=use_memo)
        state_counts[bits] = cnt
        ranks[sum(bits)] += cnt
    return FilteredRanks(n, ranks, state_counts)


def total_matching_polynomial(
    rs: RotationSystem, n: int, cap: int = DEFAULT_STATE_CAP
) -> TPoly:
    """TM(Gamma, n, t) = sum_i t^i rank_i; TM(Gamma, n) is its value at 1."""
    return filtered_ranks(rs, n, cap).tm_poly()


# ---------------------------------------------------------------------------
# induced matchings


def induced_matching(
    coloring: FaceColoring, rs: RotationSystem, cap: int = DEFAULT_STATE_CAP
) -> tuple[frozenset[int], str]:
    """Edges whose two band sides lie on same-colored circles.

    Returns (edge set, classification): ``empty`` when the coloring is
    proper at every vertex, ``perfect matching`` when it is partial (exactly
    two colors) at every vertex, ``mixed`` otherwise.
    """
    hc = VertexHypercube(rs, cap)
    dec = hc.vertex_decomposition(coloring.state)
    if len(coloring.colors) != dec.circle_count:
        raise ValueError("coloring length does not match the state's circles")
    for corners in dec.corner_map:
        if len({coloring.colors[c] for c in corners}) == 1:
            raise ValueError("coloring violates the partial condition")
    owner = dec.token_owner()
    edges = frozenset(
        e
        for e in range(1, rs.edge_count + 1)
        if coloring.colors[owner[(2 * e - 1, 1)]]
        == coloring.colors[owner[(2 * e - 1, 2)]]
    )
    kinds = {
        len({coloring.colors[c] for c in corners}) for corners in dec.corner_map
    }
    if kinds == {3}:
        cls = "empty"
    elif kinds == {2}:
        cls = "perfect matching"
    else:
        cls = "mixed"
    return edges, cls


# ---------------------------------------------------------------------------
# numeric cross-check of the harmonic characterization


@dataclass
class KernelReport:
    n: int
    per_state: dict[tuple[int, ...], tuple[int, int, str]]  # (count, numeric, status)

    @property
    def ok(self) -> bool:
        return all(s == "ok" for _, _, s in self.per_state.values())

    @property
    def inconclusive(self) -> bool:
        return any(s == "inconclusive" for _, _, s in self.per_state.values())


def _hat_matrix(hc: VertexHypercube, n: int, nu: StateIndex, vertex: int):
    """Numeric matrix (monomial basis) of the hat map for one vertex flip."""
    import numpy as np

    from .homology import _compose, _monomials, elementary_tensor_map

    sigmas, edges = hc.site_path(nu, vertex, (0, 1, 2))
    decs = [hc.decomposition(s) for s in sigmas]
    cur = None
    for idx in range(3):
        step = elementary_tensor_map(decs[idx], decs[idx + 1], edges[idx], n, "hat")
        cur = step if cur is None else _compose(cur, step)
    kb, ka = decs[0].circle_count, decs[3].circle_count
    col_of = {e: i for i, e in enumerate(_monomials(n, kb))}
    row_of = {e: i for i, e in enumerate(_monomials(n, ka))}
    mat = np.zeros((n**ka, n**kb))
    for a, lst in cur.items():
        for b, c in lst:
            mat[row_of[b], col_of[a]] += float(c)
    return mat


def harmonic_kernel_check(
    rs: RotationSystem,
    n: int,
    cap: int = DEFAULT_STATE_CAP,
    threshold: float = 1e-7,
) -> KernelReport:
    """Check dim(ker delta-hat intersect ker of its adjoint) per state
    against the combinatorial coloring count.

    Adjoints are taken in the color basis, where the metric is orthonormal,
    so the adjoint is the conjugate transpose.  States whose smallest kept
    and largest dropped singular values sit within a factor 10 of the
    threshold are reported ``inconclusive`` rather than failed.
    """
    import numpy as np

    from .algebra import color_change_matrix

    hc = VertexHypercube(rs, cap)
    hc.check_cap()
    nv = hc.n_vertices

    def cob(k):
        C = np.eye(1, dtype=complex)
        base = color_change_matrix(n)
        for _ in range(k):
            C = np.kron(C, base)
        return C

    per_state: dict[tuple[int, ...], tuple[int, int, str]] = {}
    for bits in itertools.product([0, 1], repeat=nv):
        nu = StateIndex(bits)
        dec = hc.vertex_decomposition(nu)
        k = dec.circle_count
        dim = n**k
        C_here = cob(k)
        C_here_inv = np.linalg.inv(C_here)
        blocks = []
        for v in range(nv):
            if bits[v] == 0:
                mat = _hat_matrix(hc, n, nu, v)
                ka = round(np.log(mat.shape[0]) / np.log(n))
                blocks.append(np.linalg.inv(cob(ka)) @ mat @ C_here)
            else:
                prev = nu.flip(v)
                mat = _hat_matrix(hc, n, prev, v)
                kb = round(np.log(mat.shape[1]) / np.log(n))
                mc = C_here_inv @ mat @ cob(kb)
                blocks.append(mc.conj().T)
        count = count_partial_colorings(dec, n)
        if not blocks:
            per_state[bits] = (count, dim, "ok" if count == dim else "mismatch")
            continue
        stacked = np.vstack(blocks)
        sv = np.linalg.svd(stacked, compute_uv=False)
        kept = [s for s in sv if s > threshold]
        dropped = [s for s in sv if s <= threshold]
        numeric = dim - len(kept)
        near = (kept and min(kept) < 10 * threshold) or (
            dropped and max(dropped) > threshold / 10
        )
        if near:
            status = "inconclusive"
        else:
            status = "ok" if numeric == count else "mismatch"
        per_state[bits] = (count, numeric, status)
    return KernelReport(n, per_state)
