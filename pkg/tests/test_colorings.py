import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from vhx.colorings import (
    FaceColoring,
    count_partial_colorings,
    enumerate_partial_colorings,
    filtered_ranks,
    harmonic_kernel_check,
    induced_matching,
    total_matching_polynomial,
)
from vhx.oracles import AbstractGraph, bridges, perfect_matchings
from vhx.states import StateIndex, VertexHypercube
from vhx.vpd import trace_boundary


def k33_formulas(n):
    return [
        n * (n - 1) ** 2,
        4 * n * (n - 1) ** 2,
        n * (7 - 16 * n + 9 * n**2),
        4 * n * (2 - 5 * n + 3 * n**2),
        n * (7 - 16 * n + 9 * n**2),
        4 * n * (n - 1) ** 2,
        n * (n - 1) ** 2,
    ]


def test_theta_all_zero_count(graphs):
    dec = trace_boundary(graphs["theta"])
    assert count_partial_colorings(dec, 2) == 6
    assert count_partial_colorings(dec, 3) == 24


def test_monochromatic_vertex_kills(graphs):
    # theta middle states have a single circle through all corners
    hc = VertexHypercube(graphs["theta"])
    dec = hc.vertex_decomposition(StateIndex((1, 0)))
    assert dec.circle_count == 1
    assert count_partial_colorings(dec, 2) == 0
    assert count_partial_colorings(dec, 5) == 0


def test_theta_filtered(graphs):
    fr = filtered_ranks(graphs["theta"], 2)
    assert fr.ranks == [6, 0, 6]
    assert fr.euler == 12
    assert fr.total == 12


def test_k33_filtered_table(graphs):
    fr = filtered_ranks(graphs["k33"], 2)
    assert fr.ranks == [2, 8, 22, 32, 22, 8, 2]
    assert fr.euler == 0
    assert fr.total == 96


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_k33_filtered_formulas(graphs, n):
    assert filtered_ranks(graphs["k33"], n).ranks == k33_formulas(n)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_k33_single_smoothing_states(graphs, n):
    """Four of the six weight-1 states carry n(n-1)^2 colorings each."""
    hc = VertexHypercube(graphs["k33"])
    counts = sorted(
        count_partial_colorings(
            hc.vertex_decomposition(
                StateIndex(tuple(1 if i == v else 0 for i in range(6)))
            ),
            n,
        )
        for v in range(6)
    )
    single = n * (n - 1) ** 2
    assert counts == [0, 0, single, single, single, single]
    assert sum(counts) == 4 * n * (n - 1) ** 2


def test_memo_matches_no_memo(graphs):
    for name in ("theta", "k4", "k33"):
        for n in (2, 3):
            a = filtered_ranks(graphs[name], n, use_memo=True)
            b = filtered_ranks(graphs[name], n, use_memo=False)
            assert a.ranks == b.ranks


def test_count_matches_enumeration(graphs):
    hc = VertexHypercube(graphs["k4"])
    for bits in itertools.product([0, 1], repeat=4):
        dec = hc.vertex_decomposition(StateIndex(bits))
        for n in (2, 3):
            assert count_partial_colorings(dec, n) == sum(
                1 for _ in enumerate_partial_colorings(dec, n)
            )


def test_complement_symmetry(graphs):
    for name in ("theta", "k4", "p3", "k33"):
        fr = filtered_ranks(graphs[name], 2)
        assert fr.ranks == fr.ranks[::-1]


def test_tm_polynomial(graphs):
    tm = total_matching_polynomial(graphs["k33"], 2)
    assert tm(1) == 96
    assert tm.coeffs == {0: 2, 1: 8, 2: 22, 3: 32, 4: 22, 5: 8, 6: 2}
    assert total_matching_polynomial(graphs["lollipop"], 2)(1) == 0


def test_plane_identities(graphs):
    """rank0 = 2 #PM; euler = 2^(|V|/2) #Tait; rank1 = 4 m b on plane graphs."""
    from vhx.oracles import count_tait_colorings

    for name in ("theta", "k4", "p3"):
        rs = graphs[name]
        g = AbstractGraph.from_rotation_system(rs)
        fr = filtered_ranks(rs, 2)
        pms = perfect_matchings(g)
        assert fr.ranks[0] == 2 * len(pms)
        assert fr.euler == 2 ** (rs.vertex_count // 2) * count_tait_colorings(g)
        assert fr.ranks[1] == 4 * len(pms) * len(bridges(g))


def test_induced_matchings_theta(graphs):
    theta = graphs["theta"]
    hc = VertexHypercube(theta)
    dec = hc.vertex_decomposition(StateIndex((0, 0)))
    seen = set()
    for colors in enumerate_partial_colorings(dec, 2):
        edges, cls = induced_matching(FaceColoring(StateIndex((0, 0)), colors), theta)
        assert cls == "perfect matching"
        assert len(edges) == 1  # each single edge of theta is a perfect matching
        seen.add(edges)
    assert len(seen) == 3


def test_induced_matching_rejects_bad_coloring(graphs):
    with pytest.raises(ValueError):
        induced_matching(FaceColoring(StateIndex((0, 0)), (0, 0, 0)), graphs["theta"])


def test_induced_matching_proper_coloring_is_empty(graphs):
    theta = graphs["theta"]
    dec = trace_boundary(theta)
    # three circles, all corners distinct: a proper 3-face coloring
    edges, cls = induced_matching(FaceColoring(StateIndex((0, 0)), (0, 1, 2)), theta)
    assert cls == "empty"
    assert edges == frozenset()


def test_bridge_always_induced(graphs):
    lolly = graphs["lollipop"]
    hc = VertexHypercube(lolly)
    g = AbstractGraph.from_rotation_system(lolly)
    br = {e + 1 for e in bridges(g)}  # 1-based edge ids
    for bits in itertools.product([0, 1], repeat=4):
        dec = hc.vertex_decomposition(StateIndex(bits))
        for colors in enumerate_partial_colorings(dec, 2):
            edges, _ = induced_matching(FaceColoring(StateIndex(bits), colors), lolly)
            assert br <= edges


@pytest.mark.parametrize("n", [2, 3])
def test_harmonic_kernel_theta(graphs, n):
    report = harmonic_kernel_check(graphs["theta"], n)
    assert report.ok
    # per-degree sums reproduce the filtered ranks
    fr = filtered_ranks(graphs["theta"], n)
    sums = [0] * 3
    for bits, (cnt, numeric, _) in report.per_state.items():
        assert cnt == numeric
        sums[sum(bits)] += numeric
    assert sums == fr.ranks


@given(st.integers(2, 6))
@settings(max_examples=5, deadline=None)
def test_counts_scale_with_free_circles(n):
    # a 2-vertex graph state with unconstrained circles multiplies by n each
    import vhx

    theta = vhx.load_fixture("theta")
    dec = trace_boundary(theta)
    base = count_partial_colorings(dec, n)
    assert base == n * (n - 1) * (n - 2) + 3 * n * (n - 1)  # inclusion-exclusion
