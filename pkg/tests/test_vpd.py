import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

import vhx
from vhx.vpd import (
    VPDError,
    blowup,
    bubbled_blowup,
    genus_and_orientability,
    parse_vpd,
    serialize_vpd,
    trace_boundary,
)


def test_parse_theta():
    rs = parse_vpd("G[V[1,6,4],V[2,3,5]]")
    assert rs.vertex_count == 2
    assert rs.edge_count == 3
    assert rs.vertices == ((1, 6, 4), (2, 3, 5))


def test_parse_whitespace_insensitive():
    a = parse_vpd("G[V[1,6,4],V[2,3,5]]")
    b = parse_vpd(" G [ V[ 1 ,6, 4] ,\n V[2,3,5] ]\n")
    assert a == b


def test_parse_negative_edge():
    rs = parse_vpd("G[V[1,6,4],V[2,3,-5]]")
    assert rs.edge_sign(3) == -1
    assert rs.edge_sign(1) == 1


@pytest.mark.parametrize(
    "text",
    [
        "",
        "G[]",
        "G[V[1,2,3]]",  # missing labels 4..6's pair structure
        "G[V[1,6,4],V[2,3,5]",  # unbalanced
        "H[V[1,6,4],V[2,3,5]]",
        "G[V[1,6,4],V[2,3,-6]]",  # sign on even label
        "G[V[1,6,4],V[2,3,5,7]]",  # bad valence + bad labels
        "G[V[1,6,4],V[2,3,3]]",  # duplicate
    ],
)
def test_parse_errors(text):
    with pytest.raises(VPDError):
        parse_vpd(text)


def test_parse_error_reports_position():
    with pytest.raises(VPDError, match="line 2"):
        parse_vpd("G[V[1,6,4],\nV[2,3,x]]")


def test_any_valence():
    with pytest.raises(VPDError):
        parse_vpd("G[V[1,4,3,6],V[2,5]]")
    rs = parse_vpd("G[V[1,4,3,6],V[2,5]]", any_valence=True)
    assert rs.vertex_count == 2


def test_serialize_roundtrip_fixtures(graphs):
    for rs in graphs.values():
        assert parse_vpd(serialize_vpd(rs)) == rs


FACE_COUNTS = {
    "theta": 3,
    "thetaneg": 2,
    "k4": 4,
    "p3": 5,
    "k33": 3,
    "dodec": 12,
}


@pytest.mark.parametrize("name,faces", sorted(FACE_COUNTS.items()))
def test_face_counts(graphs, name, faces):
    assert trace_boundary(graphs[name]).circle_count == faces


def test_genus(graphs):
    assert genus_and_orientability(graphs["theta"]) == (True, 0)
    assert genus_and_orientability(graphs["k4"]) == (True, 0)
    assert genus_and_orientability(graphs["p3"]) == (True, 0)
    assert genus_and_orientability(graphs["dodec"]) == (True, 0)
    assert genus_and_orientability(graphs["k33"]) == (True, 1)
    orientable, crosscaps = genus_and_orientability(graphs["thetaneg"])
    assert not orientable and crosscaps == 1


def test_corner_map_shape(graphs):
    dec = trace_boundary(graphs["theta"])
    assert len(dec.corner_map) == 2
    assert all(len(c) == 3 for c in dec.corner_map)
    # theta all-zero state: each vertex sees all three circles
    assert {frozenset(c) for c in dec.corner_map} == {frozenset({0, 1, 2})}


def test_blowup_theta(graphs):
    pmd = blowup(graphs["theta"])
    assert pmd.rs.vertex_count == 6
    assert pmd.rs.edge_count == 9
    assert len(pmd.matching) == 3
    # the blowup of a plane graph is plane
    assert genus_and_orientability(pmd.rs) == (True, 0)


def test_bubbled_blowup_theta(graphs):
    pmd = bubbled_blowup(graphs["theta"])
    assert pmd.rs.vertex_count == 12
    assert pmd.rs.edge_count == 18
    assert len(pmd.matching) == 2 * graphs["theta"].edge_count
    # three matching half-edges are incident to each original vertex's cycle
    per_vertex = {}
    for site, edge in enumerate(pmd.matching):
        v, _ = pmd.site_origin[site]
        per_vertex.setdefault(v, []).append(edge)
    assert all(len(v) == 3 for v in per_vertex.values())


def test_single_vertex_blowup(graphs):
    pmd = blowup(graphs["theta"], at={0})
    assert pmd.rs.vertex_count == 4
    assert pmd.rs.edge_count == 6


@st.composite
def trivalent_systems(draw):
    nv = draw(st.sampled_from([2, 4]))
    labels = list(range(1, 3 * nv + 1))
    perm = draw(st.permutations(labels))
    verts = [tuple(perm[3 * i : 3 * i + 3]) for i in range(nv)]
    flips = draw(st.sets(st.integers(1, 3 * nv // 2), max_size=2))
    out = []
    for v in verts:
        out.append(tuple(-h if h % 2 == 1 and (h + 1) // 2 in flips else h for h in v))
    return "G[" + ",".join("V[" + ",".join(map(str, v)) + "]" for v in out) + "]"


@given(trivalent_systems())
@settings(max_examples=60, deadline=None)
def test_roundtrip_random(text):
    try:
        rs = parse_vpd(text)
    except VPDError:
        assume(False)
    assert parse_vpd(serialize_vpd(rs)) == rs
    dec = trace_boundary(rs)
    # every token appears exactly once over all circles
    tokens = [t for c in dec.circles for t in c]
    assert len(tokens) == len(set(tokens)) == 4 * rs.edge_count


@given(trivalent_systems())
@settings(max_examples=30, deadline=None)
def test_euler_characteristic_bound(text):
    try:
        rs = parse_vpd(text)
    except VPDError:
        assume(False)
    orientable, g = genus_and_orientability(rs)
    euler = rs.vertex_count - rs.edge_count + trace_boundary(rs).circle_count
    assert euler == (2 - 2 * g if orientable else 2 - g)
