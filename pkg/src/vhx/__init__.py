"""vhx: vertex polynomials and vertex homology of trivalent ribbon graphs."""

from importlib import resources

from .colorings import (
    count_partial_colorings,
    filtered_ranks,
    harmonic_kernel_check,
    induced_matching,
    total_matching_polynomial,
)
from .homology import (
    bigraded_homology,
    build_pm_complex,
    build_vertex_complex,
    chain_condition_holds,
    delta_graded_pieces,
    graded_euler,
)
from .oracles import (
    AbstractGraph,
    bridges,
    classify_matching,
    count_tait_colorings,
    perfect_matchings,
)
from .poly import (
    abstract_vertex_polynomial,
    ncolor_vertex_polynomial,
    vertex_polynomial,
)
from .vpd import (
    PerfectMatchingDiagram,
    RotationSystem,
    VPDError,
    blowup,
    bubbled_blowup,
    genus_and_orientability,
    parse_vpd,
    serialize_vpd,
    trace_boundary,
)

__version__ = "0.1.0"

FIXTURES = ("theta", "thetaneg", "k4", "thetab", "p3", "k33", "dodec")


def fixture_text(name: str) -> str:
    """VPD source of a bundled fixture graph."""
    if name not in FIXTURES:
        raise KeyError(f"unknown fixture {name!r}; choose from {FIXTURES}")
    return (resources.files("vhx") / "data" / f"{name}.vpd").read_text()


def load_fixture(name: str) -> RotationSystem:
    """Parse a bundled fixture graph by name."""
    return parse_vpd(fixture_text(name))
