import pytest

import vhx

LOLLIPOP = "G[V[1,5,9],V[2,3,4],V[6,7,8],V[10,11,12]]"

SMALL_FIXTURES = ("theta", "thetaneg", "k4", "thetab", "p3", "k33")


@pytest.fixture(scope="session")
def graphs():
    out = {name: vhx.load_fixture(name) for name in vhx.FIXTURES}
    out["lollipop"] = vhx.parse_vpd(LOLLIPOP)
    return out
