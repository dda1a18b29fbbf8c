import pytest

from pdcodes import parse, validate
from pdcodes.moves import Move, apply_move

TREFOIL_TEXT = "{[+4,-2,-5,+1],[+2,-6,-3,+5],[+6,-4,-1,+3]}"
MIRROR_TREFOIL_TEXT = "{[+6,+3,-1,-4],[+2,+5,-3,-6],[+4,+1,-5,-2]}"
TORUS_TEXT = "{[+5,+2,-6,-3],[+3,-1,-4,+6],[+1,+4,-2,-5]}"
HOPF_TEXT = "{[(1,+2),(2,-2),(1,-1),(2,+1)],[(2,+2),(1,-2),(2,-1),(1,+1)]}"
TWO_COMPONENT_TEXT = (
    "{[(1,+6),(1,-2),(1,-7),(1,+1)],"
    "[(1,+2),(1,-8),(1,-3),(1,+7)],"
    "[(2,+1),(1,-9),(2,-2),(1,+8)],"
    "[(1,+9),(2,-1),(1,-10),(2,+4)],"
    "[(1,+10),(1,-6),(1,-1),(1,+5)],"
    "[(2,+2),(1,-4),(2,-3),(1,+3)],"
    "[(1,+4),(2,-4),(1,-5),(2,+3)]}"
)

SAMPLE_TEXTS = {
    "trefoil": TREFOIL_TEXT,
    "mirror_trefoil": MIRROR_TREFOIL_TEXT,
    "torus": TORUS_TEXT,
    "hopf": HOPF_TEXT,
    "two_component": TWO_COMPONENT_TEXT,
}


@pytest.fixture(scope="session")
def trefoil():
    return parse(TREFOIL_TEXT, "paper")


@pytest.fixture(scope="session")
def mirror_trefoil():
    return parse(MIRROR_TREFOIL_TEXT, "paper")


@pytest.fixture(scope="session")
def torus():
    return parse(TORUS_TEXT, "paper")


@pytest.fixture(scope="session")
def hopf():
    return parse(HOPF_TEXT, "paper")


@pytest.fixture(scope="session")
def two_component_link():
    return parse(TWO_COMPONENT_TEXT, "paper")


@pytest.fixture(scope="session")
def kinked_trefoil(trefoil):
    return apply_move(trefoil, Move("R1a", "insert", ((1, 1),)))


@pytest.fixture(scope="session")
def sample_codes(trefoil, mirror_trefoil, torus, hopf, two_component_link):
    return {
        "trefoil": trefoil,
        "mirror_trefoil": mirror_trefoil,
        "torus": torus,
        "hopf": hopf,
        "two_component": two_component_link,
    }
