import pytest
from hypothesis import settings

from composition_clusters.cluster import avoider_gf, explain_system, joint_gf
from composition_clusters.compositions import parse_patterns

settings.register_profile("engine", max_examples=30, deadline=None)
settings.load_profile("engine")

SINGLE_AVOIDER = "3,4,5,4,3"
TRIPLE_AVOIDER = "2,5,2;3,4,3;4,2,4"
MIRROR_PAIR = "2,3,4;4,3,2"
WORKED = "2,3,2"


@pytest.fixture(scope="session")
def single_avoider_result():
    return avoider_gf(parse_patterns(SINGLE_AVOIDER))


@pytest.fixture(scope="session")
def triple_avoider_result():
    return avoider_gf(parse_patterns(TRIPLE_AVOIDER))


@pytest.fixture(scope="session")
def mirror_pair():
    return parse_patterns(MIRROR_PAIR)


@pytest.fixture(scope="session")
def mirror_pair_joint(mirror_pair):
    return joint_gf(mirror_pair)


@pytest.fixture(scope="session")
def worked_report():
    return explain_system(parse_patterns(WORKED))
