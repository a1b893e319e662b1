import pathlib
import sys

import hypothesis
import pytest

hypothesis.settings.register_profile(
    "default", max_examples=25, deadline=None, derandomize=True)
hypothesis.settings.load_profile("default")

REPO = pathlib.Path(__file__).resolve().parents[1]
sys.path.insert(0, str(REPO / "src"))


@pytest.fixture(scope="session")
def inputs_dir():
    return REPO / "inputs"


@pytest.fixture(scope="session")
def p1_z2_input(inputs_dir):
    from orbifock.schema import parse_orbifold_input
    return parse_orbifold_input(inputs_dir / "p1_z2.json")


@pytest.fixture(scope="session")
def s3_p1_input(inputs_dir):
    from orbifock.schema import parse_orbifold_input
    return parse_orbifold_input(inputs_dir / "s3_p1.json")
