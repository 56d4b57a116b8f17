import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from abslog.semantics import degenerate_model
from abslog.theories import logic_E, logic_peano, standard_two_element_model


@pytest.fixture(scope="session")
def le():
    return logic_E()


@pytest.fixture(scope="session")
def sig_le(le):
    return le.signature


@pytest.fixture(scope="session")
def peano():
    return logic_peano()


@pytest.fixture(scope="session")
def bool2():
    return standard_two_element_model()


@pytest.fixture(scope="session")
def degen_le(le):
    return degenerate_model(le.signature)


@pytest.fixture(scope="session")
def data_dir():
    return Path(__file__).parent.parent / "src" / "abslog" / "data"
