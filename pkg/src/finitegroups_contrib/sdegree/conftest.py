import pytest

import finitegroups_contrib.sdegree
from finitegroups_contrib.sdegree.config import reset_configuration


@pytest.fixture(autouse=True)
def _fresh_configuration():
    reset_configuration()
    yield
    reset_configuration()
