import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from levylab.corpus import corpus_registry  # noqa: E402
from levylab.hf import build_v  # noqa: E402


@pytest.fixture(scope="session")
def creg():
    return corpus_registry()


@pytest.fixture(scope="session")
def v3():
    return build_v(3)


@pytest.fixture(scope="session")
def v4():
    return build_v(4)
