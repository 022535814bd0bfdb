import os
import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from landau_lab.zeros import cached_zeros  # noqa: E402

DATA = Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def cache_dir(tmp_path_factory):
    env = os.environ.get("LANDAU_LAB_CACHE")
    folder = Path(env) if env else tmp_path_factory.mktemp("zero-cache")
    # CLI calls made in-process pick the same cache up from the environment
    os.environ["LANDAU_LAB_CACHE"] = str(folder)
    return folder


@pytest.fixture(scope="session")
def table(cache_dir):
    """The first 10^5 zeros (computed once per session unless cached)."""
    return cached_zeros(100_000, cache_dir)


@pytest.fixture(scope="session")
def reference100():
    lines = (DATA / "zetazero_first100.txt").read_text().split("\n")
    return np.array([float(s) for s in lines if s and not s.startswith("#")])


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod and mod.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in mod.RESULTS:
            terminalreporter.write_line(line)
