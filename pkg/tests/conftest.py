import random
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

import pytest

from localcad.poly import VarOrder


def random_poly(rng: random.Random, V: VarOrder, max_deg: tuple, terms: int, bound: int = 9):
    """Random polynomial with per-variable degree bounds ``max_deg``."""
    out = {}
    for _ in range(terms):
        e = tuple(rng.randint(0, d) for d in max_deg)
        c = rng.randint(-bound, bound)
        if c:
            out[e] = out.get(e, 0) + c
    return V.from_dict(out)


@pytest.fixture
def rng():
    return random.Random(20240601)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is not None and mod.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in mod.RESULTS:
            terminalreporter.write_line(line)
