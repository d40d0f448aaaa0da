import itertools
from pathlib import Path

import pytest

from ghgd import LOHistogram, ProblemSpec

DATA = Path(__file__).parent / "data"

# Four-list example: universe size, subset sizes, and the
# observed level-of-overlap counts (LO = 1..4).
FOUR_LIST_N = 19815
FOUR_LIST_M = (127, 110, 87, 110)
FOUR_LIST_OBSERVED = {1: 245, 2: 44, 3: 25, 4: 14}


@pytest.fixture
def four_list_spec():
    return ProblemSpec(FOUR_LIST_N, FOUR_LIST_M)


@pytest.fixture
def four_list_observed():
    counts = [FOUR_LIST_OBSERVED[t] for t in range(1, 5)]
    return LOHistogram((FOUR_LIST_N - sum(counts), *counts))


@pytest.fixture
def demo_files():
    return sorted((DATA / "olig2_demo").glob("dataset*.txt"))


def small_specs(max_n, max_t, ordered=False):
    """Every spec with 0 <= N <= max_n and 1 <= T <= max_t."""
    for n in range(max_n + 1):
        for t_count in range(1, max_t + 1):
            if ordered:
                tuples = itertools.product(range(n + 1), repeat=t_count)
            else:
                tuples = itertools.combinations_with_replacement(range(n + 1), t_count)
            for sizes in tuples:
                yield ProblemSpec(n, tuple(sizes))


# Acceptance verdict lines, printed after the run regardless of capture.
VERDICTS: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if VERDICTS:
        terminalreporter.section("acceptance criteria")
        for line in sorted(VERDICTS, key=lambda v: int(v.split("criterion ")[1].split(":")[0])):
            terminalreporter.write_line(line)
