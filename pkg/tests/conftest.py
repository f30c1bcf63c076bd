import pytest

from hidden_pair.core import HiddenPairInstance


@pytest.fixture
def small():
    """The n=3 instance s=110, s'=101 used throughout the worked examples."""
    return HiddenPairInstance.from_strings("110", "101")


def brute_force_pairs(n):
    """Every unordered pair of equal-weight n-bit strings at distance 2."""
    out = set()
    for a in range(1 << n):
        for b in range(a + 1, 1 << n):
            if a.bit_count() == b.bit_count() and (a ^ b).bit_count() == 2:
                out.add((a, b))
    return out


def pytest_terminal_summary(terminalreporter):
    import sys

    module = sys.modules.get("tests.test_acceptance")
    if module is None or not module.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in module.RESULTS:
        terminalreporter.write_line(line)
