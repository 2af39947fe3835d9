"""Shared oracles for the test suite.

Everything here is deliberately independent of the package internals:
plain-list splicing, brute-force scans, and closed-form block logic, so
the fast implementations are checked against something that cannot share
their bugs.
"""
import random
import sys

import pytest

from recurrencelab import Word


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """Replay the acceptance-gate verdict lines after capture ends."""
    mod = (sys.modules.get("test_acceptance")
           or sys.modules.get("tests.test_acceptance"))
    verdicts = getattr(mod, "_VERDICTS", None) if mod else None
    if verdicts:
        terminalreporter.section("acceptance gate")
        for line in verdicts:
            terminalreporter.write_line(line)


def marker_base_symbol(p: int, m: int, j: int, free) -> int:
    """Independent definition of the block base: zeros up to p, block
    walls at positions = 0 or 1 mod p, free symbols in the interior."""
    if j <= p:
        return 0
    r = j % p
    if r in (0, 1):
        return 1
    k = (j - 1) // p
    ordinal = (k - 1) * (p - 2) + (r - 1)
    return free(ordinal)


def splice_oracle(p: int, m: int, terms, free, length: int) -> list[int]:
    """Iterative list-insertion construction, the slow reference for
    apply_insertions: build the base, then insert each marker word at its
    position into the current list."""
    pad = length + sum(n + 3 for n, _ in terms) + 16
    x = [marker_base_symbol(p, m, j, free) for j in range(1, pad + 1)]
    for n_k, ell_k in terms:
        if ell_k - 1 <= p:
            continue
        w = [1] + x[:n_k] + [(x[n_k] + 1) % m] + [1]
        x[ell_k - 1:ell_k - 1] = w
    return x[:length]


def brute_return_time(syms, n: int, prime: bool = False):
    """(value, exact) by direct window comparison, no string tricks."""
    L = len(syms)
    start = n if prime else 1
    for j in range(start, L - n + 1):
        if syms[j:j + n] == syms[:n]:
            return j, True
    return max(L - n, start - 1), False


def random_word(rng: random.Random, m: int, length: int) -> Word:
    return Word.from_iterable((rng.randrange(m) for _ in range(length)), m)


@pytest.fixture
def rng():
    return random.Random(0xC0FFEE)
