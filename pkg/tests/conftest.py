import itertools
import random

import pytest

from cayley_codes.groups import AbelianGroup
from cayley_codes.subsets import GroupSubset

# criterion number -> (passed, note); filled in by test_acceptance.py
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def invariant_factor_groups(max_order: int, min_order: int = 2):
    """Every abelian group of order in range, once, as n1 | n2 | ... ."""
    out = []

    def extend(prefix, prod):
        if prefix and prod >= min_order:
            out.append(AbelianGroup(tuple(prefix)))
        last = prefix[-1] if prefix else 1
        m = last if prefix else 2
        while prod * m <= max_order:
            if m % last == 0:
                extend(prefix + [m], prod * m)
            m += 1

    extend([], 1)
    return sorted(out, key=lambda G: (G.order, G.factors))


def random_subset(G: AbelianGroup, rng: random.Random, size=None, with_zero=False) -> GroupSubset:
    n = G.order
    if size is None:
        size = rng.randint(1, n)
    pool = list(range(1, n)) if with_zero else list(range(n))
    pick = rng.sample(pool, size - 1 if with_zero else size)
    return GroupSubset(G, tuple(pick) + ((0,) if with_zero else ()))


def random_connection_set(G: AbelianGroup, rng: random.Random, max_size=None) -> GroupSubset:
    neg = G.neg_index
    units = sorted({tuple(sorted((i, int(neg[i])))) for i in range(1, G.order)})
    rng.shuffle(units)
    k = rng.randint(1, len(units) if max_size is None else min(len(units), max_size))
    return GroupSubset(G, tuple(itertools.chain.from_iterable(units[:k])))


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, note = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k}: {'PASS' if ok else 'FAIL'}  {note}")


@pytest.fixture
def rng():
    return random.Random(20240601)
