from itertools import combinations
from math import comb

import pytest
from hypothesis import given, strategies as st

from steinerkit.combin import (
    iter_subsets_capped,
    subset_rank,
    subset_unrank,
)


def test_rank_is_colex_dense():
    subs = sorted(combinations(range(7), 3), key=subset_rank)
    assert [subset_rank(s) for s in subs] == list(range(comb(7, 3)))


@pytest.mark.parametrize("n,s", [(5, 1), (6, 3), (9, 4), (12, 2)])
def test_rank_unrank_roundtrip(n, s):
    for sub in combinations(range(n), s):
        assert subset_unrank(subset_rank(sub), s) == sub


@given(st.integers(2, 12), st.data())
def test_rank_unrank_random(n, data):
    s = data.draw(st.integers(1, n))
    sub = tuple(sorted(data.draw(st.sets(st.integers(0, n - 1), min_size=s, max_size=s))))
    assert subset_unrank(subset_rank(sub), s) == sub


def test_capped_enumeration_matches_brute_force():
    blocks = [(0, 1, 2), (2, 3, 4), (4, 5, 6)]
    for s, cap in [(3, 2), (4, 2), (3, 1)]:
        fast = list(iter_subsets_capped(7, s, blocks, cap))
        slow = [
            sub
            for sub in combinations(range(7), s)
            if all(len(set(sub) & set(b)) <= cap for b in blocks)
        ]
        assert fast == slow


def test_capped_enumeration_no_blocks_is_plain():
    assert list(iter_subsets_capped(5, 2, (), 0)) == list(combinations(range(5), 2))


def test_capped_enumeration_empty_subset():
    assert list(iter_subsets_capped(4, 0, [(0, 1)], 1)) == [()]
