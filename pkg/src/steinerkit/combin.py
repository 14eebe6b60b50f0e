"""Subset ranking and constrained subset enumeration.

Sorted s-subsets of {0..n-1} are ranked in colexicographic order:
rank(S) = sum C(S[i], i+1). The rank is dense in [0, C(n,s)), which lets
visited sets and count tables live in flat byte arrays.
"""

from __future__ import annotations

from itertools import combinations
from math import comb
from typing import Iterator, Sequence


def subset_rank(subset: Sequence[int]) -> int:
    r = 0
    for i, x in enumerate(subset):
        r += comb(x, i + 1)
    return r


def subset_unrank(rank: int, s: int) -> tuple[int, ...]:
    """Inverse of subset_rank for s-subsets."""
    out = []
    for i in range(s, 0, -1):
        # largest x with C(x, i) <= rank
        x = i - 1
        c = 0  # C(x, i) for current x
        while True:
            nc = comb(x + 1, i)
            if nc > rank:
                break
            x += 1
            c = nc
        out.append(x)
        rank -= c
    out.reverse()
    return tuple(out)


def iter_subsets(n: int, s: int) -> Iterator[tuple[int, ...]]:
    return combinations(range(n), s)


def iter_subsets_capped(
    n: int,
    s: int,
    blocks: Sequence[Sequence[int]],
    cap: int,
) -> Iterator[tuple[int, ...]]:
    """Lexicographic s-subsets of {0..n-1} meeting every block in at most `cap` points.

    Prunes on partial subsets: once a prefix holds cap+1 points of some
    block, no extension is emitted. With an empty block list this is a
    plain combinations iterator.
    """
    if s == 0:
        yield ()
        return
    if not blocks:
        yield from combinations(range(n), s)
        return
    point_blocks: list[tuple[int, ...]] = [() for _ in range(n)]
    buckets: list[list[int]] = [[] for _ in range(n)]
    for bi, blk in enumerate(blocks):
        for p in blk:
            buckets[p].append(bi)
    point_blocks = [tuple(b) for b in buckets]
    counts = bytearray(len(blocks))
    chosen: list[int] = []

    def rec(start: int) -> Iterator[tuple[int, ...]]:
        want = s - len(chosen)
        for p in range(start, n - want + 1):
            touched = point_blocks[p]
            ok = True
            for bi in touched:
                if counts[bi] == cap:
                    ok = False
                    break
            if not ok:
                continue
            for bi in touched:
                counts[bi] += 1
            chosen.append(p)
            if want == 1:
                yield tuple(chosen)
            else:
                yield from rec(p + 1)
            chosen.pop()
            for bi in touched:
                counts[bi] -= 1

    yield from rec(0)
