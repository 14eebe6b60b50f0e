"""Exact cover by dancing links (Algorithm X).

Items are integers 0..item_count-1; an option is an ascending tuple of
items. A solution is a set of options partitioning the item set. The
search is depth-first over Knuth's doubly linked sparse structure, always
branching on an item with the fewest remaining options (ties broken by
lowest item index) and trying options in ascending index order, so the
solution sequence is deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import SteinerError


@dataclass(frozen=True)
class ExactCoverInstance:
    item_count: int
    options: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        for opt in self.options:
            if not opt:
                raise SteinerError("empty option")
            prev = -1
            for x in opt:
                if x <= prev:
                    raise SteinerError(f"option not strictly ascending: {opt}")
                prev = x
            if prev >= self.item_count:
                raise SteinerError(
                    f"option {opt} references item {prev} >= item_count = {self.item_count}"
                )

    @classmethod
    def build(cls, item_count: int, options: Sequence[Sequence[int]]) -> "ExactCoverInstance":
        return cls(item_count, tuple(tuple(o) for o in options))


@dataclass(frozen=True)
class CoverSolution:
    option_indices: tuple[int, ...]


@dataclass(frozen=True)
class SearchStats:
    nodes: int
    solutions: int
    completed: bool


def solve(
    inst: ExactCoverInstance,
    max_solutions: int | None = None,
    node_limit: int | None = None,
) -> tuple[list[CoverSolution], SearchStats]:
    """Enumerate exact covers; one node = one option-selection trial.

    Stops early when `max_solutions` have been found or `node_limit` trials
    have been spent; `completed` in the stats is True only when the search
    space was exhausted under both limits.
    """
    return _search(inst, max_solutions, node_limit, collect=True)


def count_solutions(
    inst: ExactCoverInstance, node_limit: int | None = None
) -> SearchStats:
    """Count all exact covers without storing them."""
    _, stats = _search(inst, None, node_limit, collect=False)
    return stats


def _search(
    inst: ExactCoverInstance,
    max_solutions: int | None,
    node_limit: int | None,
    collect: bool,
) -> tuple[list[CoverSolution], SearchStats]:
    n = inst.item_count
    opts = inst.options
    root = n
    left = list(range(-1, n))
    left[0] = root
    right = list(range(1, n + 2))
    right[root] = 0 if n else root
    if n:
        left[0] = root
        right[n - 1] = root
    # column headers occupy node ids 0..n-1; data nodes follow
    up = list(range(n + 1))
    down = list(range(n + 1))
    colof = list(range(n + 1))
    rowof = [-1] * (n + 1)
    size = [0] * n
    option_nodes: list[list[int]] = []
    for oi, opt in enumerate(opts):
        ids = []
        for item in opt:
            nid = len(up)
            # append at the bottom of column `item`
            up.append(up[item])
            down.append(item)
            down[up[item]] = nid
            up[item] = nid
            colof.append(item)
            rowof.append(oi)
            size[item] += 1
            ids.append(nid)
        option_nodes.append(ids)

    def cover(c: int) -> None:
        right[left[c]] = right[c]
        left[right[c]] = left[c]
        i = down[c]
        while i != c:
            for j in option_nodes[rowof[i]]:
                if j != i:
                    up[down[j]] = up[j]
                    down[up[j]] = down[j]
                    size[colof[j]] -= 1
            i = down[i]

    def uncover(c: int) -> None:
        i = up[c]
        while i != c:
            for j in reversed(option_nodes[rowof[i]]):
                if j != i:
                    size[colof[j]] += 1
                    up[down[j]] = j
                    down[up[j]] = j
            i = up[i]
        right[left[c]] = c
        left[right[c]] = c

    solutions: list[CoverSolution] = []
    found = 0
    nodes = 0
    completed = True

    def record(stack: list[tuple[int, int]]) -> None:
        nonlocal found
        chosen = tuple(sorted(rowof[node] for _, node in stack))
        _validate_cover(inst, chosen)
        found += 1
        if collect:
            solutions.append(CoverSolution(chosen))

    if right[root] == root:
        # no items: the empty selection is the unique cover
        record([])
        return solutions, SearchStats(0, found, True)

    stack: list[tuple[int, int]] = []
    # choose first column
    best = _choose(right, size, root)
    cover(best)
    node = down[best]
    while True:
        if node == best:
            # column exhausted: backtrack
            uncover(best)
            if not stack:
                break
            best, node = stack.pop()
            for j in reversed(option_nodes[rowof[node]]):
                if j != node:
                    uncover(colof[j])
            node = down[node]
            continue
        if node_limit is not None and nodes >= node_limit:
            completed = False
            break
        nodes += 1
        for j in option_nodes[rowof[node]]:
            if j != node:
                cover(colof[j])
        stack.append((best, node))
        if right[root] == root:
            record(stack)
            if max_solutions is not None and found >= max_solutions:
                completed = False
                break
            best, node = stack.pop()
            for j in reversed(option_nodes[rowof[node]]):
                if j != node:
                    uncover(colof[j])
            node = down[node]
            continue
        best = _choose(right, size, root)
        cover(best)
        node = down[best]

    return solutions, SearchStats(nodes, found, completed)


def _choose(right: list[int], size: list[int], root: int) -> int:
    best = right[root]
    bsize = size[best]
    j = right[best]
    while j != root:
        if size[j] < bsize:
            best, bsize = j, size[j]
        j = right[j]
    return best


def _validate_cover(inst: ExactCoverInstance, chosen: Sequence[int]) -> None:
    # cheap always-on re-validation of an emitted solution
    hit = bytearray(inst.item_count)
    for oi in chosen:
        for item in inst.options[oi]:
            if hit[item]:
                raise AssertionError(f"solver emitted overlapping cover at item {item}")
            hit[item] = 1
    if hit.count(1) != inst.item_count:
        raise AssertionError("solver emitted incomplete cover")
