"""Orbits of a permutation group acting on fixed-size point subsets."""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Iterable, Sequence

from .combin import iter_subsets_capped, subset_rank
from .errors import BudgetExceeded
from .perms import PermGroup, Permutation

DEFAULT_SUBSET_BUDGET = 10**8


def apply_to_subset(p: Permutation, subset: Sequence[int]) -> tuple[int, ...]:
    imgs = p.images
    return tuple(sorted(imgs[x] for x in subset))


@dataclass(frozen=True)
class SubsetOrbit:
    """One orbit of s-subsets; the representative is the lex-least member."""

    representative: tuple[int, ...]
    size: int
    members: tuple[tuple[int, ...], ...] | None = None


@dataclass(frozen=True)
class OrbitTransversal:
    n: int
    s: int
    orbits: tuple[SubsetOrbit, ...]

    def __len__(self) -> int:
        return len(self.orbits)

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(o.size for o in self.orbits)


def subset_orbit(g: PermGroup, subset: Sequence[int]) -> SubsetOrbit:
    """Expand one orbit by breadth-first closure under the generators."""
    start = tuple(sorted(subset))
    for x in start:
        if not 0 <= x < g.degree:
            raise ValueError(f"point {x} out of range for degree {g.degree}")
    if len(set(start)) != len(start):
        raise ValueError(f"subset has repeated points: {subset}")
    gens = [p.images for p in g.generators]
    seen = {start}
    frontier = [start]
    while frontier:
        new = []
        for x in frontier:
            for imgs in gens:
                y = tuple(sorted(imgs[i] for i in x))
                if y not in seen:
                    seen.add(y)
                    new.append(y)
        frontier = new
    members = tuple(sorted(seen))
    return SubsetOrbit(members[0], len(members), members)


def orbit_transversal(
    g: PermGroup,
    n: int,
    s: int,
    budget: int = DEFAULT_SUBSET_BUDGET,
    keep_members: bool = False,
) -> OrbitTransversal:
    """One orbit per s-subset of {0..n-1}, ordered by lex-least representative."""
    transversal, _ = _transversal_impl(g, n, s, None, 0, budget, keep_members, False)
    return transversal


def orbit_transversal_indexed(
    g: PermGroup,
    n: int,
    s: int,
    blocks: Sequence[Sequence[int]] | None = None,
    cap: int = 0,
    budget: int = DEFAULT_SUBSET_BUDGET,
) -> tuple[OrbitTransversal, list[int]]:
    """Transversal plus a rank-indexed orbit lookup table.

    The returned list maps colex rank of an s-subset to its orbit index,
    -1 for subsets outside the candidate set. With `blocks`/`cap` given,
    candidates are the subsets meeting every block in at most `cap` points
    (the candidate set must be G-invariant, which holds whenever the blocks
    form a G-invariant design; this is asserted via the size accounting).
    """
    return _transversal_impl(g, n, s, blocks, cap, budget, False, True)


def _transversal_impl(
    g: PermGroup,
    n: int,
    s: int,
    blocks: Sequence[Sequence[int]] | None,
    cap: int,
    budget: int,
    keep_members: bool,
    want_index: bool,
) -> tuple[OrbitTransversal, list[int]]:
    if g.degree != n:
        raise ValueError(f"group degree {g.degree} != n = {n}")
    if s > n:
        raise ValueError(f"subset size {s} exceeds n = {n}")
    space = comb(n, s)
    if space > budget:
        raise BudgetExceeded(
            f"C({n},{s}) = {space} subsets exceeds budget {budget}; "
            "prescribe a larger group or a smaller instance"
        )
    gens = [p.images for p in g.generators]
    visited = bytearray((space + 7) // 8)
    index: list[int] = [-1] * space if want_index else []
    orbits: list[SubsetOrbit] = []
    candidates = 0
    covered = 0
    if blocks is None:
        candidate_iter: Iterable[tuple[int, ...]] = iter_subsets_capped(n, s, (), 0)
    else:
        candidate_iter = iter_subsets_capped(n, s, blocks, cap)
    for subset in candidate_iter:
        candidates += 1
        r = subset_rank(subset)
        if visited[r >> 3] & (1 << (r & 7)):
            continue
        # expand this orbit; `subset` is its lex-least member
        seen = {subset}
        frontier = [subset]
        oi = len(orbits)
        visited[r >> 3] |= 1 << (r & 7)
        if want_index:
            index[r] = oi
        while frontier:
            new = []
            for x in frontier:
                for imgs in gens:
                    y = tuple(sorted(imgs[i] for i in x))
                    if y not in seen:
                        seen.add(y)
                        new.append(y)
                        ry = subset_rank(y)
                        visited[ry >> 3] |= 1 << (ry & 7)
                        if want_index:
                            index[ry] = oi
            frontier = new
        covered += len(seen)
        orbits.append(
            SubsetOrbit(
                subset,
                len(seen),
                tuple(sorted(seen)) if keep_members else None,
            )
        )
    # every candidate must have been covered exactly once in total
    if covered != candidates:
        raise AssertionError(
            f"orbit sizes sum to {covered}, but {candidates} candidate subsets "
            "were enumerated; candidate set is not group-invariant"
        )
    if blocks is None and covered != space:
        raise AssertionError(f"orbit sizes sum to {covered} != C({n},{s}) = {space}")
    return OrbitTransversal(n, s, tuple(orbits)), index


def expand_orbit(g: PermGroup, orbit: SubsetOrbit) -> tuple[tuple[int, ...], ...]:
    """Materialize an orbit's members (re-expands when not stored)."""
    if orbit.members is not None:
        return orbit.members
    full = subset_orbit(g, orbit.representative)
    if full.size != orbit.size:
        raise AssertionError(
            f"re-expanded orbit of {orbit.representative} has size {full.size}, "
            f"expected {orbit.size}"
        )
    return full.members  # type: ignore[return-value]
