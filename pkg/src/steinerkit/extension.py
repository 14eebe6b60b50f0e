"""Extend a G-invariant S(t,k,v) to S(t+1,k+1,v+1) through a new point.

Every block of the base design gains the new point infinity, so the blocks
through infinity are fixed; the remaining blocks of an extension form
complete G-orbits of (k+1)-subsets of the old points. Candidate orbits
whose blocks contain a (t+1)-subset already covered inside a base block
are discarded, as are orbits covering some (t+1)-subset twice; what is
left is an exact cover problem over the orbits of uncovered (t+1)-subsets.

The same operation applies unchanged at higher strengths: extending an
S(3,k,v) to strength 4 just means t=3 here.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb

import numpy as np

from .designs import Design, Params, derived, verify
from .errors import SteinerError
from .exact_cover import ExactCoverInstance, SearchStats, solve
from .kramer_mesner import attribute_entries
from .orbits import (
    DEFAULT_SUBSET_BUDGET,
    OrbitTransversal,
    expand_orbit,
    orbit_transversal_indexed,
    subset_orbit,
)
from .perms import PermGroup, is_invariant


@dataclass(frozen=True)
class ExtensionProblem:
    """A G-invariant S(t,k,v) plus the prescribed extension group.

    The group is stored on v+1 points with infinity (= index v) fixed;
    use `create` to normalize a group given on the old points only.
    """

    base: Design
    group: PermGroup
    params: Params
    infinity: int

    @classmethod
    def create(
        cls, base: Design, group: PermGroup, t: int, k: int
    ) -> "ExtensionProblem":
        v = base.v
        if group.degree == v:
            group = group.extended(v + 1)
        elif group.degree == v + 1:
            if not group.stabilizes(v):
                raise SteinerError(
                    f"extension group must fix the new point {v}"
                )
        else:
            raise SteinerError(
                f"group degree {group.degree} matches neither v={v} nor v+1"
            )
        return cls(base, group, Params(t, k, v), v)

    def old_group(self) -> PermGroup:
        return self.group.restricted(self.params.v)

    def validate(self) -> None:
        result = verify(self.base, self.params)
        if not result.valid:
            raise SteinerError(
                f"base design is not a valid {self.params}: witness "
                f"{result.witness} covered {result.coverage} times"
            )
        if not is_invariant(self.base, self.old_group()):
            raise SteinerError("base design is not invariant under the group")


@dataclass(frozen=True)
class ExtensionReduction:
    """The reduced exact cover instance with its orbit bookkeeping."""

    instance: ExactCoverInstance
    items: OrbitTransversal  # orbits of uncovered (t+1)-subsets
    options: OrbitTransversal  # orbits of admissible (k+1)-subsets, pre-reduction
    option_map: list[int]  # instance option index -> orbit index in `options`
    covered_orbit_count: int  # (t+1)-subset orbits inside base blocks


def extension_instance(
    p: ExtensionProblem,
    budget: int = DEFAULT_SUBSET_BUDGET,
) -> tuple[ExactCoverInstance, ExtensionReduction]:
    p.validate()
    return _reduce(p, budget)


def _reduce(
    p: ExtensionProblem, budget: int
) -> tuple[ExactCoverInstance, ExtensionReduction]:
    t, k, v = p.params.t, p.params.k, p.params.v
    g = p.old_group()
    blocks = p.base.blocks
    # A (t+1)-subset is covered by the base design exactly when it lies
    # inside a block, i.e. meets some block in more than t points; the same
    # cap rule at size k+1 is the orbit discard rule, since the candidate
    # orbits are those whose blocks contain no covered (t+1)-subset.
    items, item_index = orbit_transversal_indexed(
        g, v, t + 1, blocks=blocks, cap=t, budget=budget
    )
    options, _ = orbit_transversal_indexed(
        g, v, k + 1, blocks=blocks, cap=t, budget=budget
    )
    entries = attribute_entries(
        g, options, item_index, items.sizes, t + 1, len(items)
    )
    keep = np.flatnonzero((entries < 2).all(axis=0))
    opts = []
    for j in keep:
        opts.append(tuple(int(i) for i in np.flatnonzero(entries[:, j])))
    inst = ExactCoverInstance(len(items), tuple(opts))
    covered_orbits = _covered_orbit_count(g, p)
    reduction = ExtensionReduction(
        instance=inst,
        items=items,
        options=options,
        option_map=[int(j) for j in keep],
        covered_orbit_count=covered_orbits,
    )
    # item accounting: uncovered orbits + covered orbits = all orbits
    total = comb(v, t + 1)
    if sum(items.sizes) + p.base.b * comb(k, t + 1) != total:
        raise AssertionError("covered/uncovered (t+1)-subset accounting failed")
    return inst, reduction


def _covered_orbit_count(g: PermGroup, p: ExtensionProblem) -> int:
    # orbits of (t+1)-subsets lying inside base blocks; cheap because the
    # covered set is small (b * C(k, t+1) subsets)
    covered: set[tuple[int, ...]] = set()
    for blk in p.base.blocks:
        covered.update(combinations(blk, p.params.t + 1))
    count = 0
    seen: set[tuple[int, ...]] = set()
    for sub in sorted(covered):
        if sub in seen:
            continue
        orb = subset_orbit(g, sub)
        assert orb.members is not None
        seen.update(orb.members)
        count += 1
    return count


def extend_steiner(
    p: ExtensionProblem,
    max_solutions: int | None = None,
    node_limit: int | None = None,
    budget: int = DEFAULT_SUBSET_BUDGET,
) -> tuple[list[Design], SearchStats]:
    """All extensions of the base design reachable under the given limits.

    Each output design consists of the base blocks with infinity adjoined
    plus the expanded orbits of one cover solution; outputs are re-verified
    as S(t+1,k+1,v+1) and checked to derive back to the base at infinity.
    """
    p.validate()
    inst, reduction = _reduce(p, budget)
    sols, stats = solve(inst, max_solutions=max_solutions, node_limit=node_limit)
    g = p.old_group()
    fixed_part = [blk + (p.infinity,) for blk in p.base.blocks]
    out = []
    ext_params = p.params.extended()
    for sol in sols:
        blocks = list(fixed_part)
        for oi in sol.option_indices:
            orbit = reduction.options.orbits[reduction.option_map[oi]]
            blocks.extend(expand_orbit(g, orbit))
        design = Design(p.params.v + 1, blocks)
        result = verify(design, ext_params)
        if not result.valid:
            raise SteinerError(
                f"extension produced an invalid design: witness {result.witness} "
                f"covered {result.coverage} times"
            )
        if derived(design, p.infinity) != p.base:
            raise SteinerError("extension does not derive back to the base design")
        if not is_invariant(design, p.group):
            raise SteinerError("extension is not invariant under the group")
        out.append(design)
    return out, stats
