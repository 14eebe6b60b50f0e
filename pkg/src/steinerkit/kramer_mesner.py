"""Kramer-Mesner orbit incidence matrices and the lambda=1 search.

Rows are indexed by G-orbits of t-subsets, columns by G-orbits of
k-subsets; entry (i,j) counts the blocks of column orbit j containing the
representative of row orbit i. A Steiner system with G as automorphism
group is a 0/1 column selection with all row sums equal to 1, which is an
exact cover problem once columns with an entry >= 2 are discarded.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb

import numpy as np

from .combin import subset_rank
from .designs import Design, Params, verify
from .errors import SteinerError
from .exact_cover import ExactCoverInstance, SearchStats, solve
from .orbits import (
    DEFAULT_SUBSET_BUDGET,
    OrbitTransversal,
    expand_orbit,
    orbit_transversal,
    orbit_transversal_indexed,
)
from .perms import PermGroup


@dataclass(frozen=True)
class KMMatrix:
    rows: OrbitTransversal
    cols: OrbitTransversal
    entries: np.ndarray  # shape (len(rows), len(cols)), dtype int64

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.rows), len(self.cols))


def build_km(
    g: PermGroup,
    v: int,
    t: int,
    k: int,
    budget: int = DEFAULT_SUBSET_BUDGET,
) -> KMMatrix:
    """Build the orbit incidence matrix for (G, t, k, v).

    Every t-subset of every block of every column orbit is attributed to
    its row orbit via a rank-indexed lookup; dividing the pair count by the
    row orbit length gives the entry. The double-counting identity
    sum_i rowsize(i)*A[i,j] = colsize(j)*C(k,t) is asserted per column.
    """
    if not t < k <= v:
        raise ValueError(f"need t < k <= v, got t={t} k={k} v={v}")
    rows, row_index = orbit_transversal_indexed(g, v, t, budget=budget)
    cols = orbit_transversal(g, v, k, budget=budget)
    entries = attribute_entries(g, cols, row_index, rows.sizes, t, len(rows))
    return KMMatrix(rows, cols, entries)


def attribute_entries(
    g: PermGroup,
    cols: OrbitTransversal,
    row_index: list[int],
    row_sizes: tuple[int, ...],
    t: int,
    n_rows: int,
) -> np.ndarray:
    kk = cols.s
    per_block = comb(kk, t)
    entries = np.zeros((n_rows, len(cols.orbits)), dtype=np.int64)
    for j, orbit in enumerate(cols.orbits):
        acc: dict[int, int] = {}
        for member in expand_orbit(g, orbit):
            for sub in combinations(member, t):
                i = row_index[subset_rank(sub)]
                if i < 0:
                    raise AssertionError(
                        f"t-subset {sub} of block {member} is outside the row universe"
                    )
                acc[i] = acc.get(i, 0) + 1
        total = 0
        for i, pairs in acc.items():
            if pairs % row_sizes[i]:
                raise AssertionError(
                    f"pair count {pairs} not divisible by row orbit size {row_sizes[i]}"
                )
            entries[i, j] = pairs // row_sizes[i]
            total += pairs
        if total != orbit.size * per_block:
            raise AssertionError(
                f"double counting failed on column {j}: {total} != "
                f"{orbit.size} * {per_block}"
            )
    return entries


def steiner_reduce(m: KMMatrix) -> tuple[ExactCoverInstance, list[int]]:
    """Drop columns with an entry >= 2 and emit the exact cover instance.

    Returns the instance plus the map from option index back to the
    original column index. An empty instance is legal and means no design
    exists with this group.
    """
    keep = np.flatnonzero((m.entries < 2).all(axis=0))
    options = []
    for j in keep:
        items = np.flatnonzero(m.entries[:, j]).tolist()
        options.append(tuple(int(i) for i in items))
    inst = ExactCoverInstance(len(m.rows), tuple(options))
    return inst, [int(j) for j in keep]


def km_search(
    g: PermGroup,
    v: int,
    t: int,
    k: int,
    max_solutions: int | None = None,
    node_limit: int | None = None,
    budget: int = DEFAULT_SUBSET_BUDGET,
) -> tuple[list[Design], SearchStats]:
    """All G-invariant S(t,k,v) designs reachable under the given limits.

    Each cover solution expands to the union of its column orbits; every
    returned design is re-verified as an S(t,k,v).
    """
    matrix = build_km(g, v, t, k, budget=budget)
    inst, col_map = steiner_reduce(matrix)
    sols, stats = solve(inst, max_solutions=max_solutions, node_limit=node_limit)
    designs = []
    params = Params(t, k, v)
    for sol in sols:
        blocks: list[tuple[int, ...]] = []
        for oi in sol.option_indices:
            blocks.extend(expand_orbit(g, matrix.cols.orbits[col_map[oi]]))
        design = Design(v, blocks)
        result = verify(design, params)
        if not result.valid:
            raise SteinerError(
                f"search produced an invalid design: witness {result.witness} "
                f"covered {result.coverage} times"
            )
        designs.append(design)
    return designs, stats
