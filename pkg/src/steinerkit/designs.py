"""Designs, parameter arithmetic, admissibility, verification and derivation.

A Steiner system S(t,k,v) has v points and k-element blocks such that every
t-subset of points lies in exactly one block. Points are 0-based throughout;
when a design has a distinguished point "infinity" it is always index v-1.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from math import comb
from typing import Iterable, Sequence

from .combin import subset_rank, subset_unrank
from .errors import SteinerError
from .orbits import subset_orbit
from .perms import PermGroup, Permutation, perm_order
from itertools import combinations


@dataclass(frozen=True)
class Params:
    """Steiner parameters (t, k, v): strength, block size, point count."""

    t: int
    k: int
    v: int

    def __post_init__(self) -> None:
        if not (0 <= self.t <= self.k <= self.v):
            raise ValueError(f"need 0 <= t <= k <= v, got {self}")

    def __str__(self) -> str:
        return f"S({self.t},{self.k},{self.v})"

    def derived(self) -> "Params":
        return Params(self.t - 1, self.k - 1, self.v - 1)

    def extended(self) -> "Params":
        return Params(self.t + 1, self.k + 1, self.v + 1)


class Design:
    """A block design: point count plus a lexicographically sorted block list.

    Blocks are strictly ascending tuples of point indices; duplicates are
    rejected at construction.
    """

    __slots__ = ("v", "blocks", "__dict__")

    def __init__(self, v: int, blocks: Iterable[Sequence[int]]):
        blks = []
        for b in blocks:
            tb = tuple(b)
            if any(tb[i] >= tb[i + 1] for i in range(len(tb) - 1)):
                raise ValueError(f"block not strictly ascending: {tb}")
            if tb and not (0 <= tb[0] and tb[-1] < v):
                raise ValueError(f"block {tb} out of range for v={v}")
            blks.append(tb)
        blks.sort()
        for a, b in zip(blks, blks[1:]):
            if a == b:
                raise ValueError(f"duplicate block: {a}")
        self.v = v
        self.blocks = tuple(blks)

    @cached_property
    def block_set(self) -> frozenset[tuple[int, ...]]:
        return frozenset(self.blocks)

    @property
    def b(self) -> int:
        return len(self.blocks)

    def block_size(self) -> int:
        """Common block size; raises if blocks are not uniform."""
        sizes = {len(b) for b in self.blocks}
        if len(sizes) > 1:
            raise SteinerError(f"non-uniform block sizes: {sorted(sizes)}")
        return sizes.pop() if sizes else 0

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Design)
            and self.v == other.v
            and self.blocks == other.blocks
        )

    def __hash__(self) -> int:
        return hash((self.v, self.blocks))

    def __repr__(self) -> str:
        return f"Design(v={self.v}, b={self.b})"


@dataclass(frozen=True)
class AdmissibilityReport:
    params: Params
    divisibility_ok: tuple[bool, ...]
    fisher_ok: bool
    block_count: int | None
    admissible: bool


@dataclass(frozen=True)
class VerificationResult:
    valid: bool
    witness: tuple[int, ...] | None = None
    coverage: int | None = None

    def __bool__(self) -> bool:
        return self.valid


def block_count(params: Params) -> int:
    """Number of blocks C(v,t)/C(k,t), exact integer arithmetic."""
    t, k, v = params.t, params.k, params.v
    num, den = comb(v, t), comb(k, t)
    if num % den:
        raise SteinerError(
            f"{params}: C({v},{t}) = {num} is not divisible by C({k},{t}) = {den}"
        )
    return num // den


def divisibility_conditions(params: Params) -> tuple[bool, ...]:
    """The flag C(k-i,t-i) | C(v-i,t-i) for each i in 0..t."""
    t, k, v = params.t, params.k, params.v
    return tuple(
        comb(v - i, t - i) % comb(k - i, t - i) == 0 for i in range(t + 1)
    )


def fisher_condition(params: Params) -> bool:
    """Fisher's inequality on the derived design at strength 2.

    Derive t-2 times, then require blocks >= points for the resulting
    2-design. Vacuously true for t < 2 and for the trivial complete design
    (points = block size). Compares C(v',2) >= v'*C(k',2) so it needs no
    divisibility.
    """
    t, k, v = params.t, params.k, params.v
    if t < 2:
        return True
    d = t - 2
    k2, v2 = k - d, v - d
    if v2 <= k2:
        return True
    return comb(v2, 2) >= v2 * comb(k2, 2)


def admissible(params: Params) -> AdmissibilityReport:
    div = divisibility_conditions(params)
    fisher = fisher_condition(params)
    bc = block_count(params) if all(div) else None
    return AdmissibilityReport(params, div, fisher, bc, all(div) and fisher)


def admissible_table(
    t: int,
    v_max: int,
    k_range: range | tuple[int, int] | None = None,
) -> list[AdmissibilityReport]:
    """All admissible nontrivial (t,k,v) with k < v <= v_max, sorted by (v,k).

    With t=3, v_max=50 this reproduces the known table of 25 admissible
    Steiner 3-design parameter sets.
    """
    if t < 2:
        raise ValueError("admissibility table needs strength t >= 2")
    if k_range is None:
        ks: Sequence[int] = range(t + 1, v_max)
    elif isinstance(k_range, tuple):
        ks = range(k_range[0], k_range[1] + 1)
    else:
        ks = k_range
    rows = []
    for v in range(t, v_max + 1):
        for k in ks:
            if not t <= k < v:
                continue
            report = admissible(Params(t, k, v))
            if report.admissible:
                rows.append(report)
    rows.sort(key=lambda r: (r.params.v, r.params.k))
    return rows


def verify(design: Design, params: Params) -> VerificationResult:
    """Check that every t-subset of points lies in exactly one block.

    Counts t-subsets block by block (O(b * C(k,t)) work) into a flat table
    indexed by colex rank. On failure the witness is the first bad t-subset
    in colex order, with its exact coverage count.
    """
    t, k, v = params.t, params.k, params.v
    if design.v != v:
        raise SteinerError(f"design has {design.v} points, expected {v}")
    for blk in design.blocks:
        if len(blk) != k:
            raise SteinerError(f"block {blk} has size {len(blk)}, expected {k}")
    space = comb(v, t)
    counts = bytearray(space)
    for blk in design.blocks:
        for sub in combinations(blk, t):
            r = subset_rank(sub)
            if counts[r] < 255:
                counts[r] += 1
    if design.b * comb(k, t) == space and counts.count(1) == space:
        return VerificationResult(True)
    # find the first rank covered != once
    bad = -1
    for r in range(space):
        if counts[r] != 1:
            bad = r
            break
    witness = subset_unrank(bad, t)
    cov = counts[bad]
    if cov == 255:  # saturated; recount exactly
        wset = set(witness)
        cov = sum(1 for blk in design.blocks if wset.issubset(blk))
    return VerificationResult(False, witness, cov)


def derived(design: Design, point: int) -> Design:
    """Blocks through `point` with the point deleted; remaining points
    relabeled to 0..v-2 preserving order."""
    if not 0 <= point < design.v:
        raise ValueError(f"point {point} out of range for v={design.v}")
    out = []
    for blk in design.blocks:
        if point in blk:
            out.append(tuple(x if x < point else x - 1 for x in blk if x != point))
    return Design(design.v - 1, out)


def design_from_orbits(
    g: PermGroup, base_blocks: Sequence[Sequence[int]], v: int
) -> Design:
    """Union of the G-orbits of the base blocks.

    Orbit unions of a Steiner construction are disjoint, so any repeated
    block (across orbits, or a base block recurring in an earlier orbit) is
    an input error, never silently deduplicated.
    """
    if g.degree != v:
        raise ValueError(f"group degree {g.degree} != v = {v}")
    seen: set[tuple[int, ...]] = set()
    blocks: list[tuple[int, ...]] = []
    for base in base_blocks:
        orb = subset_orbit(g, base)
        assert orb.members is not None
        for m in orb.members:
            if m in seen:
                raise SteinerError(
                    f"duplicate block {m} (orbit of base block {tuple(sorted(base))} "
                    "collides with an earlier orbit)"
                )
            seen.add(m)
        blocks.extend(orb.members)
    return Design(v, blocks)


def is_rotational(design: Design, params: Params, candidate: Permutation) -> bool:
    """True iff `candidate` is an automorphism with exactly one fixed point
    and order v-1 (the defining property of a rotational design)."""
    if candidate.degree != design.v:
        raise ValueError(
            f"permutation degree {candidate.degree} != design points {design.v}"
        )
    if design.v != params.v:
        raise SteinerError(f"design has {design.v} points, expected {params.v}")
    imgs = candidate.images
    blockset = design.block_set
    for blk in design.blocks:
        if tuple(sorted(imgs[x] for x in blk)) not in blockset:
            return False
    fixed = sum(1 for i in range(design.v) if imgs[i] == i)
    return fixed == 1 and perm_order(candidate) == design.v - 1
