"""Isomorphism testing, automorphism groups and non-isomorphic filtering.

Designs are compared directly through their point-block incidence
structure: relabeling-invariant point keys cut the candidate images, and a
backtracking point-map search with forced-block propagation does the rest.
In a design where no two blocks share m or more points, any m mapped
points of a block pin down the image block, so partial maps collapse
quickly once they reach that threshold (m = t for a Steiner t-design).
"""

from __future__ import annotations

import hashlib
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from math import comb

from .designs import Design, derived
from .errors import BudgetExceeded
from .perms import PermGroup, Permutation, identity, is_invariant

DEFAULT_NODE_CAP = 5_000_000

# cost gates for the more expensive point keys (all iso-invariant quantities)
_BLOCK_PAIR_GATE = 10_000_000
_DERIVED_KEY_MAX_V = 60


@dataclass(frozen=True)
class Fingerprint:
    """Relabeling-invariant summary; equal fingerprints are necessary but
    not sufficient for isomorphism."""

    v: int
    k: int
    b: int
    degree_multiset: tuple[tuple[int, int], ...]
    intersection_distribution: tuple[tuple[int, int], ...]
    derived_degree_profile: tuple[tuple[tuple[int, int], ...], ...]
    digest: bytes

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Fingerprint) and self.digest == other.digest

    def __hash__(self) -> int:
        return hash(self.digest)


@dataclass(frozen=True)
class IsoCertificate:
    mapping: Permutation | None

    def __bool__(self) -> bool:
        return self.mapping is not None


def _point_degrees(d: Design) -> list[int]:
    deg = [0] * d.v
    for blk in d.blocks:
        for p in blk:
            deg[p] += 1
    return deg


def _multiplicities(d: Design, size: int) -> Counter:
    """How many blocks contain each `size`-subset (zero entries absent)."""
    mult: Counter = Counter()
    for blk in d.blocks:
        for sub in combinations(blk, size):
            mult[sub] += 1
    return mult


@lru_cache(maxsize=256)
def _force_threshold(d: Design) -> tuple[int, dict[tuple[int, ...], int]]:
    """Smallest m such that no m-subset lies in two blocks, plus the map
    from m-subsets to their unique block index (empty when blocks of mixed
    sizes make the table unusable)."""
    if not d.blocks:
        return 1, {}
    kmin = min(len(b) for b in d.blocks)
    for m in range(1, kmin + 1):
        table: dict[tuple[int, ...], int] = {}
        clean = True
        for bi, blk in enumerate(d.blocks):
            for sub in combinations(blk, m):
                if sub in table:
                    clean = False
                    break
                table[sub] = bi
            if not clean:
                break
        if clean:
            return m, table
    return kmin + 1, {}


def _intersection_distribution(d: Design) -> tuple[tuple[int, int], ...]:
    """Multiset {|B ∩ B'| : B < B'} as sorted (size, count) pairs.

    Computed from subset multiplicities by inclusion-exclusion rather than
    a quadratic scan over block pairs: the number of ordered block pairs
    sharing a given j-subset is C(multiplicity, 2) summed over j-subsets.
    """
    if not d.blocks:
        return ()
    kmax = max(len(b) for b in d.blocks)
    atleast = [0] * (kmax + 1)  # [j] = pairs sharing >= some j-subset, with multiplicity
    for j in range(1, kmax + 1):
        mult = _multiplicities(d, j)
        s = sum(comb(c, 2) for c in mult.values() if c > 1)
        atleast[j] = s
        if s == 0:
            break
    exact = [0] * (kmax + 1)
    for j in range(kmax, 0, -1):
        over = sum(comb(jp, j) * exact[jp] for jp in range(j + 1, kmax + 1))
        exact[j] = atleast[j] - over
    exact[0] = comb(d.b, 2) - sum(exact[1:])
    return tuple((j, c) for j, c in enumerate(exact) if c > 0)


def _pair_block_table(d: Design) -> dict[tuple[int, int], int] | None:
    """pair -> unique block index, or None unless every pair of points is
    in exactly one block (a 2-Steiner design)."""
    table: dict[tuple[int, int], int] = {}
    for bi, blk in enumerate(d.blocks):
        for sub in combinations(blk, 2):
            if sub in table:
                return None
            table[sub] = bi
    if len(table) != comb(d.v, 2):
        return None
    return table


def _pair_component_key(
    d: Design, table: dict[tuple[int, int], int], x: int, y: int
) -> tuple[int, ...]:
    """Component structure of the two pencils through x and y.

    Every point z outside the block through {x,y} links the block through
    {x,z} with the block through {y,z}; component sizes of that bipartite
    multigraph (counted in points z) generalize the classic cycle
    structure of a pair in a triple system.
    """
    b0 = table[(x, y) if x < y else (y, x)]
    avoid = set(d.blocks[b0])
    parent: dict[int, int] = {}

    def find(a: int) -> int:
        root = a
        while parent.setdefault(root, root) != root:
            root = parent[root]
        while parent[a] != root:
            parent[a], a = root, parent[a]
        return root

    for z in range(d.v):
        if z in avoid or z == x or z == y:
            continue
        bx = table[(x, z) if x < z else (z, x)]
        by = table[(y, z) if y < z else (z, y)]
        ra, rb = find(bx), find(by)
        if ra != rb:
            parent[ra] = rb
    sizes: Counter = Counter()
    for z in range(d.v):
        if z in avoid or z == x or z == y:
            continue
        bx = table[(x, z) if x < z else (z, x)]
        sizes[find(bx)] += 1
    return tuple(sorted(sizes.values()))


def _pair_structure_invariant(d: Design) -> tuple[tuple[int, ...], ...] | None:
    """Design-level multiset of pair component keys (2-Steiner only)."""
    table = _pair_block_table(d)
    if table is None:
        return None
    return tuple(
        sorted(
            _pair_component_key(d, table, x, y)
            for x, y in combinations(range(d.v), 2)
        )
    )


@lru_cache(maxsize=256)
def point_keys(d: Design) -> tuple:
    """Relabeling-invariant key per point, canonically comparable across
    designs.

    Strength escalates with available structure: point degree; the
    intersection profile of block pairs through the point (when the pair
    count is affordable); pair component profiles for 2-Steiner designs;
    derived-design pair invariants for 3-Steiner designs of moderate size.
    Each escalation gate depends only on invariant quantities, so two
    isomorphic designs always take the same path. A final block-signature
    refinement runs to a fixed point.
    """
    deg = _point_degrees(d)
    keys: list = [(deg[p],) for p in range(d.v)]
    point_blocks: list[list[int]] = [[] for _ in range(d.v)]
    for bi, blk in enumerate(d.blocks):
        for p in blk:
            point_blocks[p].append(bi)

    rmax = max(deg) if deg else 0
    if d.blocks and comb(rmax, 2) * d.v <= _BLOCK_PAIR_GATE:
        masks = [0] * d.b
        for bi, blk in enumerate(d.blocks):
            m = 0
            for p in blk:
                m |= 1 << p
            masks[bi] = m
        for p in range(d.v):
            prof: Counter = Counter()
            pb = point_blocks[p]
            for i in range(len(pb)):
                mi = masks[pb[i]]
                for j in range(i + 1, len(pb)):
                    prof[(mi & masks[pb[j]]).bit_count()] += 1
            keys[p] = keys[p] + (tuple(sorted(prof.items())),)

    table = _pair_block_table(d)
    if table is not None:
        for p in range(d.v):
            keys[p] = keys[p] + (
                tuple(
                    sorted(
                        _pair_component_key(d, table, p, q)
                        for q in range(d.v)
                        if q != p
                    )
                ),
            )
    elif d.v <= _DERIVED_KEY_MAX_V and d.blocks:
        triple_steiner = (
            all(len(b) >= 3 for b in d.blocks)
            and sum(comb(len(b), 3) for b in d.blocks) == comb(d.v, 3)
            and max(_multiplicities(d, 3).values()) == 1
        )
        if triple_steiner:
            for p in range(d.v):
                inv = _pair_structure_invariant(derived(d, p))
                keys[p] = keys[p] + (inv if inv is not None else (),)

    while True:
        sigs: list = []
        for p in range(d.v):
            around = tuple(
                sorted(
                    tuple(sorted(keys[q] for q in d.blocks[bi] if q != p))
                    for bi in point_blocks[p]
                )
            )
            sigs.append((keys[p], around))
        if len(set(sigs)) == len(set(keys)):
            break
        keys = sigs
    return tuple(keys)


def fingerprint(d: Design) -> Fingerprint:
    """Invariant fingerprint; isomorphic designs always collide."""
    deg_ms = tuple(sorted(Counter(_point_degrees(d)).items()))
    inter = _intersection_distribution(d)
    pair_mult = _multiplicities(d, 2)
    derived_prof = []
    for p in range(d.v):
        degs: Counter = Counter()
        for q in range(d.v):
            if q != p:
                degs[pair_mult.get((min(p, q), max(p, q)), 0)] += 1
        derived_prof.append(tuple(sorted(degs.items())))
    derived_prof_ms = tuple(sorted(derived_prof))
    sizes = {len(b) for b in d.blocks}
    k = sizes.pop() if len(sizes) == 1 else -1
    extra = tuple(sorted(map(repr, point_keys(d))))
    payload = repr((d.v, k, d.b, deg_ms, inter, derived_prof_ms, extra))
    digest = hashlib.sha256(payload.encode()).digest()
    return Fingerprint(d.v, k, d.b, deg_ms, inter, derived_prof_ms, digest)


class _MapSearch:
    """Backtracking point-map search from design A into design B.

    State is undone via an explicit trail; a node is one candidate-image
    trial. Forced assignments (single remaining candidate) cost no nodes.
    """

    def __init__(self, a: Design, b: Design, node_cap: int):
        self.a = a
        self.b = b
        self.v = a.v
        self.node_cap = node_cap
        self.nodes = 0
        ma, _ = _force_threshold(a)
        mb, tb = _force_threshold(b)
        self.compatible = ma == mb
        self.m_force = mb
        self.force_b = tb
        self.pb_a: list[list[int]] = [[] for _ in range(a.v)]
        for bi, blk in enumerate(a.blocks):
            for p in blk:
                self.pb_a[p].append(bi)
        self.bmask_b = []
        for blk in b.blocks:
            m = 0
            for p in blk:
                m |= 1 << p
            self.bmask_b.append(m)
        self.block_set_b = b.block_set

    def _init_masks(self) -> list[int] | None:
        ka = point_keys(self.a)
        kb = point_keys(self.b)
        if sorted(map(repr, ka)) != sorted(map(repr, kb)):
            return None
        by_key: dict[str, int] = {}
        for q, key in enumerate(kb):
            r = repr(key)
            by_key[r] = by_key.get(r, 0) | (1 << q)
        masks = []
        for p in range(self.v):
            m = by_key.get(repr(ka[p]), 0)
            if m == 0:
                return None
            masks.append(m)
        return masks

    def run(
        self,
        first_only: bool,
        quotient: tuple[tuple[int, ...], ...] | None = None,
    ) -> list[list[int]]:
        """Enumerate block-preserving point maps A -> B.

        With `quotient` (the element list of a group of automorphisms of
        B), branch images of the points 0, 1, 2, ... are restricted to
        orbit representatives under the chain of pointwise stabilizers, so
        the maps found are coset representatives: composing them with the
        quotient group on the left regenerates every map.
        """
        if not self.compatible:
            return []
        masks = self._init_masks()
        if masks is None:
            return []
        v = self.v
        a_blocks = self.a.blocks
        found: list[list[int]] = []
        mapping = [-1] * v
        self._used = 0
        fullmask = (1 << v) - 1
        blk_cnt = [0] * self.a.b
        blk_img = [-1] * self.a.b
        img_used: set[int] = set()
        trail: list[tuple[int, int]] = []  # (point, previous candidate mask)

        def map_point(x: int, qx: int, frame_points: list[int]) -> None:
            mapping[x] = qx
            self._used |= 1 << qx
            for bi in self.pb_a[x]:
                blk_cnt[bi] += 1
            frame_points.append(x)

        def assign(p: int, q: int, fp: list[int], fb: list[int]) -> bool:
            map_point(p, q, fp)
            pending = [(p, q)]
            while pending:
                p0, q0 = pending.pop()
                for bi in self.pb_a[p0]:
                    tgt = blk_img[bi]
                    if tgt >= 0:
                        if not (1 << q0) & self.bmask_b[tgt]:
                            return False
                        continue
                    if blk_cnt[bi] < self.m_force or not self.force_b:
                        continue
                    blk = a_blocks[bi]
                    mapped = [x for x in blk if mapping[x] >= 0]
                    img = tuple(sorted(mapping[x] for x in mapped[: self.m_force]))
                    tgt = self.force_b.get(img, -1)
                    if tgt < 0:
                        return False
                    if tgt in img_used:
                        return False
                    tmask = self.bmask_b[tgt]
                    for x in mapped:
                        if not (1 << mapping[x]) & tmask:
                            return False
                    blk_img[bi] = tgt
                    img_used.add(tgt)
                    fb.append(bi)
                    for x in blk:
                        if mapping[x] < 0 and masks[x] & ~tmask:
                            trail.append((x, masks[x]))
                            masks[x] &= tmask
                # propagate points with a single remaining candidate
                for x in range(v):
                    if mapping[x] < 0:
                        free = masks[x] & ~self._used
                        if free == 0:
                            return False
                        if free & (free - 1) == 0:
                            qx = free.bit_length() - 1
                            map_point(x, qx, fp)
                            pending.append((x, qx))
            return True

        def undo(points: list[int], blocks_touched: list[int], tpos: int) -> None:
            for x in points:
                for bi in self.pb_a[x]:
                    blk_cnt[bi] -= 1
                self._used &= ~(1 << mapping[x])
                mapping[x] = -1
            for bi in blocks_touched:
                img_used.discard(blk_img[bi])
                blk_img[bi] = -1
            while len(trail) > tpos:
                x, m0 = trail.pop()
                masks[x] = m0

        def select() -> int:
            best, bcount = -1, v + 2
            for x in range(v):
                if mapping[x] < 0:
                    c = (masks[x] & ~self._used).bit_count()
                    if c < bcount:
                        best, bcount = x, c
                        if c <= 1:
                            break
            return best

        def orbit_min(elements: tuple[tuple[int, ...], ...], y: int) -> int:
            low = y
            seen = {y}
            frontier = [y]
            while frontier:
                nxt = []
                for z in frontier:
                    for g in elements:
                        w = g[z]
                        if w not in seen:
                            seen.add(w)
                            nxt.append(w)
                            if w < low:
                                low = w
                frontier = nxt
            return low

        class Stop(Exception):
            pass

        def rec(stab: tuple[tuple[int, ...], ...] | None, qpos: int) -> None:
            # consume already-mapped base points: a normalized map's image
            # must be the orbit representative under the current stabilizer
            while stab is not None and len(stab) > 1 and qpos < v:
                if mapping[qpos] < 0:
                    break
                y = mapping[qpos]
                if orbit_min(stab, y) != y:
                    return
                stab = tuple(g for g in stab if g[y] == y)
                qpos += 1
            if stab is not None and len(stab) <= 1:
                stab = None
            if self._used == fullmask:
                perm = mapping[:]
                if self._verify(perm):
                    found.append(perm)
                    if first_only:
                        raise Stop
                return
            if stab is not None:
                p = qpos
                free = masks[p] & ~self._used
                cands = []
                m = free
                while m:
                    qbit = m & -m
                    m &= m - 1
                    q = qbit.bit_length() - 1
                    if orbit_min(stab, q) == q:
                        cands.append(q)
            else:
                p = select()
                free = masks[p] & ~self._used
                cands = []
                m = free
                while m:
                    qbit = m & -m
                    m &= m - 1
                    cands.append(qbit.bit_length() - 1)
            for q in cands:
                self.nodes += 1
                if self.nodes > self.node_cap:
                    raise BudgetExceeded(
                        f"isomorphism search exceeded {self.node_cap} nodes"
                    )
                fp: list[int] = []
                fb: list[int] = []
                tpos = len(trail)
                if assign(p, q, fp, fb):
                    if stab is not None:
                        rec(tuple(g for g in stab if g[q] == q), qpos + 1)
                    else:
                        rec(None, qpos)
                undo(fp, fb, tpos)

        if v == 0:
            return [[]]
        try:
            rec(quotient if quotient and len(quotient) > 1 else None, 0)
        except Stop:
            pass
        return found

    def _verify(self, perm: list[int]) -> bool:
        for blk in self.a.blocks:
            if tuple(sorted(perm[x] for x in blk)) not in self.block_set_b:
                return False
        return True


def are_isomorphic(
    a: Design, b: Design, node_cap: int = DEFAULT_NODE_CAP
) -> IsoCertificate:
    """Explicit point mapping carrying blocks of `a` onto blocks of `b`,
    or a certified absence. Found mappings are always re-verified
    block-for-block before being returned."""
    if a.v != b.v or a.b != b.b:
        return IsoCertificate(None)
    if sorted(map(len, a.blocks)) != sorted(map(len, b.blocks)):
        return IsoCertificate(None)
    if a.blocks == b.blocks:
        return IsoCertificate(identity(a.v))
    maps = _MapSearch(a, b, node_cap).run(first_only=True)
    if not maps:
        return IsoCertificate(None)
    return IsoCertificate(Permutation(tuple(maps[0])))


def automorphism_group(
    d: Design, cap: int = DEFAULT_NODE_CAP, known: PermGroup | None = None
) -> tuple[PermGroup, int]:
    """Full automorphism group as (group, order).

    All completions of key-compatible partial maps are enumerated; a
    greedily reduced generator set is checked to regenerate exactly the
    maps found. Passing a `known` subgroup of automorphisms (for example
    the group a design was constructed with) quotients the search by its
    stabilizer chain: only coset representatives are searched for, which
    is what makes highly regular designs tractable.
    """
    quotient = None
    base: list[tuple[int, ...]] = []
    if known is not None:
        if known.degree != d.v:
            raise ValueError(
                f"known group degree {known.degree} != design points {d.v}"
            )
        if not is_invariant(d, known):
            raise ValueError("known group is not a group of automorphisms")
        base = [p.images for p in known.elements()]
        quotient = tuple(base)
    reps = _MapSearch(d, d, cap).run(first_only=False, quotient=quotient)
    if quotient:
        all_images = {
            tuple(g[r[x]] for x in range(d.v)) for g in base for r in reps
        }
    else:
        all_images = {tuple(r) for r in reps}
    order = len(all_images)
    gens: list[Permutation] = []
    group = PermGroup.trivial(d.v) if known is None else known
    closure = {p.images for p in group.elements(cap=max(order, 1))}
    if known is not None:
        gens = list(known.generators)
    for images in sorted(all_images):
        if images in closure:
            continue
        gens.append(Permutation(images))
        group = PermGroup(tuple(gens))
        closure = {p.images for p in group.elements(cap=max(order, 1))}
    if len(closure) != order:
        raise AssertionError(
            f"generator closure has {len(closure)} elements, search found {order}"
        )
    return group, order


def filter_nonisomorphic(
    designs: list[Design], node_cap: int = DEFAULT_NODE_CAP
) -> list[Design]:
    """First-seen representatives: group by fingerprint, then confirm
    pairwise within each group."""
    reps: list[Design] = []
    buckets: dict[bytes, list[int]] = {}
    for d in designs:
        fp = fingerprint(d).digest
        bucket = buckets.setdefault(fp, [])
        for ri in bucket:
            if are_isomorphic(d, reps[ri], node_cap=node_cap):
                break
        else:
            bucket.append(len(reps))
            reps.append(d)
    return reps
