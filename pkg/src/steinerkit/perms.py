"""Permutations on {0..n-1} and finitely generated permutation groups."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from math import factorial, lcm
from typing import Iterable, Sequence

from .errors import BudgetExceeded, ParseError

DEFAULT_ORDER_CAP = 10**7


@dataclass(frozen=True)
class Permutation:
    """A bijection on {0..degree-1}, stored as its image sequence."""

    images: tuple[int, ...]

    def __post_init__(self) -> None:
        n = len(self.images)
        if sorted(self.images) != list(range(n)):
            raise ValueError(f"not a bijection on 0..{n - 1}: {self.images}")

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, point: int) -> int:
        return self.images[point]

    def __mul__(self, other: "Permutation") -> "Permutation":
        """Composition, self applied first: (p*q)(x) = q(p(x))."""
        return compose(self, other)

    def is_identity(self) -> bool:
        return all(img == i for i, img in enumerate(self.images))

    def cycles(self, include_fixed: bool = False) -> list[tuple[int, ...]]:
        """Cycle decomposition; cycles start at their least point, sorted by it."""
        seen = [False] * self.degree
        out = []
        for i in range(self.degree):
            if seen[i]:
                continue
            cyc = [i]
            seen[i] = True
            j = self.images[i]
            while j != i:
                seen[j] = True
                cyc.append(j)
                j = self.images[j]
            if len(cyc) > 1 or include_fixed:
                out.append(tuple(cyc))
        return out


def identity(degree: int) -> Permutation:
    return Permutation(tuple(range(degree)))


def compose(p: Permutation, q: Permutation) -> Permutation:
    """Apply p, then q."""
    if p.degree != q.degree:
        raise ValueError(f"degree mismatch: {p.degree} != {q.degree}")
    qi = q.images
    return Permutation(tuple(qi[x] for x in p.images))


def inverse(p: Permutation) -> Permutation:
    inv = [0] * p.degree
    for i, img in enumerate(p.images):
        inv[img] = i
    return Permutation(tuple(inv))


def perm_order(p: Permutation) -> int:
    """lcm of cycle lengths."""
    order = 1
    for cyc in p.cycles():
        order = lcm(order, len(cyc))
    return order


def fixed_points(p: Permutation) -> frozenset[int]:
    return frozenset(i for i, img in enumerate(p.images) if img == i)


_CYCLE_RE = re.compile(r"\(([^()]*)\)")
_INT_RE = re.compile(r"-?\d+")


def parse_permutation(text: str, degree: int, one_based: bool = False) -> Permutation:
    """Parse cycle notation '(a,b,c)(d,e)' or an image list 'img: a b c ...'.

    Points absent from the cycles are fixed. Separators inside cycles may
    be commas or whitespace.
    """
    text = text.strip()
    if not text:
        raise ParseError("empty permutation text")
    shift = 1 if one_based else 0
    if text.startswith("img:"):
        body = text[4:].strip()
        imgs = [int(tok) - shift for tok in body.split()]
        if len(imgs) != degree:
            raise ParseError(
                f"image list has {len(imgs)} entries, expected degree {degree}"
            )
        _check_range(imgs, degree, text)
        return Permutation(tuple(imgs))
    if text in ("()", "id"):
        return identity(degree)
    if not text.startswith("("):
        raise ParseError(f"unrecognized permutation syntax: {text!r}")
    stripped = _CYCLE_RE.sub("", text)
    if stripped.strip():
        raise ParseError(f"stray text outside cycles: {stripped.strip()!r}")
    images = list(range(degree))
    seen: set[int] = set()
    for m in _CYCLE_RE.finditer(text):
        pts = [int(tok) - shift for tok in _INT_RE.findall(m.group(1))]
        if not pts:
            continue
        _check_range(pts, degree, text, pos=m.start())
        for p in pts:
            if p in seen:
                raise ParseError(
                    f"point {p + shift} repeated in cycle notation at position {m.start()}"
                )
            seen.add(p)
        for a, b in zip(pts, pts[1:] + pts[:1]):
            images[a] = b
    return Permutation(tuple(images))


def _check_range(pts: Iterable[int], degree: int, text: str, pos: int = 0) -> None:
    for p in pts:
        if not 0 <= p < degree:
            raise ParseError(
                f"point {p} out of range for degree {degree} at position {pos}: {text!r}"
            )


def format_permutation(p: Permutation, one_based: bool = False) -> str:
    shift = 1 if one_based else 0
    cycs = p.cycles()
    if not cycs:
        return "()"
    return "".join("(" + ",".join(str(x + shift) for x in cyc) + ")" for cyc in cycs)


@dataclass
class PermGroup:
    """A permutation group given by generators; elements found by closure.

    Element enumeration is breadth-first by word length with lexicographic
    tie-breaking on image sequences, so the element order (and everything
    downstream: orbit transversals, solver input order) is reproducible.
    """

    degree: int
    generators: tuple[Permutation, ...]
    _elements: tuple[Permutation, ...] | None = field(
        default=None, repr=False, compare=False
    )

    def __init__(self, generators: Sequence[Permutation], degree: int | None = None):
        gens = tuple(generators)
        if not gens:
            if degree is None:
                raise ValueError("empty generator list needs an explicit degree")
            gens = (identity(degree),)
        if degree is None:
            degree = gens[0].degree
        for g in gens:
            if g.degree != degree:
                raise ValueError(
                    f"generator degree {g.degree} != group degree {degree}"
                )
        self.degree = degree
        self.generators = gens
        self._elements = None

    @classmethod
    def trivial(cls, degree: int) -> "PermGroup":
        return cls((identity(degree),))

    def is_trivial(self) -> bool:
        return all(g.is_identity() for g in self.generators)

    def elements(self, cap: int = DEFAULT_ORDER_CAP) -> tuple[Permutation, ...]:
        """All group elements, deterministic order; BudgetExceeded past `cap`."""
        if self._elements is not None:
            return self._elements
        if cap < 1:
            raise ValueError("cap must be at least 1")
        ident = identity(self.degree)
        seen = {ident.images}
        level = [ident]
        out = [ident]
        while level:
            nxt = []
            for p in level:
                for g in self.generators:
                    q = p * g
                    if q.images not in seen:
                        seen.add(q.images)
                        nxt.append(q)
                        if len(seen) > cap:
                            raise BudgetExceeded(
                                f"group order exceeds cap {cap} "
                                f"(at least {len(seen)} elements)"
                            )
            nxt.sort(key=lambda p: p.images)
            out.extend(nxt)
            level = nxt
        self._elements = tuple(out)
        return self._elements

    def order(self, cap: int = DEFAULT_ORDER_CAP) -> int:
        return len(self.elements(cap))

    def stabilizes(self, point: int) -> bool:
        return all(g(point) == point for g in self.generators)

    def extended(self, new_degree: int) -> "PermGroup":
        """The same generators acting on a larger point set, new points fixed."""
        if new_degree < self.degree:
            raise ValueError("new degree smaller than current degree")
        if new_degree == self.degree:
            return self
        extra = tuple(range(self.degree, new_degree))
        return PermGroup(
            tuple(Permutation(g.images + extra) for g in self.generators)
        )

    def restricted(self, new_degree: int) -> "PermGroup":
        """Restriction to {0..new_degree-1}; every generator must fix the rest."""
        for g in self.generators:
            for i in range(new_degree, self.degree):
                if g(i) != i:
                    raise ValueError(
                        f"generator moves point {i}, cannot restrict to degree {new_degree}"
                    )
        return PermGroup(
            tuple(Permutation(g.images[:new_degree]) for g in self.generators)
        )


def group_order(g: PermGroup, cap: int = DEFAULT_ORDER_CAP) -> int:
    return g.order(cap)


def enumerate_elements(g: PermGroup, cap: int = DEFAULT_ORDER_CAP) -> tuple[Permutation, ...]:
    return g.elements(cap)


def stabilizes(g: PermGroup, point: int) -> bool:
    return g.stabilizes(point)


def is_invariant(design, g: PermGroup) -> bool:
    """True iff every generator maps the design's block set onto itself."""
    if g.degree != design.v:
        raise ValueError(f"group degree {g.degree} != design points {design.v}")
    blockset = design.block_set
    for gen in g.generators:
        imgs = gen.images
        for blk in design.blocks:
            if tuple(sorted(imgs[x] for x in blk)) not in blockset:
                return False
    return True


def derived_subgroup(g: PermGroup, cap: int = DEFAULT_ORDER_CAP) -> PermGroup:
    """Commutator subgroup, with a greedily reduced generating set."""
    els = g.elements(cap)
    comms = set()
    for a in els:
        ai = inverse(a)
        for b in els:
            c = ai * inverse(b) * a * b
            comms.add(c.images)
    full = PermGroup(
        tuple(Permutation(im) for im in sorted(comms)), degree=g.degree
    )
    target = full.order(cap)
    gens: list[Permutation] = []
    closure_size = 1
    for im in sorted(comms):
        if closure_size == target:
            break
        gens.append(Permutation(im))
        reduced = PermGroup(tuple(gens), degree=g.degree)
        new_size = reduced.order(cap)
        if new_size == closure_size:
            gens.pop()
        else:
            closure_size = new_size
    if not gens:
        return PermGroup.trivial(g.degree)
    return PermGroup(tuple(gens), degree=g.degree)


def sanity_order_bound(g: PermGroup) -> int:
    return factorial(g.degree)
