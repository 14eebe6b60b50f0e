"""Bundled constructions: prescribed groups, base blocks and expansions.

The three theorem fixtures (rosqs46, rosqs92, s3-6-42) carry the groups
and base blocks verbatim; rosqs46/rosqs92 are given on points {0,...}
with a symbolic infinity, s3-6-42 on 1-based points, and the emitted
files keep those conventions (parse the s3-6-42 files with one_based).
The remaining fixtures are small classical objects used by tests and the
classification pipelines.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from .designs import Design, Params, design_from_orbits
from .fileio import format_group, save_design
from .perms import PermGroup, Permutation, parse_permutation

FIXTURE_NAMES = ("fano", "sqs8", "sts13-both", "rosqs46", "rosqs92", "s3-6-42")

_INF46 = 45
_INF92 = 91

_ROSQS46_BASES = (
    (0, 1, 2, 21), (0, 1, 3, 24), (0, 1, 4, 22), (0, 1, 5, 42), (0, 1, 6, 41),
    (0, 1, 7, 31), (0, 1, 8, 27), (0, 1, 9, 19), (0, 1, 10, 13), (0, 1, 11, _INF46),
    (0, 1, 12, 37), (0, 1, 14, 35), (0, 1, 15, 25), (0, 1, 16, 40), (0, 1, 17, 26),
    (0, 1, 18, 28), (0, 1, 23, 33), (0, 1, 29, 38), (0, 1, 30, 34), (0, 1, 32, 36),
    (0, 1, 39, 43), (0, 2, 4, 35), (0, 2, 5, 29), (0, 2, 6, 26), (0, 2, 7, 28),
    (0, 2, 8, 14), (0, 2, 9, 36), (0, 2, 10, 17), (0, 2, 11, 40), (0, 2, 12, 22),
    (0, 2, 13, 31), (0, 2, 15, 19), (0, 2, 16, _INF46), (0, 2, 18, 38), (0, 2, 20, 24),
    (0, 2, 25, 39), (0, 2, 27, 34), (0, 2, 30, 42), (0, 2, 32, 37), (0, 3, 6, 13),
    (0, 3, 7, _INF46), (0, 3, 9, 30), (0, 3, 11, 32), (0, 3, 12, 16), (0, 3, 14, 38),
    (0, 3, 15, 37), (0, 3, 17, 20), (0, 3, 18, 39), (0, 3, 19, 22), (0, 3, 23, 34),
    (0, 3, 25, 40), (0, 4, 9, 26), (0, 4, 11, 28), (0, 4, 12, 21), (0, 4, 17, 31),
    (0, 4, 18, 37), (0, 4, 19, 39), (0, 4, 20, 34), (0, 4, 23, 38), (0, 4, 29, 40),
    (0, 5, 11, 19), (0, 5, 12, 28), (0, 5, 14, 36), (0, 5, 17, 32), (0, 5, 18, 25),
    (0, 5, 20, 37), (0, 5, 23, _INF46), (0, 5, 24, 35), (0, 5, 27, 39), (0, 5, 31, 38),
    (0, 6, 15, 38), (0, 6, 16, 22), (0, 6, 17, 23), (0, 6, 18, 36), (0, 6, 19, _INF46),
    (0, 6, 20, 32), (0, 7, 15, 29), (0, 7, 17, 33), (0, 8, 16, 32), (0, 8, 19, 35),
    (0, 8, 21, 33), (0, 8, 25, _INF46), (0, 9, 21, _INF46), (0, 9, 22, 35), (0, 15, 30, _INF46),
)

_ROSQS92_BASES = (
    (0, 1, 2, 13), (0, 1, 3, 52), (0, 1, 4, 29), (0, 1, 5, 31), (0, 1, 6, 17),
    (0, 1, 7, 59), (0, 1, 8, 26), (0, 1, 9, 48), (0, 1, 10, 66), (0, 1, 11, _INF92),
    (0, 1, 14, 39), (0, 1, 15, 27), (0, 1, 16, 43), (0, 1, 18, 76), (0, 1, 19, 58),
    (0, 1, 20, 85), (0, 1, 21, 40), (0, 1, 22, 61), (0, 1, 24, 36), (0, 1, 25, 60),
    (0, 1, 28, 79), (0, 1, 32, 84), (0, 1, 33, 63), (0, 1, 34, 45), (0, 1, 35, 83),
    (0, 1, 37, 55), (0, 1, 38, 71), (0, 1, 41, 47), (0, 1, 44, 70), (0, 1, 46, 67),
    (0, 1, 50, 77), (0, 1, 54, 80), (0, 1, 56, 89), (0, 1, 57, 62), (0, 1, 64, 78),
    (0, 1, 72, 82), (0, 1, 73, 81), (0, 1, 75, 86), (0, 2, 5, 71), (0, 2, 7, 44),
    (0, 2, 8, 30), (0, 2, 9, 33), (0, 2, 10, 67), (0, 2, 11, 14), (0, 2, 12, 34),
    (0, 2, 20, 42), (0, 2, 24, 48), (0, 2, 32, 57), (0, 2, 35, 72), (0, 2, 36, 61),
    (0, 2, 37, _INF92), (0, 2, 41, 56), (0, 2, 43, 63), (0, 2, 55, 60), (0, 2, 59, 81),
    (0, 3, 9, 21), (0, 3, 18, 51), (0, 3, 31, 53), (0, 3, 36, 72), (0, 3, 43, 76),
    (0, 3, 50, 56), (0, 3, 55, 84), (0, 5, 11, 66), (0, 5, 14, 61), (0, 5, 30, 85),
    (0, 5, 33, 77), (0, 5, 41, 82), (0, 5, 47, 65), (0, 5, 49, 70), (0, 7, 21, 63),
    (0, 7, 28, 42), (0, 7, 36, _INF92), (0, 13, 26, 52), (0, 13, 65, _INF92), (0, 15, 73, _INF92),
)

# order-432 group of the S(3,6,42) construction, 1-based cycles
_ALPHA_42 = (
    "(1,2,4)(3,9,7)(5,6,8)(10,11,13)(12,18,16)(14,15,17)(19,38,34)"
    "(20,39,36)(21,37,35)(22,42,32)(23,40,31)(24,41,33)(28,30,29)"
)
_BETA_42 = (
    "(1,10)(2,11)(3,12)(4,16)(5,17)(6,18)(7,13)(8,14)(9,15)(19,23)"
    "(20,24)(21,22)(25,35)(26,36)(27,34)(28,33)(29,31)(30,32)(38,39)(41,42)"
)
_S3_6_42_BASES_1B = (
    (1, 2, 3, 10, 11, 12),
    (1, 2, 4, 20, 36, 39),
    (1, 2, 13, 17, 31, 34),
    (1, 10, 19, 22, 25, 30),
    (1, 11, 20, 21, 29, 34),
    (19, 20, 21, 22, 23, 24),
    (19, 22, 31, 36, 38, 42),
)

# the non-cyclic STS(13) (full automorphism group of order 6), as orbit
# representatives under (0,1,2)(3,4,5)(6,7,8)(9,10,11)
_STS13_NONCYCLIC_BASES = (
    (0, 1, 2), (0, 3, 4), (0, 5, 6), (0, 7, 9), (0, 8, 12),
    (0, 10, 11), (3, 6, 10), (3, 8, 11), (3, 9, 12), (6, 7, 8),
)


@dataclass(frozen=True)
class FixturePart:
    stem: str
    params: Params
    group: PermGroup
    base_blocks: tuple[tuple[int, ...], ...]
    design: Design
    one_based_files: bool
    infinity_token: bool


def _cycle_perm(n: int, shift: int, degree: int) -> Permutation:
    imgs = [(i + shift) % n for i in range(n)] + list(range(n, degree))
    return Permutation(tuple(imgs))


def _mult_perm(n: int, factor: int, degree: int) -> Permutation:
    imgs = [(i * factor) % n for i in range(n)] + list(range(n, degree))
    return Permutation(tuple(imgs))


def _part(
    stem: str,
    params: Params,
    group: PermGroup,
    bases: tuple[tuple[int, ...], ...],
    one_based_files: bool = False,
    infinity_token: bool = False,
) -> FixturePart:
    design = design_from_orbits(group, [tuple(sorted(b)) for b in bases], params.v)
    return FixturePart(stem, params, group, bases, design, one_based_files, infinity_token)


def fixture(name: str) -> list[FixturePart]:
    """The named fixture's parts (group, base blocks, expanded design)."""
    if name == "fano":
        z7 = PermGroup((_cycle_perm(7, 1, 7),))
        return [_part("fano", Params(2, 3, 7), z7, ((0, 1, 3),))]
    if name == "sqs8":
        z7 = PermGroup((_cycle_perm(7, 1, 8),))
        return [
            _part(
                "sqs8",
                Params(3, 4, 8),
                z7,
                ((0, 1, 3, 7), (2, 4, 5, 6)),
                infinity_token=True,
            )
        ]
    if name == "sts13-both":
        z13 = PermGroup((_cycle_perm(13, 1, 13),))
        c3 = PermGroup(
            (parse_permutation("(0,1,2)(3,4,5)(6,7,8)(9,10,11)", 13),)
        )
        return [
            _part("sts13-cyclic", Params(2, 3, 13), z13, ((0, 1, 4), (0, 2, 7))),
            _part("sts13-noncyclic", Params(2, 3, 13), c3, _STS13_NONCYCLIC_BASES),
        ]
    if name == "rosqs46":
        z45 = PermGroup((_cycle_perm(45, 1, 46),))
        return [
            _part("rosqs46", Params(3, 4, 46), z45, _ROSQS46_BASES, infinity_token=True)
        ]
    if name == "rosqs92":
        g = PermGroup((_cycle_perm(91, 1, 92), _mult_perm(91, 4, 92)))
        return [
            _part("rosqs92", Params(3, 4, 92), g, _ROSQS92_BASES, infinity_token=True)
        ]
    if name == "s3-6-42":
        alpha = parse_permutation(_ALPHA_42, 42, one_based=True)
        beta = parse_permutation(_BETA_42, 42, one_based=True)
        g = PermGroup((alpha, beta))
        bases = tuple(tuple(x - 1 for x in blk) for blk in _S3_6_42_BASES_1B)
        return [
            _part("s3-6-42", Params(3, 6, 42), g, bases, one_based_files=True)
        ]
    raise KeyError(f"unknown fixture {name!r}; known: {', '.join(FIXTURE_NAMES)}")


def materialize(name: str, out_dir: str | Path) -> list[Path]:
    """Write the fixture's .grp, base-block and expanded .blocks files."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written = []
    for part in fixture(name):
        shift = 1 if part.one_based_files else 0
        grp_path = out / f"{part.stem}.grp"
        header = "# one-based\n" if part.one_based_files else ""
        grp_path.write_text(
            header + format_group(part.group, one_based=part.one_based_files)
        )
        written.append(grp_path)
        base_path = out / f"{part.stem}-base.blocks"
        lines = [f"v={part.params.v} b={len(part.base_blocks)}"]
        inf_pt = part.params.v - 1
        for blk in part.base_blocks:
            toks = []
            for x in sorted(blk):
                if part.infinity_token and x == inf_pt:
                    toks.append("inf")
                else:
                    toks.append(str(x + shift))
            lines.append(" ".join(toks))
        base_path.write_text("\n".join(lines) + "\n")
        written.append(base_path)
        design_path = out / f"{part.stem}.blocks"
        save_design(part.design, design_path)
        written.append(design_path)
    return written
