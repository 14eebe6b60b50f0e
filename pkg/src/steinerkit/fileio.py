"""Text formats for designs (.blocks), groups (.grp) and cover instances (.xc).

.blocks: first line `v=<int> b=<int>`, then one block per line as
space-separated ascending 0-based point indices. A JSON alternative
`{"v": N, "blocks": [[...], ...]}` is accepted on reading. The token
`inf` denotes the point v-1; `--one-based` inputs are shifted at parse
time (inf is never shifted).

.grp: first line `degree=<int>`, then one generator per line in cycle or
image-list syntax; `#` starts a comment.

.xc: first line `items=<int>`, then one option per line as ascending item
indices.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Sequence

from .designs import Design
from .errors import ParseError
from .exact_cover import ExactCoverInstance
from .perms import PermGroup, Permutation, format_permutation, parse_permutation


def parse_design(text: str, one_based: bool = False) -> Design:
    stripped = text.lstrip()
    if stripped.startswith("{"):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as e:
            raise ParseError(f"bad JSON design: {e}") from None
        try:
            v = int(data["v"])
            blocks = [[int(x) for x in blk] for blk in data["blocks"]]
        except (KeyError, TypeError, ValueError) as e:
            raise ParseError(f"bad JSON design structure: {e}") from None
        if one_based:
            blocks = [[x - 1 for x in blk] for blk in blocks]
        return _build_design(v, blocks)
    lines = [ln for ln in text.splitlines()]
    if not lines:
        raise ParseError("empty design file")
    header = lines[0].split()
    fields = dict(_split_kv(tok, lines[0]) for tok in header)
    if "v" not in fields or "b" not in fields:
        raise ParseError(f"design header must be 'v=<int> b=<int>', got {lines[0]!r}")
    v, b = fields["v"], fields["b"]
    shift = 1 if one_based else 0
    blocks = []
    for ln_no, ln in enumerate(lines[1:], start=2):
        ln = ln.strip()
        if not ln:
            continue
        blk = []
        for tok in ln.split():
            if tok == "inf":
                blk.append(v - 1)
            else:
                try:
                    blk.append(int(tok) - shift)
                except ValueError:
                    raise ParseError(f"line {ln_no}: bad point {tok!r}") from None
        blocks.append(sorted(blk))
    if len(blocks) != b:
        raise ParseError(f"header says b={b} but file has {len(blocks)} blocks")
    return _build_design(v, blocks)


def _build_design(v: int, blocks: list[list[int]]) -> Design:
    try:
        return Design(v, blocks)
    except ValueError as e:
        raise ParseError(str(e)) from None


def _split_kv(tok: str, line: str) -> tuple[str, int]:
    if "=" not in tok:
        raise ParseError(f"bad header token {tok!r} in {line!r}")
    key, _, val = tok.partition("=")
    try:
        return key, int(val)
    except ValueError:
        raise ParseError(f"bad header value in {tok!r}") from None


def format_design(d: Design) -> str:
    lines = [f"v={d.v} b={d.b}"]
    lines.extend(" ".join(str(x) for x in blk) for blk in d.blocks)
    return "\n".join(lines) + "\n"


def design_to_json(d: Design) -> str:
    return json.dumps({"v": d.v, "blocks": [list(b) for b in d.blocks]})


def parse_group(text: str, one_based: bool = False) -> PermGroup:
    degree: int | None = None
    gens: list[Permutation] = []
    for ln_no, raw in enumerate(text.splitlines(), start=1):
        ln = raw.split("#", 1)[0].strip()
        if not ln:
            continue
        if degree is None:
            key, _, val = ln.partition("=")
            if key.strip() != "degree":
                raise ParseError(
                    f"line {ln_no}: expected 'degree=<int>', got {ln!r}"
                )
            try:
                degree = int(val)
            except ValueError:
                raise ParseError(f"line {ln_no}: bad degree {val!r}") from None
            continue
        gens.append(parse_permutation(ln, degree, one_based=one_based))
    if degree is None:
        raise ParseError("group file has no degree line")
    if not gens:
        raise ParseError("group file has no generators")
    return PermGroup(gens)


def format_group(g: PermGroup, one_based: bool = False) -> str:
    lines = [f"degree={g.degree}"]
    lines.extend(format_permutation(p, one_based=one_based) for p in g.generators)
    return "\n".join(lines) + "\n"


def parse_instance(text: str) -> ExactCoverInstance:
    lines = text.splitlines()
    if not lines:
        raise ParseError("empty instance file")
    key, _, val = lines[0].partition("=")
    if key.strip() != "items":
        raise ParseError(f"expected 'items=<int>', got {lines[0]!r}")
    try:
        items = int(val)
    except ValueError:
        raise ParseError(f"bad item count {val!r}") from None
    options = []
    for ln_no, ln in enumerate(lines[1:], start=2):
        ln = ln.strip()
        if not ln:
            continue
        try:
            options.append(tuple(int(tok) for tok in ln.split()))
        except ValueError:
            raise ParseError(f"line {ln_no}: bad item index") from None
    try:
        return ExactCoverInstance(items, tuple(options))
    except Exception as e:
        raise ParseError(str(e)) from None


def format_instance(inst: ExactCoverInstance) -> str:
    lines = [f"items={inst.item_count}"]
    lines.extend(" ".join(str(x) for x in opt) for opt in inst.options)
    return "\n".join(lines) + "\n"


def load_design(path: str | Path, one_based: bool = False) -> Design:
    return parse_design(Path(path).read_text(), one_based=one_based)


def save_design(d: Design, path: str | Path) -> None:
    Path(path).write_text(format_design(d))


def load_group(path: str | Path, one_based: bool = False) -> PermGroup:
    return parse_group(Path(path).read_text(), one_based=one_based)


def save_group(g: PermGroup, path: str | Path, one_based: bool = False) -> None:
    Path(path).write_text(format_group(g, one_based=one_based))


def load_instance(path: str | Path) -> ExactCoverInstance:
    return parse_instance(Path(path).read_text())


def save_instance(inst: ExactCoverInstance, path: str | Path) -> None:
    Path(path).write_text(format_instance(inst))
