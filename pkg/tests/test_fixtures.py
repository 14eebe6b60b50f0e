import pytest

from steinerkit import Params, are_isomorphic, automorphism_group, is_invariant, verify
from steinerkit.fileio import load_design, load_group
from steinerkit.fixtures import FIXTURE_NAMES, fixture, materialize


@pytest.mark.parametrize(
    "name,expected",
    [
        ("fano", [("fano", (2, 3, 7), 7)]),
        ("sqs8", [("sqs8", (3, 4, 8), 14)]),
        (
            "sts13-both",
            [("sts13-cyclic", (2, 3, 13), 26), ("sts13-noncyclic", (2, 3, 13), 26)],
        ),
        ("rosqs46", [("rosqs46", (3, 4, 46), 3795)]),
        ("rosqs92", [("rosqs92", (3, 4, 92), 31395)]),
        ("s3-6-42", [("s3-6-42", (3, 6, 42), 574)]),
    ],
)
def test_fixture_designs_verify(name, expected):
    parts = fixture(name)
    got = [(p.stem, (p.params.t, p.params.k, p.params.v), p.design.b) for p in parts]
    assert got == expected
    for part in parts:
        assert verify(part.design, part.params).valid
        assert is_invariant(part.design, part.group)


def test_unknown_fixture():
    with pytest.raises(KeyError):
        fixture("nope")


def test_group_orders(rosqs92_part, s3642_part, rosqs46_part):
    assert rosqs92_part.group.order() == 546
    assert s3642_part.group.order() == 432
    assert rosqs46_part.group.order() == 45


def test_sts13_classes_distinct_with_expected_automorphisms(sts13_parts):
    cyc, noncyc = sts13_parts
    assert not are_isomorphic(cyc.design, noncyc.design)
    assert automorphism_group(cyc.design)[1] == 39
    assert automorphism_group(noncyc.design)[1] == 6


def test_materialize_roundtrip(tmp_path):
    for name in FIXTURE_NAMES:
        written = materialize(name, tmp_path / name)
        assert written
        parts = fixture(name)
        for part in parts:
            base = tmp_path / name
            group = load_group(
                (base / f"{part.stem}.grp"), one_based=part.one_based_files
            )
            assert group.generators == part.group.generators
            design = load_design(base / f"{part.stem}.blocks")
            assert design == part.design
            bases = load_design(
                base / f"{part.stem}-base.blocks", one_based=part.one_based_files
            )
            assert bases.blocks == tuple(
                sorted(tuple(sorted(b)) for b in part.base_blocks)
            )


def test_base_block_files_keep_infinity_token(tmp_path):
    materialize("rosqs46", tmp_path)
    text = (tmp_path / "rosqs46-base.blocks").read_text()
    assert "inf" in text
    assert text.splitlines()[0] == "v=46 b=85"


def test_s3642_files_are_one_based(tmp_path):
    materialize("s3-6-42", tmp_path)
    grp = (tmp_path / "s3-6-42.grp").read_text()
    assert "# one-based" in grp
    assert "(1,2,4)" in grp  # the construction's first cycle, as printed
    base = (tmp_path / "s3-6-42-base.blocks").read_text()
    assert base.splitlines()[1].split() == ["1", "2", "3", "10", "11", "12"]
