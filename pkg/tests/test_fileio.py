import pytest

from steinerkit import Design, ExactCoverInstance, PermGroup, parse_permutation
from steinerkit.errors import ParseError
from steinerkit.fileio import (
    design_to_json,
    format_design,
    format_group,
    format_instance,
    parse_design,
    parse_group,
    parse_instance,
)

FANO = [(0, 1, 2), (0, 3, 4), (0, 5, 6), (1, 3, 5), (1, 4, 6), (2, 3, 6), (2, 4, 5)]


def test_design_roundtrip():
    d = Design(7, FANO)
    assert parse_design(format_design(d)) == d


def test_design_json_roundtrip():
    d = Design(7, FANO)
    assert parse_design(design_to_json(d)) == d


def test_design_one_based():
    text = "v=3 b=1\n1 2 3\n"
    d = parse_design(text, one_based=True)
    assert d.blocks == ((0, 1, 2),)


def test_design_inf_token():
    text = "v=4 b=2\n0 1 inf\n1 2 inf\n"
    d = parse_design(text)
    assert d.blocks == ((0, 1, 3), (1, 2, 3))


def test_design_inf_token_one_based():
    # numeric points shift down, inf stays v-1
    text = "v=4 b=1\n1 2 inf\n"
    d = parse_design(text, one_based=True)
    assert d.blocks == ((0, 1, 3),)


def test_design_header_mismatch():
    with pytest.raises(ParseError, match="b=3"):
        parse_design("v=7 b=3\n0 1 2\n")


def test_design_bad_header():
    with pytest.raises(ParseError):
        parse_design("7 blocks\n")
    with pytest.raises(ParseError):
        parse_design("")


def test_design_bad_point():
    with pytest.raises(ParseError, match="line 2"):
        parse_design("v=7 b=1\n0 x 2\n")


def test_design_bad_json():
    with pytest.raises(ParseError):
        parse_design('{"v": 7}')
    with pytest.raises(ParseError):
        parse_design("{not json")


def test_group_roundtrip():
    g = PermGroup(
        (parse_permutation("(0,1,2)", 5), parse_permutation("(3,4)", 5))
    )
    parsed = parse_group(format_group(g))
    assert parsed.degree == 5
    assert parsed.generators == g.generators


def test_group_comments_and_one_based():
    text = "# a comment\ndegree=3\n(1,2) # trailing\n"
    g = parse_group(text, one_based=True)
    assert g.generators[0].images == (1, 0, 2)


def test_group_image_list_line():
    g = parse_group("degree=3\nimg: 1 0 2\n")
    assert g.generators[0].images == (1, 0, 2)


def test_group_missing_degree():
    with pytest.raises(ParseError):
        parse_group("(0,1)\n")
    with pytest.raises(ParseError):
        parse_group("degree=4\n")


def test_instance_roundtrip():
    inst = ExactCoverInstance.build(4, [(0, 1), (2, 3), (0, 2, 3)])
    assert parse_instance(format_instance(inst)) == inst


def test_instance_errors():
    with pytest.raises(ParseError):
        parse_instance("options=3\n")
    with pytest.raises(ParseError):
        parse_instance("items=2\n0 0\n")
