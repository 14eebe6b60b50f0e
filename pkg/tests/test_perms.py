import pytest

from steinerkit import (
    Design,
    PermGroup,
    Permutation,
    compose,
    fixed_points,
    format_permutation,
    identity,
    inverse,
    is_invariant,
    parse_permutation,
    perm_order,
)
from steinerkit.errors import BudgetExceeded, ParseError
from steinerkit.perms import derived_subgroup


def test_parse_cycle():
    p = parse_permutation("(0,1,2)", 4)
    assert p.images == (1, 2, 0, 3)


def test_parse_image_list():
    assert parse_permutation("img: 1 0", 2).images == (1, 0)


def test_parse_one_based():
    p = parse_permutation("(1,2)", 3, one_based=True)
    assert p.images == (1, 0, 2)


def test_parse_errors():
    with pytest.raises(ParseError):
        parse_permutation("(0,1)(1,2)", 3)  # repeated point
    with pytest.raises(ParseError):
        parse_permutation("(0,5)", 3)  # out of range
    with pytest.raises(ParseError):
        parse_permutation("img: 0 1 2", 2)  # wrong length
    with pytest.raises(ParseError):
        parse_permutation("", 3)


def test_alpha_beta_from_construction(s3642_part):
    alpha, beta = s3642_part.group.generators
    assert perm_order(alpha) == 3
    assert perm_order(beta) == 2
    # alpha consists of 13 three-cycles on 42 points, so exactly 3 points
    # stay put: 25, 26, 27 one-based
    assert fixed_points(alpha) == frozenset({24, 25, 26})
    assert fixed_points(beta) == frozenset({36, 39})


def test_compose_inverse_roundtrip():
    p = parse_permutation("(0,1,2)(3,4)", 5)
    assert compose(p, inverse(p)) == identity(5)
    assert compose(inverse(p), p) == identity(5)


def test_compose_applies_left_first():
    p = parse_permutation("(0,1)", 3)
    q = parse_permutation("(1,2)", 3)
    assert compose(p, q)(0) == q(p(0)) == 2


def test_compose_degree_mismatch():
    with pytest.raises(ValueError):
        compose(identity(3), identity(4))


def test_perm_order_cycle():
    shift = Permutation(tuple((i + 1) % 45 for i in range(45)))
    assert perm_order(shift) == 45


def test_format_roundtrip():
    p = parse_permutation("(3,9,7)(0,1)", 10)
    assert parse_permutation(format_permutation(p), 10) == p
    assert format_permutation(identity(4)) == "()"


def test_enumerate_z45():
    g = PermGroup((Permutation(tuple((i + 1) % 45 for i in range(45))),))
    assert g.order() == 45


def test_enumerate_order_546(rosqs92_part):
    assert rosqs92_part.group.order() == 546


def test_enumerate_order_432(s3642_part):
    assert s3642_part.group.order() == 432


def test_enumeration_cap():
    g = PermGroup((Permutation(tuple((i + 1) % 45 for i in range(45))),))
    with pytest.raises(BudgetExceeded):
        PermGroup(g.generators).elements(cap=10)


def test_elements_group_closure():
    # closure under composition and inverse, identity present
    a = parse_permutation("(0,1,2,3)", 6)
    b = parse_permutation("(0,1)(4,5)", 6)
    g = PermGroup((a, b))
    els = set(g.elements(cap=10_000))
    assert identity(6) in els
    for p in els:
        assert inverse(p) in els
    for p in list(els)[:20]:
        for q in list(els)[:20]:
            assert compose(p, q) in els
    for gen in g.generators:
        assert g.order() % perm_order(gen) == 0


def test_elements_deterministic():
    a = parse_permutation("(0,1,2,3)", 6)
    b = parse_permutation("(0,1)(4,5)", 6)
    first = PermGroup((a, b)).elements()
    second = PermGroup((a, b)).elements()
    assert first == second


def test_stabilizes_and_extended():
    g = PermGroup((Permutation(tuple((i + 1) % 45 for i in range(45))),))
    ext = g.extended(46)
    assert ext.stabilizes(45)
    assert fixed_points(ext.generators[0]) == frozenset({45})
    assert ext.restricted(45).degree == 45
    with pytest.raises(ValueError):
        ext.restricted(44)


def test_is_invariant(fano, rosqs46_part):
    assert is_invariant(rosqs46_part.design, rosqs46_part.group)
    swap = PermGroup((parse_permutation("(0,1)", 7),))
    assert not is_invariant(fano, swap)
    assert is_invariant(fano, PermGroup.trivial(7))
    with pytest.raises(ValueError):
        is_invariant(fano, PermGroup.trivial(8))


def test_trivial_group_constructor():
    g = PermGroup.trivial(5)
    assert g.order() == 1 and g.is_trivial()
    with pytest.raises(ValueError):
        PermGroup(())


def test_derived_subgroup_of_s3642_group(s3642_part):
    commutator = derived_subgroup(s3642_part.group.restricted(42))
    assert commutator.order() == 216
    # a genuine subgroup: all its elements lie in the parent group
    parent = {p.images for p in s3642_part.group.restricted(42).elements()}
    for gen in commutator.generators:
        assert gen.images in parent
