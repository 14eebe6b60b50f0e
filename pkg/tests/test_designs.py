from itertools import combinations
from math import comb

import pytest

from steinerkit import (
    Design,
    Params,
    PermGroup,
    admissible,
    admissible_table,
    are_isomorphic,
    block_count,
    derived,
    design_from_orbits,
    identity,
    is_rotational,
    parse_permutation,
    verify,
)
from steinerkit.errors import SteinerError

FANO = [(0, 1, 2), (0, 3, 4), (0, 5, 6), (1, 3, 5), (1, 4, 6), (2, 3, 6), (2, 4, 5)]

# frozen from the independent table oracle (divisibility + Fisher by brute force)
TABLE_3_50 = [
    (8, 4, 14), (10, 4, 30), (14, 4, 91), (16, 4, 140), (17, 5, 68),
    (20, 4, 285), (22, 4, 385), (22, 6, 77), (26, 4, 650), (26, 5, 260),
    (26, 6, 130), (28, 4, 819), (32, 4, 1240), (34, 4, 1496), (37, 7, 222),
    (38, 4, 2109), (40, 4, 2470), (41, 5, 1066), (42, 6, 574), (44, 4, 3311),
    (46, 4, 3795), (46, 6, 759), (50, 4, 4900), (50, 5, 1960), (50, 8, 350),
]


def brute_force_verify(design, t):
    """Independent oracle: scan all t-subsets against all blocks."""
    for sub in combinations(range(design.v), t):
        hits = sum(1 for blk in design.blocks if set(sub) <= set(blk))
        if hits != 1:
            return False
    return True


def test_params_validation():
    Params(2, 3, 7)
    with pytest.raises(ValueError):
        Params(3, 2, 7)
    with pytest.raises(ValueError):
        Params(2, 8, 7)


def test_design_validation():
    with pytest.raises(ValueError):
        Design(7, [(2, 1, 0)])
    with pytest.raises(ValueError):
        Design(3, [(0, 3)])
    with pytest.raises(ValueError):
        Design(7, [(0, 1, 2), (0, 1, 2)])


def test_design_blocks_sorted():
    d = Design(5, [(2, 3), (0, 1)])
    assert d.blocks == ((0, 1), (2, 3))


@pytest.mark.parametrize(
    "t,k,v,expected",
    [(3, 6, 42, 574), (3, 4, 8, 14), (3, 4, 92, 31395)],
)
def test_block_count(t, k, v, expected):
    assert block_count(Params(t, k, v)) == expected


def test_block_count_error_names_quotient():
    with pytest.raises(SteinerError, match=r"C\(7,3\).*C\(4,3\)"):
        block_count(Params(3, 4, 7))


def test_block_count_exact_big():
    assert block_count(Params(3, 4, 1000)) == comb(1000, 3) // 4


def test_admissible_s3_7_22():
    report = admissible(Params(3, 7, 22))
    assert all(report.divisibility_ok)
    assert not report.fisher_ok
    assert not report.admissible
    # derived S(2,6,21) has 14 blocks < 21 points
    assert report.block_count == comb(22, 3) // comb(7, 3)


def test_admissible_s3_6_42():
    assert admissible(Params(3, 6, 42)).admissible


def test_admissible_s3_4_9_divisibility():
    report = admissible(Params(3, 4, 9))
    assert report.divisibility_ok[0]  # 4 | 84
    assert not report.divisibility_ok[1]  # 3 does not divide C(8,2) = 28
    assert report.block_count is None
    assert not report.admissible


def test_table_reproduction():
    rows = admissible_table(3, 50, range(4, 9))
    assert [(r.params.v, r.params.k, r.block_count) for r in rows] == TABLE_3_50


def test_table_default_k_range_identical():
    rows = admissible_table(3, 50)
    assert [(r.params.v, r.params.k, r.block_count) for r in rows] == TABLE_3_50


def test_table_small():
    rows = admissible_table(3, 10, range(4, 5))
    assert [(r.params.v, r.params.k, r.block_count) for r in rows] == [
        (8, 4, 14),
        (10, 4, 30),
    ]
    rows = admissible_table(2, 7, range(3, 4))
    assert [(r.params.v, r.params.k, r.block_count) for r in rows] == [(7, 3, 7)]


def test_verify_fano():
    d = Design(7, FANO)
    assert verify(d, Params(2, 3, 7)).valid
    assert brute_force_verify(d, 2)


def test_verify_reports_uncovered_witness():
    d = Design(7, FANO[1:])
    result = verify(d, Params(2, 3, 7))
    assert not result.valid
    assert result.coverage == 0
    assert set(result.witness) <= set(FANO[0])


def test_verify_reports_overcovered_witness():
    d = Design(5, [(0, 1, 2), (0, 1, 3)])
    result = verify(d, Params(2, 3, 5))
    assert not result.valid
    assert result.witness == (0, 1)
    assert result.coverage == 2


def test_verify_wrong_block_size_raises():
    d = Design(7, [(0, 1), (2, 3, 4)])
    with pytest.raises(SteinerError):
        verify(d, Params(2, 3, 7))


def test_verify_theorem_designs(s3642_part, rosqs46_part):
    assert verify(s3642_part.design, Params(3, 6, 42)).valid
    assert verify(rosqs46_part.design, Params(3, 4, 46)).valid


def test_derived_counts(s3642_part):
    d = derived(s3642_part.design, 0)
    assert d.v == 41 and d.b == 82  # r = C(41,2)/C(5,2)
    assert verify(d, Params(2, 5, 41)).valid


def test_derived_of_sqs8_is_fano(sqs8_part, fano):
    for p in range(8):
        der = derived(sqs8_part.design, p)
        assert verify(der, Params(2, 3, 7)).valid
        assert are_isomorphic(der, fano)


def test_derived_of_rosqs46_at_infinity(rosqs46_part):
    der = derived(rosqs46_part.design, 45)
    assert verify(der, Params(2, 3, 45)).valid


def test_derived_verify_consistency(sqs8_part):
    # verify(D) implies verify(derived(D, p)) for every p
    for p in range(8):
        assert verify(derived(sqs8_part.design, p), Params(2, 3, 7)).valid


def test_design_from_orbits_counts(rosqs46_part, s3642_part):
    assert rosqs46_part.design.b == 3795
    assert s3642_part.design.b == 574


def test_design_from_orbits_single_orbit():
    c3 = PermGroup((parse_permutation("(0,1,2)", 3),))
    d = design_from_orbits(c3, [(0, 1)], 3)
    assert d.blocks == ((0, 1), (0, 2), (1, 2))


def test_design_from_orbits_duplicate_is_error():
    c3 = PermGroup((parse_permutation("(0,1,2)", 3),))
    with pytest.raises(SteinerError, match=r"duplicate block"):
        design_from_orbits(c3, [(0, 1), (1, 2)], 3)


def test_design_from_orbits_invariance(rosqs46_part):
    blockset = rosqs46_part.design.block_set
    for gen in rosqs46_part.group.generators:
        imgs = gen.images
        mapped = {tuple(sorted(imgs[x] for x in blk)) for blk in blockset}
        assert mapped == blockset


def test_is_rotational(rosqs46_part, rosqs92_part, fano):
    z45 = rosqs46_part.group.generators[0]
    assert is_rotational(rosqs46_part.design, Params(3, 4, 46), z45)
    assert not is_rotational(fano, Params(2, 3, 7), identity(7))
    shift91 = parse_permutation(
        "(" + ",".join(str(i) for i in range(91)) + ")", 92
    )
    assert is_rotational(rosqs92_part.design, Params(3, 4, 92), shift91)
    with pytest.raises(ValueError):
        is_rotational(fano, Params(2, 3, 7), identity(8))


def test_block_count_matches_verified_designs(s3642_part):
    assert s3642_part.design.b == block_count(Params(3, 6, 42))
