"""Property suites for the spec-level invariants."""

import random
from math import comb

from hypothesis import given, settings, strategies as st

from steinerkit import (
    PermGroup,
    Permutation,
    compose,
    identity,
    inverse,
    perm_order,
    subset_orbit,
)
from steinerkit.orbits import orbit_transversal


def perms(degree):
    return st.permutations(range(degree)).map(lambda xs: Permutation(tuple(xs)))


@given(st.integers(2, 8).flatmap(lambda n: st.tuples(perms(n), perms(n))))
def test_compose_with_inverse_is_identity(pq):
    p, q = pq
    assert compose(p, inverse(p)) == identity(p.degree)
    assert inverse(compose(p, q)) == compose(inverse(q), inverse(p))


@given(st.integers(2, 8).flatmap(perms))
def test_perm_order_is_exponent(p):
    n = perm_order(p)
    acc = identity(p.degree)
    for _ in range(n):
        acc = compose(acc, p)
    assert acc == identity(p.degree)
    assert n >= 1


@settings(max_examples=30, deadline=None)
@given(st.data())
def test_group_order_divisible_by_generator_orders(data):
    n = data.draw(st.integers(2, 6))
    gens = data.draw(st.lists(perms(n), min_size=1, max_size=2))
    g = PermGroup(tuple(gens))
    order = g.order()
    for gen in gens:
        assert order % perm_order(gen) == 0
    els = g.elements()
    assert els[0] == identity(n)
    assert len({p.images for p in els}) == order


@settings(max_examples=30, deadline=None)
@given(st.data())
def test_orbit_reexpansion_and_sum(data):
    n = data.draw(st.integers(3, 7))
    gens = data.draw(st.lists(perms(n), min_size=1, max_size=2))
    g = PermGroup(tuple(gens))
    s = data.draw(st.integers(1, n - 1))
    trans = orbit_transversal(g, n, s)
    assert sum(trans.sizes) == comb(n, s)
    order = g.order()
    for orb in trans.orbits:
        assert order % orb.size == 0
        # re-expansion from any member gives the identical orbit
        full = subset_orbit(g, orb.representative)
        for member in full.members:
            assert subset_orbit(g, member).members == full.members


def test_element_list_closure_exhaustive_small():
    # closure checked exhaustively for a couple of groups below 10^4 elements
    rng = random.Random(7)
    for _ in range(3):
        n = rng.randint(3, 6)
        images = list(range(n))
        rng.shuffle(images)
        g = PermGroup((Permutation(tuple(images)), Permutation(tuple((i + 1) % n for i in range(n)))))
        els = set(g.elements())
        for p in els:
            assert inverse(p) in els
            for q in els:
                assert compose(p, q) in els
