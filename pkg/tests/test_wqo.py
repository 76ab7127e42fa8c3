from __future__ import annotations

import itertools
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from sigpds import wqo as W

V2 = W.VectorOrder(2)
CHAIN = W.FiniteOrder(["lo", "mid", "hi"], [("lo", "mid"), ("mid", "hi")])

vec = st.tuples(st.integers(0, 4), st.integers(0, 4))


def test_up_examples():
    assert W.up(V2, []) == W.EMPTY
    assert W.up(CHAIN, ["mid", "hi"]).gens == ("mid",)
    assert W.up(V2, [(1, 0), (0, 1), (1, 1)]).gens == ((0, 1), (1, 0))


def test_union_and_membership():
    a = W.up(V2, [(1, 1)])
    assert W.union_up(V2, a, W.EMPTY) == a
    assert W.member(V2, a, (2, 1))
    assert not W.member(V2, a, (0, 5))


def test_product_examples():
    words = W.TupleOrder(V2)
    a = W.UpSet((((1, 0),), ((0, 1),)))
    assert W.product_up(words, a, W.EMPTY) == W.EMPTY
    b = W.UpSet((((2, 2),),))
    assert W.product_up(words, a, b).gens == (((0, 1), (2, 2)), ((1, 0), (2, 2)))


def test_finite_order_closure_and_render():
    assert CHAIN.leq("lo", "hi") and not CHAIN.leq("hi", "lo")
    assert CHAIN.parse(" mid ") == "mid"
    with pytest.raises(ValueError):
        CHAIN.parse("top")
    assert V2.parse("(1,2)") == (1, 2)
    with pytest.raises(ValueError):
        V2.parse("(1,2,3)")
    words = W.TupleOrder(V2)
    assert words.parse("(1,2)(0,0)") == ((1, 2), (0, 0))
    assert words.parse("(1,2), (0,0)") == words.parse("(1,2) (0,0)") == ((1, 2), (0, 0))
    with pytest.raises(ValueError):
        words.parse("(1,2)x(0,0)")
    assert words.render(((1, 2), (0, 0))) == "(1,2)(0,0)"


def test_non_monotone_transfer_rejected():
    with pytest.raises(W.NotMonotone):
        W.FiniteTransfer(CHAIN, {"lo": ("hi",), "mid": ("lo",)}, arity=1)
    with pytest.raises(W.NotMonotone):
        # defined on lo but not on the larger mid
        W.FiniteTransfer(CHAIN, {"lo": ("lo",)}, arity=1)


def test_preimage_of_empty_is_empty():
    phi = W.VectorTransfer(V2, (1, 0), [(0, 1)])
    assert W.preimage(phi, W.EMPTY) == W.EMPTY
    with pytest.raises(ValueError):
        W.preimage(phi, W.UpSet((((0, 0), (0, 0)),)))


def test_finite_preimage_matches_filtering():
    phi = W.FiniteTransfer(CHAIN, {"mid": ("lo", "lo"), "hi": ("mid", "lo")})
    words = W.TupleOrder(CHAIN)
    for t in itertools.product(CHAIN.elements, repeat=2):
        target = W.UpSet((t,))
        got = W.preimage(phi, target)
        want = [x for x in CHAIN.elements if x in phi.mapping and words.leq(t, phi.mapping[x])]
        assert {x for x in CHAIN.elements if W.member(CHAIN, got, x)} == set(want)


@given(vec, st.lists(vec, min_size=0, max_size=2), st.lists(vec, min_size=0, max_size=2))
def test_vector_preimage_matches_enumeration(guard, deltas, targets):
    phi = W.VectorTransfer(V2, guard, deltas)
    words = W.TupleOrder(V2)
    target = W.UpSet(tuple(tuple((t[0] + j, t[1]) for j in range(phi.arity)) for t in targets)) if phi.arity else (
        W.UpSet(((),)) if targets else W.EMPTY)
    target = W.up(words, target.gens)
    got = W.preimage(phi, target)
    for x in itertools.product(range(7), repeat=2):
        img = phi.apply(x)
        want = img is not None and W.member(words, target, img)
        assert W.member(V2, got, x) == want


@given(st.lists(vec, max_size=6))
def test_member_of_up_is_domination(xs):
    a = W.up(V2, xs)
    for x in itertools.product(range(5), repeat=2):
        assert W.member(V2, a, x) == any(V2.leq(g, x) for g in xs)
    # generators form an antichain
    for g, h in itertools.combinations(a.gens, 2):
        assert not V2.leq(g, h) and not V2.leq(h, g)


def test_member_exhaustive_on_finite_order():
    for k in range(4):
        for xs in itertools.combinations(CHAIN.elements, k):
            a = W.up(CHAIN, xs)
            for x in CHAIN.elements:
                assert W.member(CHAIN, a, x) == any(CHAIN.leq(g, x) for g in xs)


def test_increasing_ideal_chains_stabilise():
    rng = random.Random(5)
    for _ in range(30):
        cur, steps = W.EMPTY, 0
        stable = 0
        while stable < 50:
            nxt = W.union_up(V2, cur, W.up(V2, [V2.sample(rng, bound=8)]))
            stable = stable + 1 if nxt == cur else 0
            cur = nxt
            steps += 1
            assert steps < 5000
        # the limit is generated by a small antichain
        assert len(cur.gens) <= 9
