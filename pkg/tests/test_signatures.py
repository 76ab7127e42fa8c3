from __future__ import annotations

import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from sigpds import signatures as S
from sigpds.signatures import BOT, TOP, UNIT, Sig, sig

AB = ("a", "b")


def words_upto(n, alph=AB):
    for k in range(n + 1):
        yield from itertools.product(alph, repeat=k)


word = st.lists(st.sampled_from(AB), max_size=3).map(tuple)
proper = st.builds(Sig, word, word)
signature = st.one_of(proper, proper, proper, st.just(TOP))


# -- examples -----------------------------------------------------------------


def test_mul_prefix_cancellation():
    assert S.mul(sig(["g1"], ["g2"]), sig(["g2", "g3"], ["g4"])) == sig(["g1", "g3"], ["g4"])


def test_mul_unit_and_top():
    s = sig("ab", "b")
    assert S.mul(UNIT, s) == s and S.mul(s, UNIT) == s
    assert S.mul(sig(["g1"], ["g2"]), sig(["g3"], ["g4"])) is TOP
    assert S.mul(TOP, s) is TOP and S.mul(s, TOP) is TOP


def test_mul_case_tags():
    assert S.mul_case(sig("a", ""), sig("b", ""))[1] == "right-longer"
    assert S.mul_case(sig("", "ab"), sig("a", ""))[1] == "left-longer"
    assert S.mul_case(sig("", "a"), sig("b", ""))[1] == "top"


def test_leq_examples():
    assert S.leq(sig(["g1"], ["g2"]), sig(["g1", "g"], ["g2", "g"]))
    assert S.leq(sig("a", "b"), TOP)
    assert not S.leq(sig(["g"], []), sig([], ["g"]))
    assert S.leq(BOT, TOP) and S.leq(BOT, sig("a", "")) and not S.leq(sig("a", ""), BOT)
    assert not S.leq(TOP, sig("a", "a"))


def test_join_examples():
    s = sig("a", "b")
    assert S.join(s, s) == s
    assert S.join(s, sig("aa", "ba")) == sig("aa", "ba")
    assert S.join(sig("", "a"), sig("", "b")) is TOP
    assert S.join(BOT, s) == s and S.join(TOP, s) is TOP


def test_strict_compatibility():
    assert S.strictly_compatible(sig(["g1", "g2", "g4"], ["g3", "g4"]), sig(["g3", "g4"], ["g5"]))
    assert S.strictly_compatible(UNIT, UNIT)
    assert not S.strictly_compatible(sig(["g1"], ["g2"]), sig(["g3"], ["g4"]))
    with pytest.raises(ValueError):
        S.strictly_compatible(TOP, UNIT)


def test_align_examples():
    al = S.align(sig(["g1", "g2"], ["g3"]), sig(["g3", "g4"], ["g5"]))
    assert al.left == sig(["g1", "g2", "g4"], ["g3", "g4"])
    assert al.right == sig(["g3", "g4"], ["g5"])
    assert al.lifted == "left" and al.by == ("g4",)
    al = S.align(sig(["g1"], ["g2"]), sig(["g2"], ["g3"]))
    assert al.lifted is None and al.by == ()
    assert S.align(sig(["g1"], ["g2"]), sig(["g3"], ["g4"])) is None


def test_suffix_of_examples():
    assert S.suffix_of(sig(["g1"], ["g2"]), sig(["g1", "g"], ["g2", "g"])) == ("g",)
    s = sig("ab", "a")
    assert S.suffix_of(s, s) == ()
    assert S.suffix_of(sig(["g"], []), sig(["g", "h"], ["h"])) == ("h",)
    assert S.suffix_of(s, TOP) is None


def test_text_roundtrip():
    for s in [UNIT, sig("ab", "b"), TOP, BOT]:
        assert S.parse_sig(S.format_sig(s)) == s
    assert S.format_sig(sig("ab", "")) == "a,b/ε"
    with pytest.raises(ValueError):
        S.parse_sig("a/b/c")


def test_triple_case_examples():
    # already strict everywhere
    assert S.triple_case(sig("a", "b"), sig("b", "c"), sig("c", "")) == 1
    # only the middle one is lifted, on both sides
    assert S.triple_case(sig("", "ab"), sig("", ""), sig("ab", "")) in (4, 5)
    assert S.triple_case(sig("", "a"), sig("b", ""), UNIT) is None


# -- properties ---------------------------------------------------------------


@given(signature, signature, signature)
def test_associativity(a, b, c):
    assert S.mul(S.mul(a, b), c) == S.mul(a, S.mul(b, c))


@given(proper, word, proper, word)
def test_order_compatible(s1, u, s2, v):
    assert S.leq(S.mul(s1, s2), S.mul(S.extend(s1, u), S.extend(s2, v)))


@given(proper, word, word)
def test_linear_below_proper(s, u, v):
    # any two signatures below one proper signature are comparable
    big = S.extend(s, u + v)
    lows = [Sig(big.pop[:k], big.push[: len(big.push) - len(big.pop) + k])
            for k in range(len(big.pop) + 1) if len(big.push) - len(big.pop) + k >= 0]
    lows = [x for x in lows if S.leq(x, big)]
    for x, y in itertools.combinations(lows, 2):
        assert S.leq(x, y) or S.leq(y, x)


@given(signature, signature, signature)
def test_join_distributes(a, b, c):
    assert S.mul(S.join(a, b), c) == S.join(S.mul(a, c), S.mul(b, c))
    assert S.mul(c, S.join(a, b)) == S.join(S.mul(c, a), S.mul(c, b))


@given(proper, proper)
def test_product_invariant_under_alignment(a, b):
    al = S.align(a, b)
    if al is None:
        assert S.mul(a, b) is TOP
    else:
        assert S.strictly_compatible(al.left, al.right)
        assert S.mul(a, b) == S.mul(al.left, al.right)


@given(word, word)
def test_pop_only_signatures_form_a_submonoid(u, v):
    # w/ε signatures multiply like words
    assert S.mul(Sig(u, ()), Sig(v, ())) == Sig(u + v, ())


@given(proper, proper, proper)
def test_every_nontop_triple_has_a_case(a, b, c):
    k = S.triple_case(a, b, c)
    assert (k is None) == (S.mul(S.mul(a, b), c) is TOP)


@given(proper, word)
def test_suffix_of_inverts_extend(s, w):
    assert S.suffix_of(s, S.extend(s, w)) == w


@given(signature, signature)
def test_join_is_least_upper_bound(a, b):
    j = S.join(a, b)
    assert S.leq(a, j) and S.leq(b, j)
    if j is TOP and a is not TOP and b is not TOP:
        # no proper common upper bound exists
        assert not (S.leq(a, b) or S.leq(b, a))


def test_leq_matches_definition_exhaustively():
    sigs = [Sig(u, v) for u in words_upto(2) for v in words_upto(2)]
    tails = list(words_upto(2))
    for s1 in sigs:
        for s2 in sigs:
            expected = any(S.extend(s1, w) == s2 for w in tails)
            assert S.leq(s1, s2) == expected
