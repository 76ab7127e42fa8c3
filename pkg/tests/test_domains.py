from __future__ import annotations

import itertools
import random
from pathlib import Path

import pytest

from gen import AB, COND_POOL, TR_POOL, random_conditional, random_discrete_wspds, random_trpds, words
from oracles import bfs_reach, cond_step, forward_cover, prestar_reaches, random_pds, tr_step, vector_successors
from sigpds import reglang as R
from sigpds import wqo as W
from sigpds.domains import (ConditionalPDS, TrPDS, Wspds, cond_reach, conditional_ws, cover, encode_pds_as_relations,
                            minheight_pds, relation_reach, tr_reach, trpds_ws, wspds_ws)
from sigpds.domains.conditional import OutsideClosure
from sigpds.domains.relations import HASH, relation_reach_to
from sigpds.domains.trpds import ClosureNotFinite
from sigpds.fileformat import build, load_system
from sigpds.saturation import delta, presaturate, saturate
from sigpds.signatures import UNIT, Sig
from sigpds.wpds import Pds

SYSTEMS = Path(__file__).resolve().parent.parent / "systems"


def load(name):
    return build(load_system(SYSTEMS / name))


def edge_histories(res):
    hist = {}
    for ev in res.trace:
        hist.setdefault(ev.edge, []).append(ev.new)
    return hist


# -- min-height -----------------------------------------------------------------


def test_minheight_edges_only_decrease_and_stay_above_one():
    for seed in range(20):
        states, syms, rules = random_pds(random.Random(seed))
        res = saturate(minheight_pds(Pds(states, syms, rules)), trace=True)
        for hist in edge_histories(res).values():
            assert all(b < a for a, b in zip(hist, hist[1:]))
            assert hist[-1] >= 1


# -- relations --------------------------------------------------------------------


@pytest.mark.parametrize("seed", range(10))
def test_relations_agree_with_classic_prestar(seed):
    states, syms, rules = random_pds(random.Random(seed))
    A = presaturate(encode_pds_as_relations(Pds(states, syms, rules)))
    for p, p2 in itertools.product(states, repeat=2):
        for w in words(syms, 3):
            assert relation_reach(A, p, w, p2) == prestar_reaches(rules, p, w, p2)


@pytest.mark.parametrize("seed", range(5))
def test_relations_reach_exact_targets(seed):
    states, syms, rules = random_pds(random.Random(100 + seed), max_states=3, max_syms=2)
    P = encode_pds_as_relations(Pds(states, syms, rules))
    for p, p2 in itertools.product(states, repeat=2):
        for w2 in words(syms, 2):
            chain = ([(i, x, i + 1) for i, x in enumerate(w2)], 0, [len(w2)])
            for w in words(syms, 2):
                assert relation_reach_to(P, p, w, p2, w2) == prestar_reaches(rules, p, w, p2, chain)


def test_relation_edges_hold_single_symbol_pops():
    # D_{#/eps} only ever contains pairs (γ, ε): a finite carrier
    for seed in range(10):
        states, syms, rules = random_pds(random.Random(seed))
        res = saturate(encode_pds_as_relations(Pds(states, syms, rules)), trace=True)
        for hist in edge_histories(res).values():
            assert all(a < b for a, b in zip(hist, hist[1:]))
            assert all(len(u) == 1 and v == () for u, v in hist[-1])
            assert len(hist) <= len(syms)


# -- conditional --------------------------------------------------------------------


def test_universal_conditions_behave_as_plain_pds():
    for seed in range(10):
        states, syms, rules = random_pds(random.Random(seed), max_syms=2)
        syms = list(AB)
        rules = [(p, AB[int(g[1:]) % 2], q, tuple(AB[int(x[1:]) % 2] for x in w)) for p, g, q, w in rules]
        _, P = conditional_ws(ConditionalPDS(states, syms, [r + (R.universal(AB),) for r in rules]))
        for p, p2 in itertools.product(states, repeat=2):
            for w in words(AB, 2):
                assert cond_reach(P, p, w, p2, ()) == prestar_reaches(rules, p, w, p2)


def test_conditional_fixture():
    P = load("conditional_guard.pds").P
    # `a` pops only above b*, then q pops the b's
    assert cond_reach(P, "p", ("a", "b", "b"), "q", ())
    assert not cond_reach(P, "p", ("a", "a"), "q", ("a",))
    # p pushes an a over b, which may then be popped
    assert cond_reach(P, "p", ("b",), "q", ("b",))


def _compare(reach, step, states, n_targets=2):
    checked = excluded = 0
    for p2 in states:
        for w2 in words(AB, n_targets):
            for p in states:
                for w in words(AB, 2):
                    got = reach(p, w, p2, w2)
                    found, complete = bfs_reach(step, (p, w), (p2, w2), stack_cap=4, depth_cap=12)
                    if found:
                        assert got, (p, w, p2, w2)
                    elif complete:
                        assert not got, (p, w, p2, w2)
                    elif got:
                        excluded += 1
                    checked += 1
    return checked, excluded


@pytest.mark.parametrize("seed", range(6))
def test_conditional_agrees_with_bfs(seed):
    system, named, member = random_conditional(random.Random(seed))
    ws, P = conditional_ws(system)
    _compare(lambda p, w, p2, w2: cond_reach(P, p, w, p2, w2), cond_step(named, member), system.states, 1)


def test_conditional_edge_weights_stay_in_the_closure():
    system, _, _ = random_conditional(random.Random(3))
    ws, P = conditional_ws(system)
    A = presaturate(P)
    assert all(a in ws.closure for _, a in A.nonzero_edges())


def test_value_outside_closure_is_caught():
    ws, _ = conditional_ws(ConditionalPDS(["p"], AB, [("p", "a", "p", (), COND_POOL["a*"][1])]))
    with pytest.raises((OutsideClosure, ValueError)):
        ws.add(Sig(("a",), ()), COND_POOL["a*"][1], COND_POOL["even"][1])


# -- TrPDS ------------------------------------------------------------------------


def test_identity_transductions_behave_as_plain_pds():
    ident = R.identity(AB)
    for seed in range(10):
        states, _, rules = random_pds(random.Random(seed), max_syms=2)
        rules = [(p, AB[int(g[1:]) % 2], q, tuple(AB[int(x[1:]) % 2] for x in w)) for p, g, q, w in rules]
        _, P = trpds_ws(TrPDS(states, AB, [r + (ident,) for r in rules]))
        for p, p2 in itertools.product(states, repeat=2):
            for w in words(AB, 2):
                assert tr_reach(P, p, w, p2, ()) == prestar_reaches(rules, p, w, p2)


def test_trpds_fixture():
    P = load("trpds_swap.pds").P
    assert tr_reach(P, "p", ("a", "b", "a"), "q", ("a", "b"))
    assert not tr_reach(P, "p", ("a", "b", "a"), "q", ("b", "a"))


@pytest.mark.parametrize("seed", range(6))
def test_trpds_agrees_with_bfs(seed):
    system, named, member = random_trpds(random.Random(seed))
    ws, P = trpds_ws(system)
    _compare(lambda p, w, p2, w2: tr_reach(P, p, w, p2, w2), tr_step(named, AB, member), system.states, 1)


def test_transduction_closure_cap_names_the_hypothesis():
    t = TR_POOL["swap_first"][1]
    with pytest.raises(ClosureNotFinite, match="finiteness"):
        trpds_ws(TrPDS(["p"], AB, [("p", "a", "p", (), t), ("p", "b", "p", (), TR_POOL["to_a"][1])]), cap=3)


# -- WSPDS ------------------------------------------------------------------------

N2_RULES = [("p", "p", (1, 1), [(0, 1), (1, 0)]), ("p", "q", (0, 0), [(0, 0)]), ("q", "q", (0, 1), []),
            ("q", "r", (2, 0), [(0, 0)]), ("r", "r", (1, 0), [])]
N2_START = ("p", ((3, 3), (2, 1)))


def test_empty_system_delta_is_unit():
    _, P = wspds_ws(Wspds(["p"], W.VectorOrder(2), []))
    A = presaturate(P)
    d = delta(A, "p", (), "p")
    assert P.semiring.eq(UNIT, d, P.semiring.one())
    assert cover(P, ("p", ()), ("p", ()))
    assert cover(P, ("p", ((1, 1),)), ("p", ((0, 1),)))
    assert not cover(P, ("p", ((1, 1),)), ("p", ((2, 1),)))


def test_vector_fixture_frozen_targets():
    P = load("wspds_n2.pds").P
    assert cover(P, N2_START, ("r", ((1, 2), (2, 1))))
    assert not cover(P, N2_START, ("r", ((0, 2), (3, 0))))


def test_vector_fixture_covers_every_forward_step():
    P = load("wspds_n2.pds").P
    rng = random.Random(0)
    for _ in range(25):
        w = tuple((rng.randint(0, 3), rng.randint(0, 3)) for _ in range(rng.randint(1, 2)))
        start = (rng.choice("pqr"), w)
        frontier, seen = [start], {start}
        for _ in range(2):
            frontier = [d for c in frontier for d in vector_successors(N2_RULES, c) if d not in seen]
            seen.update(frontier)
        for c in seen:
            assert cover(P, start, c)


def test_vector_fixture_agrees_with_forward_search_on_small_targets():
    P = load("wspds_n2.pds").P
    for p2 in "pqr":
        for n in range(3):
            for t in itertools.product(itertools.product(range(3), repeat=2), repeat=n):
                covered, exhausted = forward_cover(N2_RULES, N2_START, (p2, t))
                assert exhausted
                assert cover(P, N2_START, (p2, t)) == covered


@pytest.mark.parametrize("seed", range(8))
def test_discrete_order_cover_is_reachability(seed):
    system, syms, rules = random_discrete_wspds(random.Random(seed))
    _, P = wspds_ws(system)
    for p, p2 in itertools.product(system.states, repeat=2):
        for w2 in words(syms, 1):
            chain = ([(i, x, i + 1) for i, x in enumerate(w2)], 0, [len(w2)])
            for w in words(syms, 2):
                assert cover(P, (p, w), (p2, w2)) == prestar_reaches(rules, p, w, p2, chain)


def test_ideal_chains_on_edges_stabilise():
    res = saturate(load("wspds_n2.pds").P, trace=True)
    assert res.updates < 1000
    K = res.automaton.semiring
    s = Sig((HASH,), ())
    for hist in edge_histories(res).values():
        for a, b in zip(hist, hist[1:]):
            assert K.leq_weight(s, a, b) and not K.eq(s, a, b)
