"""Relations between stack contents as weights over a one-letter stack.

An unweighted system over ``Gamma`` is run over the alphabet ``{#}``; the
weight at ``#^m/#^n`` is a finite relation between ``Gamma^m`` and
``Gamma^n`` recording which concrete stacks are rewritten into which.
"""

from __future__ import annotations

import itertools
import random
import re
from typing import FrozenSet, Iterable, Tuple

from ..algebra import WeightIndexError, WeightStructure, lift
from ..saturation import WeightedAutomaton, delta, presaturate, reach_regular
from ..signatures import Sig
from ..wpds import Pds, Rule, WeightedPDS

__all__ = [
    "HASH",
    "Relations",
    "relations_ws",
    "encode_pds_as_relations",
    "relation_reach",
    "relation_reach_to",
    "relation_target",
    "parse_relation",
    "format_relation",
]

HASH = "#"

Relation = FrozenSet[Tuple[tuple, tuple]]


def _dims(s: Sig) -> Tuple[int, int]:
    return len(s.pop), len(s.push)


class Relations(WeightStructure):
    locally_bounded = True  # D_{#/eps} is a subset of Gamma x {()}: finite

    def __init__(self, gamma: Iterable):
        self.gamma = tuple(gamma)

    def __repr__(self) -> str:
        return f"Relations({self.gamma!r})"

    @property
    def alphabet(self) -> tuple:
        return (HASH,)

    def zero(self, s):
        return frozenset()

    def unit(self, s):
        m, n = _dims(s)
        if m != n:
            raise WeightIndexError(f"no unit at {s}")
        return frozenset((x, x) for x in itertools.product(self.gamma, repeat=m))

    def add(self, s, a, b):
        return a | b

    def smul(self, s1, s2, a, b):
        if s1.push != s2.pop:
            raise WeightIndexError(f"{s1} and {s2} are not strictly compatible")
        by_mid = {}
        for y, z in b:
            by_mid.setdefault(y, []).append(z)
        return frozenset((x, z) for x, y in a for z in by_mid.get(y, ()))

    def extend(self, s, w, a):
        tails = list(itertools.product(self.gamma, repeat=len(w)))
        return frozenset((x + z, y + z) for x, y in a for z in tails)

    def eq(self, s, a, b) -> bool:
        return a == b

    def contains(self, s, a) -> bool:
        if not isinstance(a, frozenset):
            return False
        m, n = _dims(s)
        g = set(self.gamma)
        return all(len(x) == m and len(y) == n and set(x) <= g and set(y) <= g for x, y in a)

    def sample(self, s, rng: random.Random):
        m, n = _dims(s)
        xs = list(itertools.product(self.gamma, repeat=m))
        ys = list(itertools.product(self.gamma, repeat=n))
        k = rng.choice([0, 1, 1, 2, 3, 4])
        return frozenset((rng.choice(xs), rng.choice(ys)) for _ in range(k))

    def render(self, s, a) -> str:
        return format_relation(a)

    def to_json(self, s, a):
        return [[list(x), list(y)] for x, y in sorted(a)]

    def from_json(self, s, obj):
        return frozenset((tuple(x), tuple(y)) for x, y in obj)


def _word_text(w: tuple) -> str:
    return " ".join(str(x) for x in w) if w else "ε"


def format_relation(a) -> str:
    return "{" + ";".join(f"({_word_text(x)},{_word_text(y)})" for x, y in sorted(a)) + "}"


_PAIR = re.compile(r"\(([^,()]*),([^,()]*)\)")


def _word_of(text: str) -> tuple:
    t = text.strip()
    if t in ("", "ε", "-"):
        return ()
    return tuple(t.split())


def parse_relation(text: str):
    t = text.strip()
    if t.startswith("rel:"):
        t = t[4:].strip()
    if not (t.startswith("{") and t.endswith("}")):
        raise ValueError(f"relation literal must be braced: {text!r}")
    body = t[1:-1].strip()
    if not body:
        return frozenset()
    out = []
    for part in body.split(";"):
        m = _PAIR.fullmatch(part.strip())
        if not m:
            raise ValueError(f"malformed relation pair {part!r}")
        out.append((_word_of(m.group(1)), _word_of(m.group(2))))
    return frozenset(out)


def relations_ws(gamma: Iterable) -> Relations:
    return Relations(gamma)


def encode_pds_as_relations(pds: Pds, name: str = "") -> WeightedPDS:
    """``<p, g> -> <p2, w>`` becomes ``<p, #> -> <p2, #^|w|>`` weighted ``{(g, w)}``."""
    K = lift(Relations(pds.alphabet))
    rules = tuple(Rule(p, HASH, q, (HASH,) * len(w), frozenset({((g,), tuple(w))})) for p, g, q, w in pds.rules)
    return WeightedPDS(pds.states, (HASH,), rules, K, name=name, meta={"gamma": pds.alphabet})


def relation_reach(A, p, w, p2) -> bool:
    """``<p, w>`` reaches ``<p2, eps>`` according to the saturated encoding ``A``."""
    w = tuple(w)
    a = delta(A, p, (HASH,) * len(w), p2)
    return (w, ()) in a


def relation_target(P: WeightedPDS, word) -> WeightedAutomaton:
    """Chain automaton for exactly ``word``: edge ``i`` holds ``{(word[i], eps)}``."""
    word = tuple(word)
    states = tuple(f"t{i}" for i in range(len(word) + 1))
    edges = {(states[i], HASH, states[i + 1]): frozenset({((x,), ())}) for i, x in enumerate(word)}
    return WeightedAutomaton(states, (HASH,), P.semiring, edges, init=states[0], final=(states[-1],))


def relation_reach_to(P: WeightedPDS, p, w, p2, w2) -> bool:
    """Whether ``<p, w>`` reaches ``<p2, w2>`` in the encoded system ``P``."""
    w = tuple(w)
    a = reach_regular(P, relation_target(P, w2), p2, p, (HASH,) * len(w))
    return (w, ()) in a


def relation_reach_table(pds: Pds):
    """Saturate the encoding of ``pds`` once; returns the automaton."""
    return presaturate(encode_pds_as_relations(pds))
