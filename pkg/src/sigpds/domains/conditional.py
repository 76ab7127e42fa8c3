"""Conditional pushdown systems: rules guarded by a regular stack condition.

A rule ``<p, g> -> <p2, w>`` with condition ``R`` fires on ``<p, g v>`` only
when ``v`` is in ``R``.  The weight of a computation is the language of
tails under which it is possible: addition is union, strict
multiplication intersection and conversion by a tail ``u`` the left
quotient ``u^-1``.  Values are canonical automata drawn from a finite
set closed under these operations, computed before saturation.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import FrozenSet, Hashable, Iterable, Optional, Tuple

from .. import reglang as R
from ..algebra import WeightIndexError, WeightStructure, lift
from ..reglang import Dfa
from ..saturation import WeightedAutomaton, reach_regular
from ..signatures import Sig
from ..wpds import Rule, WeightedPDS

__all__ = [
    "ConditionalPDS",
    "Conditions",
    "conditional_ws",
    "cond_reach",
    "cond_target",
    "OutsideClosure",
]


class OutsideClosure(AssertionError):
    """A computed condition is not in the precomputed closure."""


@dataclass(frozen=True)
class ConditionalPDS:
    states: tuple
    alphabet: tuple
    rules: Tuple[Tuple[Hashable, Hashable, Hashable, tuple, Dfa], ...]

    def __post_init__(self):
        object.__setattr__(self, "states", tuple(self.states))
        object.__setattr__(self, "alphabet", tuple(self.alphabet))
        object.__setattr__(self, "rules", tuple((p, g, q, tuple(w), c) for p, g, q, w, c in self.rules))


class Conditions(WeightStructure):
    """Canonical automata over ``gamma``; every result is checked against ``closure``."""

    def __init__(self, gamma: Iterable, closure: Optional[FrozenSet[Dfa]] = None):
        self.gamma = R._norm_alphabet(gamma)
        self.closure = closure
        self.locally_bounded = closure is not None
        self._zero = R.empty(self.gamma)
        self._one = R.universal(self.gamma)
        self._pool = sorted(closure, key=lambda d: (d.n, repr(d.trans), sorted(d.accept))) if closure else None

    def __repr__(self) -> str:
        size = len(self.closure) if self.closure is not None else "unbounded"
        return f"Conditions({self.gamma!r}, closure={size})"

    @property
    def alphabet(self) -> tuple:
        return self.gamma

    def _in(self, a: Dfa) -> Dfa:
        if self.closure is not None and a not in self.closure:
            raise OutsideClosure(f"condition {a!r} escaped the precomputed closure")
        return a

    def zero(self, s):
        return self._zero

    def unit(self, s):
        if s.pop != s.push:
            raise WeightIndexError(f"no unit at {s}")
        return self._one

    def add(self, s, a, b):
        return self._in(R.union(a, b))

    def smul(self, s1, s2, a, b):
        if s1.push != s2.pop:
            raise WeightIndexError(f"{s1} and {s2} are not strictly compatible")
        return self._in(R.intersect(a, b))

    def extend(self, s, w, a):
        return self._in(R.quotient(tuple(w), a))

    def eq(self, s, a, b) -> bool:
        return a == b

    def contains(self, s, a) -> bool:
        if not isinstance(a, Dfa) or a.alphabet != self.gamma:
            return False
        return self.closure is None or a in self.closure

    def sample(self, s, rng: random.Random):
        if self._pool:
            return rng.choice(self._pool)
        # without a closure, draw small random automata
        n = rng.randint(1, 3)
        edges = [(q, x, rng.randrange(n)) for q in range(n) for x in self.gamma if rng.random() < 0.85]
        acc = [q for q in range(n) if rng.random() < 0.5]
        return R.from_table(self.gamma, n, edges, 0, acc)

    def render(self, s, a) -> str:
        if a == self._zero:
            return "∅"
        if a == self._one:
            return "Γ*"
        return "dfa[" + R.format_dfa(a).replace("\n", "; ") + "]"

    def to_json(self, s, a):
        return R.format_dfa(a)

    def from_json(self, s, obj):
        return R.parse_dfa(obj)


def conditional_ws(system: ConditionalPDS, cap: int = 10_000, name: str = "") -> Tuple[Conditions, WeightedPDS]:
    """Close the rule conditions and treat each rule's condition as its weight."""
    conds = [c for *_, c in system.rules]
    gamma = R._norm_alphabet(system.alphabet)
    for c in conds:
        if c.alphabet != gamma:
            raise R.AlphabetMismatch(f"condition over {c.alphabet} but the stack alphabet is {gamma}")
    D = R.language_closure(conds, gamma, cap=cap)
    ws = Conditions(gamma, D)
    K = lift(ws)
    rules = tuple(Rule(p, g, q, w, c) for p, g, q, w, c in system.rules)
    return ws, WeightedPDS(system.states, system.alphabet, rules, K, name=name)


def cond_target(P: WeightedPDS, word) -> WeightedAutomaton:
    """Chain automaton accepting exactly ``word`` with edges weighted ``Gamma*``."""
    word = tuple(word)
    K = P.semiring
    states = tuple(f"t{i}" for i in range(len(word) + 1))
    edges = {(states[i], g, states[i + 1]): K.ws.unit(Sig((), ())) for i, g in enumerate(word)}
    return WeightedAutomaton(states, P.alphabet, K, edges, init=states[0], final=(states[-1],))


def cond_reach(P: WeightedPDS, p1, w1, p2, w2) -> bool:
    """Whether ``<p1, w1>`` reaches ``<p2, w2>`` in the conditional system."""
    a = reach_regular(P, cond_target(P, w2), p2, p1, tuple(w1))
    return R.membership(a, ())
