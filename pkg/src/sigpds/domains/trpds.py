"""Pushdown systems whose rules rewrite the rest of the stack with a transducer.

A rule ``<p, g> -> <p2, w>`` labelled by a letter-to-letter transduction
``t`` moves ``<p, g v>`` to ``<p2, w v'>`` for any ``(v, v') in t``.  The
simulation runs over the one-letter stack ``{#}``; the weight at
``#^m/#^n`` maps a pair of concrete words ``(u1, u2)`` with
``|u1| = m, |u2| = n`` to the transduction still to be applied to the
untouched tails.  Only non-empty entries are stored.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Dict, FrozenSet, Hashable, Iterable, Optional, Tuple

from .. import reglang as R
from ..algebra import WeightIndexError, WeightStructure, lift
from ..reglang import Dfa, FailureTooLarge
from ..saturation import WeightedAutomaton, reach_regular
from ..signatures import Sig
from ..wpds import Rule, WeightedPDS

__all__ = [
    "HASH",
    "TrPDS",
    "TrFun",
    "TransductionFunctions",
    "trpds_ws",
    "rule_weight",
    "tr_reach",
    "tr_target",
    "ClosureNotFinite",
]

HASH = "#"


class ClosureNotFinite(FailureTooLarge):
    """The transduction closure exceeded its cap (the finiteness hypothesis may fail)."""


@dataclass(frozen=True)
class TrPDS:
    states: tuple
    alphabet: tuple
    rules: Tuple[Tuple[Hashable, Hashable, Hashable, tuple, Dfa], ...]

    def __post_init__(self):
        object.__setattr__(self, "states", tuple(self.states))
        object.__setattr__(self, "alphabet", tuple(self.alphabet))
        object.__setattr__(self, "rules", tuple((p, g, q, tuple(w), t) for p, g, q, w, t in self.rules))


class TrFun:
    """Finite map ``(u1, u2) -> transduction`` with empty entries omitted."""

    __slots__ = ("items", "_hash")

    def __init__(self, entries: Iterable[Tuple[Tuple[tuple, tuple], Dfa]] = ()):
        self.items: FrozenSet = frozenset((k, t) for k, t in entries if t.accept)
        self._hash = hash(self.items)

    @classmethod
    def from_dict(cls, d: Dict[Tuple[tuple, tuple], Dfa]) -> "TrFun":
        return cls(d.items())

    def as_dict(self) -> Dict[Tuple[tuple, tuple], Dfa]:
        return dict(self.items)

    def get(self, key, default=None):
        for k, t in self.items:
            if k == key:
                return t
        return default

    def __eq__(self, other) -> bool:
        return isinstance(other, TrFun) and self.items == other.items

    def __hash__(self) -> int:
        return self._hash

    def __len__(self) -> int:
        return len(self.items)

    def __repr__(self) -> str:
        return f"TrFun({len(self.items)} entries)"


class TransductionFunctions(WeightStructure):
    """Weights over ``{#}`` valued in a finite closed set of transductions."""

    def __init__(self, gamma: Iterable, closure: Optional[FrozenSet[Dfa]] = None):
        self.gamma = R._norm_alphabet(gamma)
        self.pairs = R.pair_alphabet(self.gamma)
        self.closure = closure
        self.locally_bounded = closure is not None  # D_{#/eps} maps into a finite set
        self._zero_t = R.empty(self.pairs)
        self._id = R.identity(self.gamma)
        self._pool = sorted(closure, key=lambda d: (d.n, repr(d.trans), sorted(d.accept))) if closure else None

    def __repr__(self) -> str:
        size = len(self.closure) if self.closure is not None else "open"
        return f"TransductionFunctions({self.gamma!r}, closure={size})"

    @property
    def alphabet(self) -> tuple:
        return (HASH,)

    @staticmethod
    def _dims(s: Sig) -> Tuple[int, int]:
        return len(s.pop), len(s.push)

    def zero(self, s):
        return TrFun()

    def unit(self, s):
        m, n = self._dims(s)
        if m != n:
            raise WeightIndexError(f"no unit at {s}")
        return TrFun(((u, u), self._id) for u in itertools.product(self.gamma, repeat=m))

    def add(self, s, a, b):
        d = a.as_dict()
        for k, t in b.items:
            d[k] = R.union(d[k], t) if k in d else t
        return TrFun.from_dict(d)

    def smul(self, s1, s2, a, b):
        if s1.push != s2.pop:
            raise WeightIndexError(f"{s1} and {s2} are not strictly compatible")
        by_mid: Dict[tuple, list] = {}
        for (u2, u3), t in b.items:
            by_mid.setdefault(u2, []).append((u3, t))
        out: Dict[Tuple[tuple, tuple], Dfa] = {}
        for (u1, u2), t1 in a.items:
            for u3, t2 in by_mid.get(u2, ()):
                c = R.compose(t1, t2)
                if not c.accept:
                    continue
                k = (u1, u3)
                out[k] = R.union(out[k], c) if k in out else c
        return TrFun.from_dict(out)

    def extend(self, s, w, a):
        for _ in range(len(w)):
            out: Dict[Tuple[tuple, tuple], Dfa] = {}
            for (u1, u2), t in a.items:
                for g1, g2 in self.pairs:
                    q = R.pair_quotient((g1, g2), t)
                    if q.accept:
                        out[(u1 + (g1,), u2 + (g2,))] = q
            a = TrFun.from_dict(out)
        return a

    def eq(self, s, a, b) -> bool:
        return a == b

    def contains(self, s, a) -> bool:
        if not isinstance(a, TrFun):
            return False
        m, n = self._dims(s)
        g = set(self.gamma)
        for (u1, u2), t in a.items:
            if len(u1) != m or len(u2) != n or not set(u1) <= g or not set(u2) <= g:
                return False
            if t.alphabet != self.pairs or (self.closure is not None and t not in self.closure):
                return False
        return True

    def _random_t(self, rng: random.Random) -> Dfa:
        if self._pool:
            return rng.choice(self._pool)
        return rng.choice([self._id, self._zero_t, R.universal(self.pairs)])

    def sample(self, s, rng: random.Random):
        m, n = self._dims(s)
        us = list(itertools.product(self.gamma, repeat=m))
        vs = list(itertools.product(self.gamma, repeat=n))
        k = rng.choice([0, 1, 1, 2, 3])
        d: Dict = {}
        for _ in range(k):
            key = (rng.choice(us), rng.choice(vs))
            t = self._random_t(rng)
            d[key] = R.union(d[key], t) if key in d else t
        return TrFun.from_dict(d)

    def _t_name(self, t: Dfa) -> str:
        if t == self._id:
            return "id"
        if t == R.universal(self.pairs):
            return "all"
        return "dfa[" + R.format_dfa(t).replace("\n", "; ") + "]"

    def render(self, s, a) -> str:
        parts = []
        for (u1, u2), t in sorted(a.items, key=lambda kt: kt[0]):
            parts.append(f"({_w(u1)},{_w(u2)})->{self._t_name(t)}")
        return "{" + "; ".join(parts) + "}"

    def to_json(self, s, a):
        return [[list(u1), list(u2), R.format_dfa(t)] for (u1, u2), t in sorted(a.items, key=lambda kt: kt[0])]

    def from_json(self, s, obj):
        return TrFun(((tuple(u1), tuple(u2)), R.parse_dfa(t)) for u1, u2, t in obj)


def _w(u: tuple) -> str:
    return " ".join(str(x) for x in u) if u else "ε"


def rule_weight(t: Dfa, g, w: tuple) -> TrFun:
    """The single-entry map ``(g, w) -> t``."""
    return TrFun([(((g,), tuple(w)), t)])


def trpds_ws(system: TrPDS, cap: int = 10_000, name: str = "") -> Tuple[TransductionFunctions, WeightedPDS]:
    gamma = R._norm_alphabet(system.alphabet)
    pairs = R.pair_alphabet(gamma)
    seeds = [t for *_, t in system.rules]
    for t in seeds:
        if t.alphabet != pairs:
            raise R.AlphabetMismatch(f"transduction over {t.alphabet} but expected pairs over {gamma}")
    try:
        T = R.closure(seeds, gamma, cap=cap)
    except FailureTooLarge as e:
        raise ClosureNotFinite(e.size, e.cap, "transduction closure (finiteness of the closed set of "
                                              "transductions is required for this analysis)") from None
    ws = TransductionFunctions(gamma, T)
    K = lift(ws)
    rules = tuple(Rule(p, HASH, q, (HASH,) * len(w), rule_weight(t, g, w)) for p, g, q, w, t in system.rules)
    return ws, WeightedPDS(system.states, (HASH,), rules, K, name=name, meta={"gamma": gamma})


def tr_target(P: WeightedPDS, word) -> WeightedAutomaton:
    """Chain automaton for exactly ``word``: edge ``i`` maps ``(word[i], eps)`` to the identity."""
    word = tuple(word)
    K = P.semiring
    ws: TransductionFunctions = K.ws
    states = tuple(f"t{i}" for i in range(len(word) + 1))
    edges = {(states[i], HASH, states[i + 1]): TrFun([(((x,), ()), ws._id)]) for i, x in enumerate(word)}
    return WeightedAutomaton(states, (HASH,), K, edges, init=states[0], final=(states[-1],))


def tr_reach(P: WeightedPDS, p1, w1, p2, w2) -> bool:
    """Whether ``<p1, w1>`` reaches ``<p2, w2>`` in the transducer system."""
    w1 = tuple(w1)
    a = reach_regular(P, tr_target(P, w2), p2, p1, (HASH,) * len(w1))
    t = a.get((w1, ()))
    return t is not None and R.membership(t, ())
