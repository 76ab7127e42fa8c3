"""Minimum stack height of computations.

``D_{w/w'}`` holds naturals at least ``max(|w|, |w'|)`` plus infinity;
addition is ``min`` (so smaller values are more informative), strict
multiplication is ``max``, and conversion by a tail ``v`` adds ``|v|``.
"""

from __future__ import annotations

import math
import random

from ..algebra import WeightIndexError, WeightStructure, lift
from ..signatures import Sig
from ..wpds import Pds, Rule, WeightedPDS

__all__ = ["INF", "MinHeight", "minheight_ws", "minheight_semiring", "minheight_pds", "parse_height"]

INF = math.inf


def _floor(s: Sig) -> int:
    return max(len(s.pop), len(s.push))


class MinHeight(WeightStructure):
    # Below any value b of D_{g/eps} only the finitely many naturals in
    # [1, b] remain, so no strictly increasing chain (under min) is infinite.
    locally_bounded = True

    def __init__(self, alphabet=("g",)):
        self._alphabet = tuple(alphabet)

    def __repr__(self) -> str:
        return "MinHeight()"

    @property
    def alphabet(self) -> tuple:
        return self._alphabet

    def zero(self, s):
        return INF

    def unit(self, s):
        if s.pop != s.push:
            raise WeightIndexError(f"no unit at {s}")
        return len(s.pop)

    def add(self, s, a, b):
        return min(a, b)

    def smul(self, s1, s2, a, b):
        if s1.push != s2.pop:
            raise WeightIndexError(f"{s1} and {s2} are not strictly compatible")
        return max(a, b)

    def extend(self, s, w, a):
        return a + len(w)

    def eq(self, s, a, b) -> bool:
        return a == b

    def contains(self, s, a) -> bool:
        if a == INF:
            return True
        return isinstance(a, int) and not isinstance(a, bool) and a >= _floor(s)

    def sample(self, s, rng: random.Random):
        if rng.random() < 0.15:
            return INF
        return _floor(s) + rng.randint(0, 4)

    def render(self, s, a) -> str:
        return "∞" if a == INF else str(a)

    def to_json(self, s, a):
        return "inf" if a == INF else a

    def from_json(self, s, obj):
        if obj in ("inf", "∞"):
            return INF
        if isinstance(obj, int):
            return obj
        raise ValueError(f"not a height: {obj!r}")


def minheight_ws(alphabet=("g",)) -> MinHeight:
    return MinHeight(alphabet)


def minheight_semiring(alphabet=("g",)):
    return lift(MinHeight(alphabet))


def parse_height(text: str):
    t = text.strip()
    if t.startswith("h:"):
        t = t[2:]
    if t in ("inf", "∞"):
        return INF
    v = int(t)
    if v < 0:
        raise ValueError("heights are natural numbers")
    return v


def minheight_pds(pds: Pds, name: str = "") -> WeightedPDS:
    """Each rule ``<p, g> -> <p2, w>`` gets weight ``max(1, |w|)``."""
    K = minheight_semiring(pds.alphabet)
    rules = tuple(Rule(p, g, q, w, max(1, len(w))) for p, g, q, w in pds.rules)
    return WeightedPDS(pds.states, pds.alphabet, rules, K, name=name)
