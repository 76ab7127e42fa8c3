"""Weighted pushdown systems and their two transition semantics.

``sig_transitions`` derives weighted transitions between control states
labelled with stack signatures; ``config_transitions`` walks concrete
configurations, converting rule weights to the untouched stack tail.
``check_prop_conv`` compares the two enumerations.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Hashable, Iterable, List, NamedTuple, Optional, Sequence, Tuple

from . import signatures as S
from .algebra import IndexedSemiring
from .signatures import TOP, UNIT, Sig

__all__ = [
    "Rule",
    "Pds",
    "WeightedPDS",
    "Config",
    "sig_transitions",
    "config_transitions",
    "check_prop_conv",
    "PropConvReport",
    "Mismatch",
]


@dataclass(frozen=True)
class Rule:
    """``<src, sym> -> <dst, push>`` carrying ``weight`` in ``D_{sym/push}``."""

    src: Hashable
    sym: Hashable
    dst: Hashable
    push: tuple
    weight: object = None

    @property
    def sig(self) -> Sig:
        return Sig((self.sym,), self.push)

    def __str__(self) -> str:
        return f"<{self.src}, {self.sym}> -> <{self.dst}, {S.format_word(self.push)}>"


@dataclass(frozen=True)
class Pds:
    """An unweighted pushdown system; rules are ``(p, gamma, p2, push)`` tuples."""

    states: tuple
    alphabet: tuple
    rules: tuple

    def __post_init__(self):
        object.__setattr__(self, "states", tuple(self.states))
        object.__setattr__(self, "alphabet", tuple(self.alphabet))
        object.__setattr__(self, "rules", tuple((p, g, q, tuple(w)) for p, g, q, w in self.rules))
        st, al = set(self.states), set(self.alphabet)
        for p, g, q, w in self.rules:
            if p not in st or q not in st:
                raise ValueError(f"rule {(p, g, q, w)} uses an undeclared state")
            if g not in al or any(x not in al for x in w):
                raise ValueError(f"rule {(p, g, q, w)} uses an undeclared stack symbol")


@dataclass
class WeightedPDS:
    states: tuple
    alphabet: tuple
    rules: tuple
    semiring: IndexedSemiring
    name: str = ""
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        self.states = tuple(self.states)
        self.alphabet = tuple(self.alphabet)
        self.rules = tuple(self.rules)
        if len(set(self.states)) != len(self.states):
            raise ValueError("duplicate control states")
        st, al = set(self.states), set(self.alphabet)
        for r in self.rules:
            if r.src not in st or r.dst not in st:
                raise ValueError(f"rule {r} uses an undeclared state")
            if r.sym not in al or any(x not in al for x in r.push):
                raise ValueError(f"rule {r} uses an undeclared stack symbol")
            self.semiring.check(r.sig, r.weight, f"weight of rule {r}")

    def rules_from(self, p, sym) -> List[Rule]:
        return [r for r in self.rules if r.src == p and r.sym == sym]


class Config(NamedTuple):
    state: Hashable
    stack: tuple

    def __str__(self) -> str:
        return f"<{self.state}, {S.format_word(self.stack)}>"


SigTable = Dict[Tuple[Hashable, Hashable, Sig], object]


def _collapse_into(S_: IndexedSemiring, table: SigTable, key, s, a) -> bool:
    """``table[key] ⊕= a``; True when the entry changed."""
    if key in table:
        old = table[key]
        new = S_.add(s, old, a)
        if S_.eq(s, old, new):
            return False
        table[key] = new
        return True
    table[key] = a
    return True


def sig_transitions(P: WeightedPDS, depth: int) -> SigTable:
    """Signature-level transitions using at most ``depth`` rule applications.

    Returns ``{(p, p2, sigma): weight}`` with duplicates merged by ``⊕``.
    Any bracketing of a chain of rule steps yields the same signature and
    weight (associativity), and a chain is derivable exactly when its full
    product is not TOP, so chains are extended one rule at a time.
    """
    K = P.semiring
    frontier: SigTable = {(p, p, UNIT): K.one() for p in P.states}
    out: SigTable = dict(frontier)
    by_src: Dict[Hashable, List[Rule]] = {}
    for r in P.rules:
        by_src.setdefault(r.src, []).append(r)
    for _ in range(depth):
        nxt: SigTable = {}
        for (p, q, s), a in frontier.items():
            for r in by_src.get(q, ()):
                s2 = S.mul(s, r.sig)
                if s2 is TOP:
                    continue
                b = K.mul(s, r.sig, a, r.weight)
                _collapse_into(K, nxt, (p, r.dst, s2), s2, b)
        for (p, q, s), a in nxt.items():
            _collapse_into(K, out, (p, q, s), s, a)
        frontier = nxt
        if not frontier:
            break
    return out


def config_transitions(P: WeightedPDS, start: Config, depth: int, stack_cap: int = 12) -> Dict[Config, object]:
    """Configurations reachable from ``start`` in at most ``depth`` steps.

    The weight of ``<p2, w2>`` lives in ``D_{w/w2}`` where ``w`` is the start
    stack.  Configurations with stacks longer than ``stack_cap`` are dropped.
    """
    K = P.semiring
    start = Config(start[0], tuple(start[1]))
    w = start.stack
    s0 = Sig(w, w)
    frontier: Dict[Config, object] = {start: K.convert(UNIT, s0, K.one())}
    out = dict(frontier)
    for _ in range(depth):
        nxt: Dict[Config, object] = {}
        for c, a in frontier.items():
            if not c.stack:
                continue
            top, rest = c.stack[0], c.stack[1:]
            for r in P.rules_from(c.state, top):
                stack = r.push + rest
                if len(stack) > stack_cap:
                    continue
                step_sig = Sig(c.stack, stack)
                b = K.convert(r.sig, step_sig, r.weight)
                total = K.mul(Sig(w, c.stack), step_sig, a, b)
                d = Config(r.dst, stack)
                s = Sig(w, stack)
                if d in nxt:
                    nxt[d] = K.add(s, nxt[d], total)
                else:
                    nxt[d] = total
        for c, a in nxt.items():
            s = Sig(w, c.stack)
            out[c] = K.add(s, out[c], a) if c in out else a
        frontier = nxt
        if not frontier:
            break
    return out


@dataclass(frozen=True)
class Mismatch:
    start: Config
    target: Config
    config_weight: str
    sig_weight: str
    reason: str


@dataclass
class PropConvReport:
    depth: int
    starts: int
    pairs_checked: int
    mismatches: List[Mismatch]

    @property
    def ok(self) -> bool:
        return not self.mismatches


def _words(alphabet: Sequence, max_len: int) -> Iterable[tuple]:
    import itertools

    for n in range(max_len + 1):
        yield from itertools.product(alphabet, repeat=n)


def check_prop_conv(P: WeightedPDS, depth: int, max_start: int = 2,
                    starts: Optional[Iterable[Config]] = None) -> PropConvReport:
    """Compare configuration-level weights with converted signature-level ones.

    For every start ``<p, w>`` and every configuration ``<p2, w2>`` the
    configuration semantics gives weight ``a`` within ``depth`` steps iff
    the ``⊕`` over signature transitions ``sigma <= w/w2`` of the converted
    weights is ``a``.  No stack cap applies: it is set above the largest
    stack reachable in ``depth`` steps.
    """
    K = P.semiring
    sigs = sig_transitions(P, depth)
    grow = max([len(r.push) - 1 for r in P.rules] + [0])
    if starts is None:
        starts = [Config(p, w) for p in P.states for w in _words(P.alphabet, max_start)]
    starts = list(starts)
    mismatches: List[Mismatch] = []
    checked = 0
    for c in starts:
        w = c.stack
        cap = len(w) + depth * grow
        conf = config_transitions(P, c, depth, stack_cap=cap)
        expected: Dict[Config, object] = {}
        for (p, p2, s), a in sigs.items():
            if p != c.state or not (len(s.pop) <= len(w) and w[: len(s.pop)] == s.pop):
                continue
            tail = w[len(s.pop):]
            target = Config(p2, s.push + tail)
            big = Sig(w, target.stack)
            conv = K.convert(s, big, a)
            expected[target] = K.add(big, expected[target], conv) if target in expected else conv
        for t in set(conf) | set(expected):
            checked += 1
            s = Sig(w, t.stack)
            a, b = conf.get(t), expected.get(t)
            if a is None or b is None:
                # a missing side is fine only when the other weight is zero
                present = a if a is not None else b
                if K.is_zero(s, present):
                    continue
                reason = "only in configuration semantics" if b is None else "only in signature semantics"
                mismatches.append(Mismatch(c, t, K.render_safe(s, a) if a is not None else "-",
                                           K.render_safe(s, b) if b is not None else "-", reason))
            elif not K.eq(s, a, b):
                mismatches.append(Mismatch(c, t, K.render_safe(s, a), K.render_safe(s, b), "weights differ"))
    return PropConvReport(depth, len(starts), checked, mismatches)
