"""Backward saturation over indexed semirings and queries on its result.

The workspace is a weighted automaton whose states are the control states
of the pushdown system and whose edge ``(p, gamma, q)`` carries a weight in
``D_{gamma/eps}``.  A rule ``<p, gamma> -> <p2, w>`` with weight ``a1``
together with a ``w``-path from ``p2`` to ``q`` of weight ``a2`` raises
``E(p, gamma, q)`` by ``a1 ⊗ a2``.  Rules are processed from a worklist and
re-queued whenever an edge labelled by a symbol they push changes.
"""

from __future__ import annotations

import json
import random
from collections import deque
from dataclasses import dataclass, field
from typing import Dict, Hashable, Iterable, List, Optional, Sequence, Tuple

from . import signatures as S
from .algebra import IndexedSemiring
from .signatures import UNIT, Sig
from .wpds import Rule, WeightedPDS

__all__ = [
    "WeightedAutomaton",
    "TraceEvent",
    "WorklistOrder",
    "SaturationResult",
    "NotLocallyBounded",
    "BudgetExceeded",
    "saturate",
    "presaturate",
    "saturate_trace",
    "replay",
    "delta",
    "path_weights",
    "combine",
    "reach_regular",
    "reach_regular_targets",
    "DEFAULT_BUDGET",
]

DEFAULT_BUDGET = 1_000_000


class NotLocallyBounded(ValueError):
    """Saturation was asked to run over a domain without a boundedness claim."""


class BudgetExceeded(RuntimeError):
    def __init__(self, budget: int, edge):
        p, g, q = edge
        super().__init__(f"saturation exceeded its budget of {budget} edge updates; "
                         f"last edge grown: {p} --{g}--> {q}")
        self.budget = budget
        self.edge = edge


def _sym_sig(g) -> Sig:
    return Sig((g,), ())


@dataclass
class WeightedAutomaton:
    """Edges ``(q, gamma, q2)`` weighted in ``D_{gamma/eps}``; absent edges are zero."""

    states: tuple
    alphabet: tuple
    semiring: IndexedSemiring
    edges: Dict[Tuple[Hashable, Hashable, Hashable], object] = field(default_factory=dict)
    init: Optional[Hashable] = None
    final: tuple = ()

    def __post_init__(self):
        self.states = tuple(self.states)
        self.alphabet = tuple(self.alphabet)
        self.final = tuple(self.final)
        st, al = set(self.states), set(self.alphabet)
        for (q, g, r), a in list(self.edges.items()):
            if q not in st or r not in st or g not in al:
                raise ValueError(f"edge {(q, g, r)} mentions an undeclared state or symbol")
            self.semiring.check(_sym_sig(g), a, f"weight of edge {q} --{g}--> {r}")
        if self.init is not None and self.init not in st:
            raise ValueError(f"initial state {self.init!r} is not declared")
        if any(f not in st for f in self.final):
            raise ValueError("final states must be declared")

    def weight(self, q, g, r):
        a = self.edges.get((q, g, r))
        return self.semiring.zero(_sym_sig(g)) if a is None else a

    def out_edges(self, q, g) -> List[Tuple[Hashable, object]]:
        return [(r, a) for (q1, g1, r), a in self.edges.items() if q1 == q and g1 == g]

    def nonzero_edges(self) -> List[Tuple[Tuple[Hashable, Hashable, Hashable], object]]:
        pos = {q: i for i, q in enumerate(self.states)}
        sym = {g: i for i, g in enumerate(self.alphabet)}
        K = self.semiring
        items = [(e, a) for e, a in self.edges.items() if not K.is_zero(_sym_sig(e[1]), a)]
        items.sort(key=lambda ea: (pos[ea[0][0]], sym[ea[0][1]], pos[ea[0][2]]))
        return items

    def same_as(self, other: "WeightedAutomaton") -> bool:
        """Edge-wise equality up to zero entries."""
        if set(self.states) != set(other.states):
            return False
        K = self.semiring
        keys = set(self.edges) | set(other.edges)
        return all(K.eq(_sym_sig(k[1]), self.weight(*k), other.weight(*k)) for k in keys)

    def has_incoming(self, q) -> bool:
        K = self.semiring
        return any(e[2] == q and not K.is_zero(_sym_sig(e[1]), a) for e, a in self.edges.items())

    # -- dumps ---------------------------------------------------------------

    def dump(self) -> str:
        K = self.semiring
        lines = [f"{q} --{g}|{K.render(_sym_sig(g), a)}--> {r}" for (q, g, r), a in self.nonzero_edges()]
        return "\n".join(lines) + ("\n" if lines else "")

    def to_json_obj(self) -> dict:
        K = self.semiring
        obj = {
            "states": [str(q) for q in self.states],
            "alphabet": [str(g) for g in self.alphabet],
            "edges": [
                {"src": str(q), "sym": str(g), "dst": str(r), "weight": K.to_json(_sym_sig(g), a)}
                for (q, g, r), a in self.nonzero_edges()
            ],
        }
        if self.init is not None:
            obj["init"] = str(self.init)
        if self.final:
            obj["final"] = [str(q) for q in self.final]
        return obj

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), ensure_ascii=False, indent=2) + "\n"

    @classmethod
    def from_json(cls, text_or_obj, semiring: IndexedSemiring) -> "WeightedAutomaton":
        obj = json.loads(text_or_obj) if isinstance(text_or_obj, str) else text_or_obj
        edges = {}
        for e in obj["edges"]:
            g = e["sym"]
            edges[(e["src"], g, e["dst"])] = semiring.from_json(_sym_sig(g), e["weight"])
        return cls(tuple(obj["states"]), tuple(obj["alphabet"]), semiring, edges,
                   obj.get("init"), tuple(obj.get("final", ())))


@dataclass(frozen=True)
class TraceEvent:
    rule_index: int
    rule: Rule
    edge: Tuple[Hashable, Hashable, Hashable]
    old: object
    new: object

    def render(self, K: IndexedSemiring) -> str:
        p, g, q = self.edge
        s = _sym_sig(g)
        return f"[rule {self.rule_index}] {p} --{g}--> {q}: {K.render_safe(s, self.old)} => {K.render_safe(s, self.new)}"


@dataclass(frozen=True)
class WorklistOrder:
    """Deterministic worklist policy: optional seeded shuffle of rule priority,
    and first-in-first-out or last-in-first-out processing."""

    seed: Optional[int] = None
    policy: str = "fifo"

    def __post_init__(self):
        if self.policy not in ("fifo", "lifo"):
            raise ValueError(f"unknown worklist policy {self.policy!r}")


@dataclass
class SaturationResult:
    automaton: WeightedAutomaton
    trace: List[TraceEvent]
    updates: int
    rule_firings: int


def path_weights(K: IndexedSemiring, edges_out, p, word: Sequence) -> Dict[Hashable, object]:
    """Weights of ``word``-paths from ``p``: ``{q: a}`` with ``a`` in ``D_{word/eps}``.

    ``edges_out(q, g)`` lists ``(q2, weight)`` pairs.  Zero entries are dropped.
    """
    vec: Dict[Hashable, object] = {p: K.one()}
    prefix: tuple = ()
    for g in word:
        s1 = Sig(prefix, ())
        s2 = _sym_sig(g)
        prefix = prefix + (g,)
        s = Sig(prefix, ())
        nxt: Dict[Hashable, object] = {}
        for q1, a in vec.items():
            for q2, b in edges_out(q1, g):
                c = K.mul(s1, s2, a, b)
                nxt[q2] = K.add(s, nxt[q2], c) if q2 in nxt else c
        vec = {q: a for q, a in nxt.items() if not K.is_zero(s, a)}
        if not vec:
            break
    return vec


def _edge_index(A: WeightedAutomaton):
    out: Dict[Tuple[Hashable, Hashable], Dict[Hashable, object]] = {}
    for (q, g, r), a in A.edges.items():
        out.setdefault((q, g), {})[r] = a
    return out


def delta(A: WeightedAutomaton, p, word: Sequence, p2):
    """``⊕`` over ``word``-paths from ``p`` to ``p2`` of their weights."""
    K = A.semiring
    word = tuple(word)
    s = Sig(word, ())
    idx = _edge_index(A)
    vec = path_weights(K, lambda q, g: list(idx.get((q, g), {}).items()), p, word)
    return vec.get(p2, K.zero(s))


def saturate(P: WeightedPDS, order: Optional[WorklistOrder] = None, budget: int = DEFAULT_BUDGET,
             trace: bool = False) -> SaturationResult:
    K = P.semiring
    if not getattr(K, "locally_bounded", False):
        raise NotLocallyBounded(f"{K!r} does not declare local boundedness; refusing to saturate")
    order = order or WorklistOrder()
    rules = list(P.rules)
    n = len(rules)
    prio = list(range(n))
    if order.seed is not None:
        random.Random(order.seed).shuffle(prio)
    ranked = sorted(range(n), key=lambda i: prio[i])  # processing order of rule indices

    # edges[(q, g)] -> {q2: weight}; only nonzero entries are stored
    edges: Dict[Tuple[Hashable, Hashable], Dict[Hashable, object]] = {}
    readers: Dict[Hashable, List[int]] = {}
    for i in ranked:
        for g in set(rules[i].push):
            readers.setdefault(g, []).append(i)

    state_pos = {q: k for k, q in enumerate(P.states)}
    work: deque = deque(ranked)
    queued = set(ranked)
    events: List[TraceEvent] = []
    updates = 0
    firings = 0

    def out(q, g):
        return list(edges.get((q, g), {}).items())

    while work:
        i = work.popleft() if order.policy == "fifo" else work.pop()
        queued.discard(i)
        r = rules[i]
        firings += 1
        vec = path_weights(K, out, r.dst, r.push)
        if not vec:
            continue
        s_edge = _sym_sig(r.sym)
        s_path = Sig(r.push, ())
        changed = False
        row = edges.setdefault((r.src, r.sym), {})
        for q in sorted(vec, key=state_pos.__getitem__):
            inc = K.mul(r.sig, s_path, r.weight, vec[q])
            old = row.get(q)
            new = inc if old is None else K.add(s_edge, old, inc)
            if old is None:
                if K.is_zero(s_edge, new):
                    continue
            elif K.eq(s_edge, old, new):
                continue
            row[q] = new
            updates += 1
            changed = True
            if trace:
                events.append(TraceEvent(i, r, (r.src, r.sym, q), K.zero(s_edge) if old is None else old, new))
            if updates > budget:
                raise BudgetExceeded(budget, (r.src, r.sym, q))
        if changed:
            for j in readers.get(r.sym, ()):
                if j not in queued:
                    queued.add(j)
                    work.append(j)
    flat = {(q, g, q2): a for (q, g), row in edges.items() for q2, a in row.items()}
    A = WeightedAutomaton(P.states, P.alphabet, K, flat)
    return SaturationResult(A, events, updates, firings)


def presaturate(P: WeightedPDS, order: Optional[WorklistOrder] = None, budget: int = DEFAULT_BUDGET) -> WeightedAutomaton:
    return saturate(P, order=order, budget=budget).automaton


def saturate_trace(P: WeightedPDS, order: Optional[WorklistOrder] = None, budget: int = DEFAULT_BUDGET) -> List[TraceEvent]:
    return saturate(P, order=order, budget=budget, trace=True).trace


def replay(P: WeightedPDS, events: Iterable[TraceEvent]) -> WeightedAutomaton:
    edges = {}
    for ev in events:
        edges[ev.edge] = ev.new
    return WeightedAutomaton(P.states, P.alphabet, P.semiring, edges)


# -- regular targets --------------------------------------------------------


def _fresh(name, taken: set) -> str:
    cand = f"{name}'"
    while cand in taken:
        cand += "'"
    return cand


def combine(P: WeightedPDS, A: WeightedAutomaton, p2) -> Tuple[WeightedPDS, Dict[Hashable, Hashable]]:
    """Glue ``A`` onto ``P`` with its initial state identified with ``p2``.

    Every edge of ``A`` becomes a popping rule between renamed automaton
    states.  Returns the combined system and the state renaming.
    """
    if A.init is None:
        raise ValueError("target automaton needs an initial state")
    if p2 not in P.states:
        raise ValueError(f"unknown control state {p2!r}")
    if A.has_incoming(A.init):
        raise ValueError(f"target automaton has incoming edges into its initial state {A.init!r}")
    if A.semiring is not P.semiring:
        raise ValueError("target automaton and system must share one indexed semiring")
    taken = set(P.states)
    ren: Dict[Hashable, Hashable] = {}
    for q in A.states:
        if q == A.init:
            ren[q] = p2
        else:
            ren[q] = _fresh(q, taken)
            taken.add(ren[q])
    extra = tuple(ren[q] for q in A.states if q != A.init)
    alphabet = tuple(P.alphabet) + tuple(g for g in A.alphabet if g not in P.alphabet)
    rules = list(P.rules)
    for (q, g, r), a in A.nonzero_edges():
        rules.append(Rule(ren[q], g, ren[r], (), a))
    C = WeightedPDS(P.states + extra, alphabet, tuple(rules), P.semiring, name=P.name, meta=dict(P.meta))
    return C, ren


def reach_regular(P: WeightedPDS, A: WeightedAutomaton, p2, p, word: Sequence,
                  order: Optional[WorklistOrder] = None, budget: int = DEFAULT_BUDGET):
    """Weight of reaching ``<p2, v>`` with ``v`` accepted by ``A`` from ``<p, word>``."""
    C, ren = combine(P, A, p2)
    sat = presaturate(C, order=order, budget=budget)
    K = P.semiring
    word = tuple(word)
    s = Sig(word, ())
    idx = _edge_index(sat)
    vec = path_weights(K, lambda q, g: list(idx.get((q, g), {}).items()), p, word)
    total = K.zero(s)
    for f in A.final:
        if ren[f] in vec:
            total = K.add(s, total, vec[ren[f]])
    return total


def reach_regular_targets(P: WeightedPDS, targets: Iterable[Tuple[Hashable, WeightedAutomaton]], p, word: Sequence,
                          budget: int = DEFAULT_BUDGET):
    """``⊕`` of :func:`reach_regular` over several ``(p2, A)`` targets."""
    K = P.semiring
    s = Sig(tuple(word), ())
    total = K.zero(s)
    for p2, A in targets:
        total = K.add(s, total, reach_regular(P, A, p2, p, word, budget=budget))
    return total
