"""Coverability for pushdown systems over a well-quasi-ordered stack alphabet.

The concrete system rewrites the top symbol ``x`` with a monotone partial
map ``phi`` (``<p, x v> -> <p2, phi(x) v>``).  It is simulated over the
one-letter stack ``{#}``: the weight at ``#^m/#^n`` is a function from
``Gamma^n`` to upward-closed subsets of ``Gamma^m``, read as "the start
stacks from which some stack above the argument is reachable".

Functions with an empty argument (``n = 0``) are plain ideals and are
stored eagerly.  Functions of positive arity are kept as small terms and
evaluated pointwise on demand.  All terms built here are antitone, which
is what lets composition be evaluated on generators only:
``(f1 ⊙ f2)(x) = ∪ { f1(g) | g minimal in f2(x) }``.

Equality at ``n = 0`` is exact.  At ``n > 0`` it compares the two
functions on every argument for a finite order and on a finite grid of
arguments for vector orders (see ``probe_bound``).
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from functools import lru_cache
from typing import Hashable, Iterable, List, Optional, Tuple

from .. import wqo as W
from ..algebra import WeightIndexError, WeightStructure, lift
from ..saturation import WeightedAutomaton, reach_regular
from ..signatures import Sig
from ..wpds import Rule, WeightedPDS
from ..wqo import EMPTY, MonotoneTransfer, UpSet, Wqo

__all__ = [
    "HASH",
    "Wspds",
    "IdealFunctions",
    "Term",
    "Const",
    "ZeroF",
    "UnitF",
    "RuleF",
    "ExtF",
    "ComposeF",
    "UnionF",
    "wspds_ws",
    "cover",
    "cover_target",
    "evaluate",
]

HASH = "#"


@dataclass(frozen=True)
class Wspds:
    """States, an ordered alphabet and rules ``(p, p2, phi)``."""

    states: tuple
    order: Wqo
    rules: Tuple[Tuple[Hashable, Hashable, MonotoneTransfer], ...]

    def __post_init__(self):
        object.__setattr__(self, "states", tuple(self.states))
        object.__setattr__(self, "rules", tuple(self.rules))
        st = set(self.states)
        for p, q, _ in self.rules:
            if p not in st or q not in st:
                raise ValueError(f"rule {(p, q)} uses an undeclared state")


# -- function terms ---------------------------------------------------------
#
# ``m`` is the length of the stacks in the result ideals and ``n`` the
# length of the argument.


class Term:
    m: int
    n: int


def _term(cls):
    """Frozen dataclass whose hash is computed once; terms nest deeply and
    serve as cache keys during evaluation."""
    cls = dataclass(frozen=True)(cls)
    field_hash = cls.__hash__

    def __hash__(self):
        h = self.__dict__.get("_hash")
        if h is None:
            h = field_hash(self)
            object.__setattr__(self, "_hash", h)
        return h

    cls.__hash__ = __hash__
    return cls


@_term
class Const(Term):
    """A function of the empty argument, i.e. one ideal of ``Gamma^m``."""

    m: int
    ideal: UpSet

    @property
    def n(self) -> int:
        return 0


@_term
class ZeroF(Term):
    m: int
    n: int


@_term
class UnitF(Term):
    m: int

    @property
    def n(self) -> int:
        return self.m


@_term
class RuleF(Term):
    """``w -> phi^-1(up{w})`` for a transfer of arity ``n``."""

    phi: MonotoneTransfer

    @property
    def m(self) -> int:
        return 1

    @property
    def n(self) -> int:
        return self.phi.arity


@_term
class ExtF(Term):
    """``(y, z) -> f(y) × up{z}`` with ``|z| = k``."""

    f: Term
    k: int

    @property
    def m(self) -> int:
        return self.f.m + self.k

    @property
    def n(self) -> int:
        return self.f.n + self.k


@_term
class ComposeF(Term):
    f1: Term
    f2: Term

    @property
    def m(self) -> int:
        return self.f1.m

    @property
    def n(self) -> int:
        return self.f2.n


@_term
class UnionF(Term):
    f1: Term
    f2: Term

    @property
    def m(self) -> int:
        return self.f1.m

    @property
    def n(self) -> int:
        return self.f1.n


def evaluate(words: Wqo, f: Term, x: tuple) -> UpSet:
    """The ideal ``f(x)``; ``words`` is the componentwise order on tuples."""
    return _eval(words, f, tuple(x))


@lru_cache(maxsize=200_000)
def _eval(words: Wqo, f: Term, x: tuple) -> UpSet:
    if isinstance(f, Const):
        return f.ideal
    if isinstance(f, ZeroF):
        return EMPTY
    if isinstance(f, UnitF):
        return UpSet((x,))
    if isinstance(f, RuleF):
        pre = W.preimage(f.phi, UpSet((x,)))
        return UpSet(tuple((g,) for g in pre.gens))
    if isinstance(f, ExtF):
        y, z = x[: len(x) - f.k], x[len(x) - f.k:]
        return W.product_up(words, _eval(words, f.f, y), UpSet((z,)))
    if isinstance(f, ComposeF):
        acc = EMPTY
        for g in _eval(words, f.f2, x).gens:
            acc = W.union_up(words, acc, _eval(words, f.f1, g))
        return acc
    if isinstance(f, UnionF):
        return W.union_up(words, _eval(words, f.f1, x), _eval(words, f.f2, x))
    raise TypeError(f"not a function term: {f!r}")


class IdealFunctions(WeightStructure):
    """Ideal-valued antitone functions indexed by ``#^m/#^n``."""

    # D_{#/eps} is the set of ideals of Gamma, where every ascending chain
    # stabilises because the order is a WQO.
    locally_bounded = True

    def __init__(self, order: Wqo, transfers: Iterable[MonotoneTransfer] = (), probe_bound: int = 3):
        self.order = order
        self.words = W.TupleOrder(order)
        self.transfers = tuple(transfers)
        self.probe_bound = probe_bound

    def __repr__(self) -> str:
        return f"IdealFunctions({self.order!r})"

    @property
    def alphabet(self) -> tuple:
        return (HASH,)

    @staticmethod
    def _dims(s: Sig) -> Tuple[int, int]:
        return len(s.pop), len(s.push)

    def _norm(self, f: Term) -> Term:
        # results without an argument are evaluated right away
        if f.n == 0 and not isinstance(f, Const):
            return Const(f.m, evaluate(self.words, f, ()))
        return f

    def zero(self, s):
        m, n = self._dims(s)
        return Const(m, EMPTY) if n == 0 else ZeroF(m, n)

    def unit(self, s):
        m, n = self._dims(s)
        if m != n:
            raise WeightIndexError(f"no unit at {s}")
        return Const(0, UpSet(((),))) if m == 0 else UnitF(m)

    def add(self, s, a, b):
        if isinstance(a, Const) and isinstance(b, Const):
            return Const(a.m, W.union_up(self.words, a.ideal, b.ideal))
        if isinstance(a, ZeroF) or a == b:
            return b
        if isinstance(b, ZeroF):
            return a
        return UnionF(a, b)

    def smul(self, s1, s2, a, b):
        if s1.push != s2.pop:
            raise WeightIndexError(f"{s1} and {s2} are not strictly compatible")
        if isinstance(a, ZeroF) or isinstance(b, ZeroF):
            return self.zero(Sig(s1.pop, s2.push))
        if isinstance(a, UnitF):
            return b
        if isinstance(b, UnitF):
            return a
        return self._norm(ComposeF(a, b))

    def extend(self, s, w, a):
        k = len(w)
        if k == 0:
            return a
        if isinstance(a, ZeroF) or (isinstance(a, Const) and not a.ideal):
            return ZeroF(a.m + k, a.n + k)
        if isinstance(a, UnitF):
            return UnitF(a.m + k)
        if isinstance(a, Const) and a.m == 0 and a.ideal:
            return UnitF(k)
        if isinstance(a, ExtF):
            return ExtF(a.f, a.k + k)
        return ExtF(a, k)

    def probes(self, n: int) -> List[tuple]:
        return [tuple(x) for x in itertools.product(self.order.probe(self.probe_bound), repeat=n)]

    def eq(self, s, a, b) -> bool:
        if a == b:
            return True
        if isinstance(a, Const) and isinstance(b, Const):
            return a.ideal == b.ideal
        n = self._dims(s)[1]
        return all(evaluate(self.words, a, x) == evaluate(self.words, b, x) for x in self.probes(n))

    def contains(self, s, a) -> bool:
        if not isinstance(a, Term):
            return False
        m, n = self._dims(s)
        if a.m != m or a.n != n:
            return False
        if isinstance(a, Const):
            return all(len(g) == m for g in a.ideal.gens)
        return True

    def sample(self, s, rng: random.Random, depth: int = 2):
        m, n = self._dims(s)
        return self._sample(m, n, rng, depth)

    def _random_ideal(self, m: int, rng: random.Random) -> UpSet:
        k = rng.choice([0, 1, 1, 2, 3])
        gens = [tuple(self.order.sample(rng, 2) for _ in range(m)) for _ in range(k)]
        return W.up(self.words, gens)

    def _random_transfer(self, n: int, rng: random.Random) -> Optional[MonotoneTransfer]:
        pool = [t for t in self.transfers if t.arity == n]
        if pool and rng.random() < 0.7:
            return rng.choice(pool)
        if isinstance(self.order, W.VectorOrder):
            k = self.order.k
            guard = [rng.randint(0, 2) for _ in range(k)]
            deltas = [[rng.randint(0, 2) for _ in range(k)] for _ in range(n)]
            return W.VectorTransfer(self.order, guard, deltas)
        if isinstance(self.order, W.FiniteOrder):
            elems = list(self.order.elements)
            for _ in range(20):
                dom = [x for x in elems if rng.random() < 0.7]
                mapping = {x: tuple(rng.choice(elems) for _ in range(n)) for x in dom}
                try:
                    return W.FiniteTransfer(self.order, mapping, arity=n)
                except W.NotMonotone:
                    continue
            # constant maps on the whole alphabet are always monotone
            img = tuple(rng.choice(elems) for _ in range(n))
            return W.FiniteTransfer(self.order, {x: img for x in elems}, arity=n)
        return pool[0] if pool else None

    def _sample(self, m: int, n: int, rng: random.Random, depth: int) -> Term:
        if n == 0:
            if m == 0:
                return Const(0, rng.choice([EMPTY, UpSet(((),))]))
            if depth > 0 and rng.random() < 0.3:
                k = rng.randint(0, 2)
                return self._norm(ComposeF(self._sample(m, k, rng, depth - 1), self._sample(k, 0, rng, depth - 1)))
            return Const(m, self._random_ideal(m, rng))
        options = ["zero"]
        if m == n:
            options.append("unit")
        if m >= 1:
            options.append("ext")
        if m == 1:
            options += ["rule", "rule"]
        if depth > 0:
            options += ["compose", "union"]
        choice = rng.choice(options)
        if choice == "zero":
            return ZeroF(m, n)
        if choice == "unit":
            return UnitF(m)
        if choice == "rule":
            phi = self._random_transfer(n, rng)
            if phi is not None:
                return RuleF(phi)
            return ZeroF(m, n)
        if choice == "ext":
            k = rng.randint(1, min(m, n))
            return self.extend(Sig((HASH,) * (m - k), (HASH,) * (n - k)), (HASH,) * k,
                               self._sample(m - k, n - k, rng, max(depth - 1, 0)))
        if choice == "compose":
            k = rng.randint(0, 2)
            return self.smul(Sig((HASH,) * m, (HASH,) * k), Sig((HASH,) * k, (HASH,) * n),
                             self._sample(m, k, rng, depth - 1), self._sample(k, n, rng, depth - 1))
        return self.add(Sig((HASH,) * m, (HASH,) * n), self._sample(m, n, rng, depth - 1),
                        self._sample(m, n, rng, depth - 1))

    def render_ideal(self, ideal: UpSet) -> str:
        return "up{" + ";".join(self.words.render(g) for g in ideal.gens) + "}"

    def render(self, s, a) -> str:
        if isinstance(a, Const):
            return self.render_ideal(a.ideal)
        return _render_term(a)

    def to_json(self, s, a):
        if isinstance(a, Const):
            return [self.words.render(g) for g in a.ideal.gens]
        return _render_term(a)

    def from_json(self, s, obj):
        m, n = self._dims(s)
        if n != 0 or not isinstance(obj, list):
            raise ValueError("only argument-free ideal functions have a JSON form")
        return Const(m, W.up(self.words, [self.words.parse(t) for t in obj]))


def _render_term(f: Term) -> str:
    if isinstance(f, Const):
        return f"const{f.m}"
    if isinstance(f, ZeroF):
        return "zero"
    if isinstance(f, UnitF):
        return "id"
    if isinstance(f, RuleF):
        return f"inv({f.phi!r})"
    if isinstance(f, ExtF):
        return f"ext{f.k}({_render_term(f.f)})"
    if isinstance(f, ComposeF):
        return f"({_render_term(f.f1)} . {_render_term(f.f2)})"
    if isinstance(f, UnionF):
        return f"({_render_term(f.f1)} + {_render_term(f.f2)})"
    return repr(f)


def wspds_ws(system: Wspds, probe_bound: int = 3, name: str = "") -> Tuple[IdealFunctions, WeightedPDS]:
    """Each rule ``(p, p2, phi)`` of arity ``i`` becomes ``<p, #> -> <p2, #^i>``
    weighted by ``w -> phi^-1(up{w})``."""
    ws = IdealFunctions(system.order, [phi for *_, phi in system.rules], probe_bound=probe_bound)
    K = lift(ws)
    rules = tuple(Rule(p, HASH, q, (HASH,) * phi.arity, RuleF(phi)) for p, q, phi in system.rules)
    return ws, WeightedPDS(system.states, (HASH,), rules, K, name=name)


def cover_target(P: WeightedPDS, word) -> WeightedAutomaton:
    """Chain automaton whose ``i``-th edge is weighted ``up{word[i]}``."""
    word = tuple(word)
    K = P.semiring
    states = tuple(f"t{i}" for i in range(len(word) + 1))
    edges = {(states[i], HASH, states[i + 1]): Const(1, UpSet(((x,),))) for i, x in enumerate(word)}
    return WeightedAutomaton(states, (HASH,), K, edges, init=states[0], final=(states[-1],))


def cover_ideal(P: WeightedPDS, p2, target, p, m: int) -> UpSet:
    """Ideal of start stacks of length ``m`` at ``p`` that can cover ``<p2, target>``."""
    a = reach_regular(P, cover_target(P, target), p2, p, (HASH,) * m)
    return a.ideal


def cover(P: WeightedPDS, start: Tuple[Hashable, tuple], target: Tuple[Hashable, tuple]) -> bool:
    """Whether ``<start>`` reaches some configuration at the target's state
    whose stack dominates the target stack letter by letter."""
    p, w = start
    p2, t = target
    ws: IdealFunctions = P.semiring.ws
    ideal = cover_ideal(P, p2, tuple(t), p, len(w))
    return W.member(ws.words, ideal, tuple(w))
