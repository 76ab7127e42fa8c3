"""Well-quasi-orders, upward-closed sets and monotone transfer functions.

An upward-closed set is stored as the antichain of its minimal elements,
sorted by the order's ``key`` so equal sets compare equal.  Two orders are
provided: an explicit finite order (reflexive-transitive closure of an
edge list) and N^k under the pointwise order, the latter being a genuine
infinite WQO by Dickson's lemma.  Words over an order are compared
componentwise by :class:`TupleOrder`.
"""

from __future__ import annotations

import abc
import itertools
import re
from dataclasses import dataclass
from typing import Dict, Hashable, Iterable, List, Mapping, Optional, Sequence, Tuple

__all__ = [
    "Wqo",
    "FiniteOrder",
    "VectorOrder",
    "TupleOrder",
    "UpSet",
    "EMPTY",
    "up",
    "union_up",
    "member",
    "product_up",
    "subset_up",
    "MonotoneTransfer",
    "FiniteTransfer",
    "VectorTransfer",
    "NotMonotone",
    "preimage",
]


class NotMonotone(ValueError):
    pass


class Wqo(abc.ABC):
    @abc.abstractmethod
    def leq(self, x, y) -> bool: ...

    @abc.abstractmethod
    def key(self, x): ...

    @abc.abstractmethod
    def render(self, x) -> str: ...

    @abc.abstractmethod
    def parse(self, text: str): ...

    @abc.abstractmethod
    def probe(self, bound: int = 2) -> List:
        """A finite set of elements to compare functions on."""

    def sample(self, rng, bound: int = 3):
        return rng.choice(self.probe(bound))


class FiniteOrder(Wqo):
    """Finite set ordered by the reflexive-transitive closure of ``edges``.

    Any quasi-order on a finite set is a WQO: an infinite sequence repeats
    some element.
    """

    def __init__(self, elements: Sequence[Hashable], edges: Iterable[Tuple[Hashable, Hashable]] = ()):
        self.elements = tuple(elements)
        if len(set(self.elements)) != len(self.elements):
            raise ValueError("duplicate elements in finite order")
        self.edges = tuple(tuple(e) for e in edges)
        edges = self.edges
        pos = {e: i for i, e in enumerate(self.elements)}
        n = len(self.elements)
        reach = [[i == j for j in range(n)] for i in range(n)]
        for a, b in edges:
            if a not in pos or b not in pos:
                raise ValueError(f"edge {(a, b)} mentions an unknown element")
            reach[pos[a]][pos[b]] = True
        for k in range(n):
            for i in range(n):
                if reach[i][k]:
                    row_k = reach[k]
                    row_i = reach[i]
                    for j in range(n):
                        if row_k[j]:
                            row_i[j] = True
        self._pos = pos
        self._reach = reach

    @classmethod
    def discrete(cls, elements: Sequence[Hashable]) -> "FiniteOrder":
        return cls(elements)

    def leq(self, x, y) -> bool:
        return self._reach[self._pos[x]][self._pos[y]]

    def key(self, x):
        return self._pos[x]

    def render(self, x) -> str:
        return str(x)

    def parse(self, text: str):
        t = text.strip()
        if t not in self._pos:
            raise ValueError(f"unknown element {t!r}")
        return t

    def probe(self, bound: int = 2) -> List:
        return list(self.elements)

    def __repr__(self) -> str:
        return f"FiniteOrder({self.elements!r})"


class VectorOrder(Wqo):
    """N^k with the pointwise order."""

    def __init__(self, k: int):
        self.k = k

    def leq(self, x, y) -> bool:
        return all(a <= b for a, b in zip(x, y))

    def key(self, x):
        return tuple(x)

    def render(self, x) -> str:
        return "(" + ",".join(str(v) for v in x) + ")"

    def parse(self, text: str):
        t = text.strip()
        if not (t.startswith("(") and t.endswith(")")):
            raise ValueError(f"malformed vector {text!r}")
        vals = tuple(int(v) for v in t[1:-1].split(",") if v.strip() != "")
        if len(vals) != self.k or any(v < 0 for v in vals):
            raise ValueError(f"expected a vector of {self.k} naturals, got {text!r}")
        return vals

    def probe(self, bound: int = 2) -> List:
        return list(itertools.product(range(bound + 1), repeat=self.k))

    def sample(self, rng, bound: int = 3):
        return tuple(rng.randint(0, bound) for _ in range(self.k))

    def __repr__(self) -> str:
        return f"VectorOrder({self.k})"


class TupleOrder(Wqo):
    """Words over a base order, compared letter by letter (equal length only)."""

    _VEC = re.compile(r"\([^)]*\)")

    def __init__(self, base: Wqo):
        self.base = base

    def leq(self, x, y) -> bool:
        if len(x) != len(y):
            return False
        bl = self.base.leq
        return all(bl(a, b) for a, b in zip(x, y))

    def key(self, x):
        if isinstance(self.base, VectorOrder):
            return (len(x), x)
        return (len(x), tuple(self.base.key(a) for a in x))

    def render(self, x) -> str:
        if not x:
            return "ε"
        if isinstance(self.base, VectorOrder):
            return "".join(self.base.render(a) for a in x)
        return ",".join(self.base.render(a) for a in x)

    def parse(self, text: str):
        t = text.strip()
        if t in ("", "ε", "-"):
            return ()
        if isinstance(self.base, VectorOrder):
            parts = self._VEC.findall(t)
            # vectors may be juxtaposed or separated by commas or spaces
            if self._VEC.sub("", t).strip(", ") != "":
                raise ValueError(f"malformed vector word {text!r}")
            return tuple(self.base.parse(p) for p in parts)
        return tuple(self.base.parse(p) for p in t.split(","))

    def probe(self, bound: int = 2, length: int = 1) -> List:
        return [tuple(w) for w in itertools.product(self.base.probe(bound), repeat=length)]

    def __eq__(self, other) -> bool:
        return isinstance(other, TupleOrder) and other.base is self.base

    def __hash__(self) -> int:
        return hash(("tuple", id(self.base)))


@dataclass(frozen=True)
class UpSet:
    """Upward closure of a finite antichain ``gens`` (empty means the empty set)."""

    gens: Tuple = ()

    def __bool__(self) -> bool:
        return bool(self.gens)

    def __len__(self) -> int:
        return len(self.gens)

    def __iter__(self):
        return iter(self.gens)


EMPTY = UpSet(())


def up(order: Wqo, xs: Iterable) -> UpSet:
    """Minimal elements of ``xs``; among equivalent elements the least key wins."""
    items = set(xs)
    if len(items) <= 1:
        return UpSet(tuple(items))
    items = sorted(items, key=order.key)
    mins: List = []
    for x in items:
        if any(order.leq(m, x) for m in mins):
            continue
        mins = [m for m in mins if not order.leq(x, m)]
        mins.append(x)
    mins.sort(key=order.key)
    return UpSet(tuple(mins))


def union_up(order: Wqo, a: UpSet, b: UpSet) -> UpSet:
    if not a:
        return b
    if not b:
        return a
    return up(order, a.gens + b.gens)


def member(order: Wqo, a: UpSet, x) -> bool:
    return any(order.leq(g, x) for g in a.gens)


def subset_up(order: Wqo, a: UpSet, b: UpSet) -> bool:
    """``up(a) <= up(b)``: every generator of ``a`` lies above one of ``b``."""
    return all(member(order, b, g) for g in a.gens)


def product_up(order: Wqo, a: UpSet, b: UpSet) -> UpSet:
    """Product of two ideals of words, generators concatenated pairwise."""
    if not a or not b:
        return EMPTY
    return up(order, (x + z for x in a.gens for z in b.gens))


# -- monotone transfers -----------------------------------------------------


class MonotoneTransfer(abc.ABC):
    """Partial map Γ -> Γ^arity that is monotone on the order."""

    arity: int

    @abc.abstractmethod
    def apply(self, x) -> Optional[tuple]: ...

    @abc.abstractmethod
    def preimage(self, target: UpSet) -> UpSet:
        """``{x | apply(x) defined and in up(target)}`` as an ideal of Γ."""


class FiniteTransfer(MonotoneTransfer):
    def __init__(self, order: FiniteOrder, mapping: Mapping[Hashable, Sequence[Hashable]], arity: Optional[int] = None):
        self.order = order
        self.mapping: Dict = {x: tuple(w) for x, w in mapping.items()}
        lengths = {len(w) for w in self.mapping.values()}
        if arity is None:
            if len(lengths) != 1:
                raise ValueError("cannot infer the arity of a transfer with mixed or no images")
            arity = lengths.pop()
        elif lengths - {arity}:
            raise ValueError(f"images must all have length {arity}")
        self.arity = arity
        self.words = TupleOrder(order)
        for x in order.elements:
            if x not in self.mapping:
                continue
            for y in order.elements:
                if order.leq(x, y):
                    if y not in self.mapping or not self.words.leq(self.mapping[x], self.mapping[y]):
                        raise NotMonotone(f"transfer is not monotone at {x!r} <= {y!r}")

    def apply(self, x):
        return self.mapping.get(x)

    def preimage(self, target: UpSet) -> UpSet:
        if not target:
            return EMPTY
        hits = [x for x, w in self.mapping.items() if member(self.words, target, w)]
        return up(self.order, hits)

    def _key(self):
        return (self.arity, frozenset(self.mapping.items()))

    def __eq__(self, other) -> bool:
        return isinstance(other, FiniteTransfer) and other.order is self.order and other._key() == self._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def __repr__(self) -> str:
        items = ", ".join(f"{x}->{','.join(map(str, w)) or 'ε'}" for x, w in sorted(self.mapping.items(), key=lambda kv: self.order.key(kv[0])))
        return f"map[{items}]"


class VectorTransfer(MonotoneTransfer):
    """``v -> (v - guard + d_1, ..., v - guard + d_i)`` whenever ``v >= guard``."""

    def __init__(self, order: VectorOrder, guard: Sequence[int], deltas: Sequence[Sequence[int]]):
        self.order = order
        self.guard = tuple(guard)
        self.deltas = tuple(tuple(d) for d in deltas)
        if len(self.guard) != order.k or any(len(d) != order.k for d in self.deltas):
            raise ValueError("guard and deltas must have the order's dimension")
        if any(v < 0 for v in self.guard) or any(v < 0 for d in self.deltas for v in d):
            raise ValueError("guard and deltas must be non-negative")
        self.arity = len(self.deltas)

    def apply(self, x):
        if not self.order.leq(self.guard, x):
            return None
        return tuple(tuple(a - g + d for a, g, d in zip(x, self.guard, dj)) for dj in self.deltas)

    def preimage(self, target: UpSet) -> UpSet:
        gens = []
        for t in target.gens:
            low = list(self.guard)
            for tj, dj in zip(t, self.deltas):
                for c in range(self.order.k):
                    low[c] = max(low[c], tj[c] + self.guard[c] - dj[c])
            gens.append(tuple(low))
        return up(self.order, gens)

    def __eq__(self, other) -> bool:
        return isinstance(other, VectorTransfer) and (other.guard, other.deltas) == (self.guard, self.deltas)

    def __hash__(self) -> int:
        return hash((self.guard, self.deltas))

    def __repr__(self) -> str:
        return f"vec[guard={self.guard}, deltas={list(self.deltas)}]"


def preimage(phi: MonotoneTransfer, target: UpSet) -> UpSet:
    if any(len(t) != phi.arity for t in target.gens):
        raise ValueError(f"target words must have length {phi.arity}")
    return phi.preimage(target)
