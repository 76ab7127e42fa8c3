"""Indexed semirings over stack signatures and the constructions between them.

Two interfaces live here.  :class:`WeightStructure` is the small contract a
weight domain implements: per-index addition, multiplication only on
strictly compatible indices, indexed units and conversions along ``<=``.
:func:`lift` turns one into a full :class:`IndexedSemiring` whose
multiplication is total (incompatible products land in the one-point
domain at TOP).  :func:`flatten` packs an indexed semiring into an ordinary
semiring of tagged pairs; :class:`NaiveFlatSemiring` is the variant whose
addition only merges equal tags, kept to exhibit its failure of
distributivity.
"""

from __future__ import annotations

import abc
import random
from typing import Any

from . import signatures as S
from .signatures import TOP, UNIT, Sig

__all__ = [
    "BULLET",
    "WeightIndexError",
    "IndexedSemiring",
    "WeightStructure",
    "LiftedSemiring",
    "lift",
    "FlatSemiring",
    "NaiveFlatSemiring",
    "flatten",
    "naive_add",
    "FLAT_BOT",
]


class _Bullet:
    """The single element of the domain indexed by TOP."""

    __slots__ = ()
    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self) -> str:
        return "•"

    def __reduce__(self):
        return (_Bullet, ())


BULLET = _Bullet()


class WeightIndexError(ValueError):
    """A weight was used at an index whose domain does not contain it."""


class IndexedSemiring(abc.ABC):
    """Semiring family ``{D_s}`` indexed by the stack-signature monoid.

    Implementations must keep ``add`` idempotent; ``leq_weight`` and the
    saturation fixpoint test rely on it.  ``locally_bounded`` declares that
    every ``D_{g/eps}`` has no infinite ascending chain.
    """

    locally_bounded: bool = False
    check_indices: bool = True

    @abc.abstractmethod
    def zero(self, s): ...

    @abc.abstractmethod
    def one(self): ...

    @abc.abstractmethod
    def add(self, s, a, b): ...

    @abc.abstractmethod
    def mul(self, s1, s2, a, b): ...

    @abc.abstractmethod
    def convert(self, s, s2, a): ...

    @abc.abstractmethod
    def eq(self, s, a, b) -> bool: ...

    @abc.abstractmethod
    def contains(self, s, a) -> bool: ...

    def leq_weight(self, s, a, b) -> bool:
        return self.eq(s, self.add(s, a, b), b)

    def is_zero(self, s, a) -> bool:
        return self.eq(s, a, self.zero(s))

    def add_all(self, s, xs):
        acc = self.zero(s)
        for x in xs:
            acc = self.add(s, acc, x)
        return acc

    def render(self, s, a) -> str:
        return repr(a)

    def to_json(self, s, a) -> Any:
        return self.render(s, a)

    def from_json(self, s, obj):
        raise NotImplementedError(f"{type(self).__name__} cannot parse weights")

    @property
    def alphabet(self):
        return ()

    def check(self, s, a, what: str = "weight"):
        if self.check_indices and not self.contains(s, a):
            raise WeightIndexError(f"{what} {self.render_safe(s, a)} is not in D_{S.format_sig(s)}")
        return a

    def render_safe(self, s, a) -> str:
        try:
            return self.render(s, a)
        except Exception:  # rendering is diagnostic only
            return repr(a)


class WeightStructure(abc.ABC):
    """Weights at proper indices with multiplication on strict compatibility.

    Subclasses implement ``extend(s, w, a)`` for the conversion from ``s`` to
    ``s`` padded with the tail ``w``; :meth:`convert` derives the general
    conversion from it.  ``unit(s)`` is only asked for at ``w/w`` indices.
    """

    locally_bounded: bool = False

    @property
    @abc.abstractmethod
    def alphabet(self) -> tuple: ...

    @abc.abstractmethod
    def zero(self, s: Sig): ...

    @abc.abstractmethod
    def unit(self, s: Sig): ...

    @abc.abstractmethod
    def add(self, s: Sig, a, b): ...

    @abc.abstractmethod
    def smul(self, s1: Sig, s2: Sig, a, b): ...

    @abc.abstractmethod
    def extend(self, s: Sig, w: tuple, a): ...

    @abc.abstractmethod
    def eq(self, s: Sig, a, b) -> bool: ...

    @abc.abstractmethod
    def contains(self, s: Sig, a) -> bool: ...

    @abc.abstractmethod
    def sample(self, s: Sig, rng: random.Random): ...

    def convert(self, s: Sig, s2: Sig, a):
        w = S.suffix_of(s, s2)
        if w is None:
            raise WeightIndexError(f"cannot convert from {s} to {s2}: not below it")
        return self.extend(s, w, a) if w else a

    def render(self, s: Sig, a) -> str:
        return repr(a)

    def to_json(self, s: Sig, a) -> Any:
        return self.render(s, a)

    def from_json(self, s: Sig, obj):
        raise NotImplementedError(f"{type(self).__name__} cannot parse weights")

    def sample_signature(self, rng: random.Random, max_len: int = 2) -> Sig:
        alph = self.alphabet
        def word():
            return tuple(rng.choice(alph) for _ in range(rng.randint(0, max_len)))
        return Sig(word(), word())


class LiftedSemiring(IndexedSemiring):
    """The indexed semiring induced by a weight structure."""

    def __init__(self, ws: WeightStructure, check_indices: bool = True):
        self.ws = ws
        self.locally_bounded = ws.locally_bounded
        self.check_indices = check_indices

    @property
    def alphabet(self):
        return self.ws.alphabet

    def __repr__(self) -> str:
        return f"lift({self.ws!r})"

    def zero(self, s):
        return BULLET if s is TOP else self.ws.zero(s)

    def one(self):
        return self.ws.unit(UNIT)

    def add(self, s, a, b):
        if s is TOP:
            return BULLET
        return self.ws.add(s, a, b)

    def mul(self, s1, s2, a, b):
        if s1 is TOP or s2 is TOP:
            return BULLET
        al = S.align(s1, s2)
        if al is None:
            return BULLET
        if al.lifted == "left":
            a = self.ws.extend(s1, al.by, a)
        elif al.lifted == "right":
            b = self.ws.extend(s2, al.by, b)
        r = self.ws.smul(al.left, al.right, a, b)
        if self.check_indices:
            self.check(S.mul(s1, s2), r, "product")
        return r

    def convert(self, s, s2, a):
        if s2 is TOP:
            return BULLET
        if s is TOP:
            raise WeightIndexError(f"cannot convert from TOP to {s2}")
        return self.ws.convert(s, s2, a)

    def eq(self, s, a, b) -> bool:
        if s is TOP:
            return a is BULLET and b is BULLET
        return self.ws.eq(s, a, b)

    def contains(self, s, a) -> bool:
        if s is TOP:
            return a is BULLET
        return self.ws.contains(s, a)

    def render(self, s, a) -> str:
        return "•" if s is TOP else self.ws.render(s, a)

    def to_json(self, s, a):
        return "•" if s is TOP else self.ws.to_json(s, a)

    def from_json(self, s, obj):
        return BULLET if s is TOP else self.ws.from_json(s, obj)


def lift(ws: WeightStructure, check_indices: bool = True) -> LiftedSemiring:
    return LiftedSemiring(ws, check_indices=check_indices)


# -- flattening into an ordinary semiring -----------------------------------


class _FlatBot:
    __slots__ = ()
    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self) -> str:
        return "⊥"


FLAT_BOT = _FlatBot()


class FlatSemiring:
    """Ordinary semiring of tagged weights ``(s, a)`` plus a bottom element.

    Addition moves both operands to the join of their tags before adding,
    which is what makes multiplication distribute over it.
    """

    def __init__(self, s: IndexedSemiring):
        self.s = s

    @property
    def zero(self):
        return FLAT_BOT

    @property
    def one(self):
        return (UNIT, self.s.one())

    def add(self, x, y):
        if x is FLAT_BOT:
            return y
        if y is FLAT_BOT:
            return x
        (s1, a), (s2, b) = x, y
        j = S.join(s1, s2)
        return (j, self.s.add(j, self.s.convert(s1, j, a), self.s.convert(s2, j, b)))

    def mul(self, x, y):
        if x is FLAT_BOT or y is FLAT_BOT:
            return FLAT_BOT
        (s1, a), (s2, b) = x, y
        return (S.mul(s1, s2), self.s.mul(s1, s2, a, b))

    def eq(self, x, y) -> bool:
        if x is FLAT_BOT or y is FLAT_BOT:
            return x is y
        return x[0] == y[0] and self.s.eq(x[0], x[1], y[1])

    def render(self, x) -> str:
        if x is FLAT_BOT:
            return "⊥"
        return f"<{S.format_sig(x[0])}, {self.s.render_safe(x[0], x[1])}>"


class NaiveFlatSemiring(FlatSemiring):
    """Tagged pairs where addition of different tags collapses to TOP."""

    def add(self, x, y):
        return naive_add(self.s, x, y)


def naive_add(s: IndexedSemiring, x, y):
    if x is FLAT_BOT:
        return y
    if y is FLAT_BOT:
        return x
    (s1, a), (s2, b) = x, y
    if s1 == s2:
        return (s1, s.add(s1, a, b))
    return (TOP, BULLET)


def flatten(s: IndexedSemiring) -> FlatSemiring:
    return FlatSemiring(s)
