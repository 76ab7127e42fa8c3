"""The ordered monoid of stack signatures.

A proper signature ``pop/push`` summarises a computation that removes the
word ``pop`` from the top of the stack and leaves ``push`` in its place.
Words are tuples of hashable symbols with the stack top at index 0.
Incompatible products collapse to :data:`TOP`; :data:`BOT` only exists in
the join-semilattice completion used by :func:`join`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Optional, Tuple, Union

Word = Tuple  # tuple of symbols, top of stack first

__all__ = [
    "Sig",
    "TOP",
    "BOT",
    "UNIT",
    "Signature",
    "Lattice",
    "Alignment",
    "sig",
    "is_proper",
    "mul",
    "mul_case",
    "leq",
    "join",
    "strictly_compatible",
    "compatible",
    "align",
    "suffix_of",
    "extend",
    "triple_case",
    "format_word",
    "parse_word",
    "format_sig",
    "parse_sig",
]


@dataclass(frozen=True, slots=True)
class Sig:
    pop: Word
    push: Word

    def __str__(self) -> str:
        return format_sig(self)

    @property
    def size(self) -> int:
        return len(self.pop) + len(self.push)


class _Top:
    __slots__ = ()
    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self) -> str:
        return "TOP"

    __str__ = __repr__

    def __reduce__(self):
        return (_Top, ())


class _Bot:
    __slots__ = ()
    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self) -> str:
        return "BOT"

    __str__ = __repr__

    def __reduce__(self):
        return (_Bot, ())


TOP = _Top()
BOT = _Bot()
UNIT = Sig((), ())

Signature = Union[Sig, _Top]
Lattice = Union[Sig, _Top, _Bot]


def sig(pop=(), push=()) -> Sig:
    """Build a proper signature from any two iterables of symbols."""
    return Sig(tuple(pop), tuple(push))


def is_proper(s) -> bool:
    return isinstance(s, Sig)


def _is_prefix(u: Word, v: Word) -> bool:
    return len(u) <= len(v) and v[: len(u)] == u


def mul_case(s1: Signature, s2: Signature) -> Tuple[Signature, str]:
    """Product together with the branch that produced it.

    The tag is ``"right-longer"`` when the push word of ``s1`` is a prefix
    of the pop word of ``s2`` (so the left operand is effectively lifted),
    ``"left-longer"`` for the opposite prefix, and ``"top"`` otherwise.
    Equal words take the ``"right-longer"`` branch.
    """
    if s1 is TOP or s2 is TOP:
        return TOP, "top"
    w1, w1p = s1.pop, s1.push
    w2, w2p = s2.pop, s2.push
    if _is_prefix(w1p, w2):
        return Sig(w1 + w2[len(w1p):], w2p), "right-longer"
    if _is_prefix(w2, w1p):
        return Sig(w1, w2p + w1p[len(w2):]), "left-longer"
    return TOP, "top"


def mul(s1: Signature, s2: Signature) -> Signature:
    return mul_case(s1, s2)[0]


def leq(s1: Lattice, s2: Lattice) -> bool:
    """``s1 <= s2``: ``s2`` pads both words of ``s1`` with one common tail."""
    if s1 is BOT or s2 is TOP:
        return True
    if s2 is BOT or s1 is TOP:
        return False
    k = len(s2.pop) - len(s1.pop)
    if k < 0 or len(s2.push) - len(s1.push) != k:
        return False
    if s2.pop[: len(s1.pop)] != s1.pop or s2.push[: len(s1.push)] != s1.push:
        return False
    return s2.pop[len(s1.pop):] == s2.push[len(s1.push):]


def join(s1: Lattice, s2: Lattice) -> Lattice:
    # Upper bounds of a proper signature form a chain, so two proper
    # signatures have a proper upper bound only when they are comparable.
    if leq(s1, s2):
        return s2
    if leq(s2, s1):
        return s1
    return TOP


def _require_proper(*ss) -> None:
    for s in ss:
        if not isinstance(s, Sig):
            raise ValueError(f"expected a proper stack signature, got {s!r}")


def strictly_compatible(s1: Sig, s2: Sig) -> bool:
    _require_proper(s1, s2)
    return s1.push == s2.pop


def compatible(s1: Sig, s2: Sig) -> bool:
    _require_proper(s1, s2)
    return _is_prefix(s1.push, s2.pop) or _is_prefix(s2.pop, s1.push)


def extend(s: Sig, w: Word) -> Sig:
    """The signature ``pop.w / push.w``."""
    w = tuple(w)
    return Sig(s.pop + w, s.push + w) if w else s


class Alignment(NamedTuple):
    left: Sig
    right: Sig
    lifted: Optional[str]  # "left", "right" or None
    by: Word


def align(s1: Sig, s2: Sig) -> Optional[Alignment]:
    """Minimal lifts making ``s1, s2`` strictly compatible, or None."""
    _require_proper(s1, s2)
    a, b = s1.push, s2.pop
    if a == b:
        return Alignment(s1, s2, None, ())
    if _is_prefix(a, b):
        w = b[len(a):]
        return Alignment(extend(s1, w), s2, "left", w)
    if _is_prefix(b, a):
        w = a[len(b):]
        return Alignment(s1, extend(s2, w), "right", w)
    return None


def suffix_of(s1: Sig, s2: Signature) -> Optional[Word]:
    """The tail ``w`` with ``s2 == extend(s1, w)``, if there is one."""
    if not isinstance(s1, Sig) or not isinstance(s2, Sig) or not leq(s1, s2):
        return None
    return s2.pop[len(s1.pop):]


def triple_case(s1: Sig, s2: Sig, s3: Sig) -> Optional[int]:
    """Which of the five alignment patterns a non-TOP triple product follows.

    Returns 1..5 for the first pattern that matches, or None when the
    product ``s1 s2 s3`` is TOP.  Patterns (primes are lifts):

    1. s1 <= s1', s3 <= s3', s1' || s2, s2 || s3'
    2. s1 <= s1', s2 <= s2', s1' || s2, s2' || s3
    3. s3 <= s3', s2 <= s2', s2 || s3', s1 || s2'
    4. s2 <= s2' <= s2'', s1 || s2', s2'' || s3
    5. s2 <= s2' <= s2'', s1 || s2'', s2' || s3
    """
    if mul(mul(s1, s2), s3) is TOP:
        return None
    a12 = align(s1, s2)
    a23 = align(s2, s3)
    if a12 is None or a23 is None:
        # s1 s2 s3 != TOP forces both adjacent pairs to be compatible
        raise AssertionError("non-TOP triple with an incompatible adjacent pair")
    if a12.lifted != "right" and a23.lifted != "left":
        return 1
    if a12.lifted != "right" and a23.lifted == "left":
        return 2
    if a12.lifted == "right" and a23.lifted != "left":
        return 3
    # s2 is lifted on both sides; the longer lift is the outer one
    if len(a23.by) >= len(a12.by):
        return 4
    return 5


# -- text rendering ---------------------------------------------------------

EPS = "ε"


def format_word(w: Word) -> str:
    if not w:
        return EPS
    return ",".join(str(x) for x in w)


def parse_word(text: str) -> Word:
    text = text.strip()
    if text in ("", EPS, "-", "eps"):
        return ()
    parts = [t.strip() for t in text.split(",")]
    if any(not t or "/" in t for t in parts):
        raise ValueError(f"malformed word {text!r}")
    return tuple(parts)


def format_sig(s: Lattice) -> str:
    if s is TOP:
        return "TOP"
    if s is BOT:
        return "BOT"
    return f"{format_word(s.pop)}/{format_word(s.push)}"


def parse_sig(text: str) -> Lattice:
    text = text.strip()
    if text == "TOP":
        return TOP
    if text == "BOT":
        return BOT
    if text.count("/") != 1:
        raise ValueError(f"malformed stack signature {text!r}")
    a, b = text.split("/")
    return Sig(parse_word(a), parse_word(b))
