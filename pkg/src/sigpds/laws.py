"""Randomised checker for the algebraic laws of weight domains.

``law_suite`` accepts a :class:`WeightStructure`, a lifted indexed semiring
or a flattened (ordinary) semiring and evaluates every applicable law on
seeded random samples.  Index triples are drawn with a bias towards
compatible and strictly compatible chains so that the interesting
branches of the lifted product are exercised.  Failures never raise: each
law gets a record with its status, the number of applicable samples, the
smallest failing witness and a few distinct failing witnesses.
"""

from __future__ import annotations

import json
import random
from dataclasses import asdict, dataclass, field
from typing import List, Optional

from . import signatures as S
from .algebra import BULLET, FLAT_BOT, FlatSemiring, LiftedSemiring, WeightStructure
from .signatures import TOP, UNIT, Sig

__all__ = ["LawRecord", "LawReport", "law_suite", "MAX_WITNESSES"]

MAX_WITNESSES = 12

# returned by a law whose random sample does not meet its side condition
_SKIP = object()


@dataclass
class LawRecord:
    name: str
    reference: str
    status: str = "pass"  # pass | fail | vacuous
    checked: int = 0
    witness: Optional[str] = None
    witness_size: Optional[int] = None
    witnesses: List[str] = field(default_factory=list)
    witness_shapes: List[str] = field(default_factory=list)

    def _fail(self, text: str, size: int, shape: str):
        self.status = "fail"
        if self.witness_size is None or size < self.witness_size:
            self.witness, self.witness_size = text, size
        if shape not in self.witness_shapes and len(self.witness_shapes) < 4 * MAX_WITNESSES:
            self.witness_shapes.append(shape)
            if len(self.witnesses) < MAX_WITNESSES:
                self.witnesses.append(text)


@dataclass
class LawReport:
    subject: str
    kind: str
    samples: int
    seed: int
    records: List[LawRecord]

    @property
    def ok(self) -> bool:
        return all(r.status != "fail" for r in self.records)

    def failures(self) -> List[LawRecord]:
        return [r for r in self.records if r.status == "fail"]

    def record(self, name: str) -> LawRecord:
        for r in self.records:
            if r.name == name:
                return r
        raise KeyError(name)

    def to_json_obj(self) -> dict:
        return {"subject": self.subject, "kind": self.kind, "samples": self.samples, "seed": self.seed,
                "ok": self.ok, "laws": [asdict(r) for r in self.records]}

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), ensure_ascii=False, indent=2)

    def render(self) -> str:
        lines = [f"law suite for {self.subject} ({self.kind}), {self.samples} samples, seed {self.seed}"]
        for r in self.records:
            line = f"  {r.status.upper():7} {r.name:28} checked={r.checked}"
            if r.witness:
                line += f"  witness: {r.witness}"
            lines.append(line)
        lines.append("all laws hold" if self.ok else f"{len(self.failures())} law(s) violated")
        return "\n".join(lines)


# -- index generators -------------------------------------------------------


class _Gen:
    def __init__(self, alphabet, rng: random.Random, max_len: int):
        self.alph = tuple(alphabet)
        self.rng = rng
        self.max_len = max_len

    def word(self, max_len: Optional[int] = None) -> tuple:
        k = self.rng.randint(0, self.max_len if max_len is None else max_len)
        return tuple(self.rng.choice(self.alph) for _ in range(k))

    def sig(self) -> Sig:
        return Sig(self.word(), self.word())

    def sig_or_top(self, p_top: float = 0.1):
        return TOP if self.rng.random() < p_top else self.sig()

    def strict_after(self, s: Sig) -> Sig:
        return Sig(s.push, self.word())

    def after(self, s):
        """A right neighbour of ``s``: strictly compatible, compatible after a
        lift, or arbitrary."""
        if s is TOP:
            return self.sig()
        r = self.rng.random()
        if r < 0.35:
            return self.strict_after(s)
        if r < 0.55:
            return Sig(s.push + self.word(1), self.word())
        if r < 0.75:
            k = self.rng.randint(0, len(s.push))
            return Sig(s.push[:k], self.word())
        return self.sig_or_top(0.05)

    def above(self, s, p_top: float = 0.05):
        if s is TOP or self.rng.random() < p_top:
            return TOP
        return S.extend(s, self.word())


def _size(*ss) -> int:
    return sum(s.size if isinstance(s, Sig) else 1 for s in ss)


def _shape(*ss) -> str:
    return ", ".join(S.format_sig(s) for s in ss)


# -- weight structure laws --------------------------------------------------


def _ws_laws(ws: WeightStructure, g: _Gen):
    rng = g.rng
    R = ws.render

    def val(s):
        return ws.sample(s, rng)

    def show(s, a):
        try:
            return f"{R(s, a)}@{S.format_sig(s)}"
        except Exception:
            return f"{a!r}@{S.format_sig(s)}"

    def add_comm():
        s = g.sig(); a, b = val(s), val(s)
        if not ws.eq(s, ws.add(s, a, b), ws.add(s, b, a)):
            return (f"a={show(s, a)} b={show(s, b)}", _size(s), _shape(s))

    def add_assoc():
        s = g.sig(); a, b, c = val(s), val(s), val(s)
        if not ws.eq(s, ws.add(s, ws.add(s, a, b), c), ws.add(s, a, ws.add(s, b, c))):
            return (f"a={show(s, a)} b={show(s, b)} c={show(s, c)}", _size(s), _shape(s))

    def add_idem():
        s = g.sig(); a = val(s)
        if not ws.eq(s, ws.add(s, a, a), a):
            return (f"a={show(s, a)}", _size(s), _shape(s))

    def add_zero():
        s = g.sig(); a = val(s)
        if not ws.eq(s, ws.add(s, a, ws.zero(s)), a):
            return (f"a={show(s, a)}", _size(s), _shape(s))

    def smul_assoc():
        s1 = g.sig(); s2 = g.strict_after(s1); s3 = g.strict_after(s2)
        a, b, c = val(s1), val(s2), val(s3)
        s12, s23, s = S.mul(s1, s2), S.mul(s2, s3), S.mul(S.mul(s1, s2), s3)
        lhs = ws.smul(s12, s3, ws.smul(s1, s2, a, b), c)
        rhs = ws.smul(s1, s23, a, ws.smul(s2, s3, b, c))
        if not ws.eq(s, lhs, rhs):
            return (f"a={show(s1, a)} b={show(s2, b)} c={show(s3, c)}", _size(s1, s2, s3), _shape(s1, s2, s3))

    def unit_left():
        w = g.word(); s = Sig(w, g.word()); b = val(s)
        u = Sig(w, w)
        if not ws.eq(s, ws.smul(u, s, ws.unit(u), b), b):
            return (f"b={show(s, b)}", _size(s), _shape(u, s))

    def unit_right():
        w = g.word(); s = Sig(g.word(), w); a = val(s)
        u = Sig(w, w)
        if not ws.eq(s, ws.smul(s, u, a, ws.unit(u)), a):
            return (f"a={show(s, a)}", _size(s), _shape(s, u))

    def zero_left():
        s1 = g.sig(); s2 = g.strict_after(s1); b = val(s2); s = S.mul(s1, s2)
        if not ws.eq(s, ws.smul(s1, s2, ws.zero(s1), b), ws.zero(s)):
            return (f"b={show(s2, b)}", _size(s1, s2), _shape(s1, s2))

    def zero_right():
        s1 = g.sig(); s2 = g.strict_after(s1); a = val(s1); s = S.mul(s1, s2)
        if not ws.eq(s, ws.smul(s1, s2, a, ws.zero(s2)), ws.zero(s)):
            return (f"a={show(s1, a)}", _size(s1, s2), _shape(s1, s2))

    def distrib_left():
        s1 = g.sig(); s2 = g.strict_after(s1); s = S.mul(s1, s2)
        a, b, c = val(s1), val(s2), val(s2)
        lhs = ws.smul(s1, s2, a, ws.add(s2, b, c))
        rhs = ws.add(s, ws.smul(s1, s2, a, b), ws.smul(s1, s2, a, c))
        if not ws.eq(s, lhs, rhs):
            return (f"a={show(s1, a)} b={show(s2, b)} c={show(s2, c)}", _size(s1, s2), _shape(s1, s2))

    def distrib_right():
        s1 = g.sig(); s2 = g.strict_after(s1); s = S.mul(s1, s2)
        a, b, c = val(s1), val(s1), val(s2)
        lhs = ws.smul(s1, s2, ws.add(s1, a, b), c)
        rhs = ws.add(s, ws.smul(s1, s2, a, c), ws.smul(s1, s2, b, c))
        if not ws.eq(s, lhs, rhs):
            return (f"a={show(s1, a)} b={show(s1, b)} c={show(s2, c)}", _size(s1, s2), _shape(s1, s2))

    def ext_identity():
        s = g.sig(); a = val(s)
        if not ws.eq(s, ws.convert(s, s, a), a):
            return (f"a={show(s, a)}", _size(s), _shape(s))

    def ext_compose():
        s = g.sig(); s1 = S.extend(s, g.word(1)); s2 = S.extend(s1, g.word(1)); a = val(s)
        if not ws.eq(s2, ws.convert(s1, s2, ws.convert(s, s1, a)), ws.convert(s, s2, a)):
            return (f"a={show(s, a)} via {S.format_sig(s1)} to {S.format_sig(s2)}", _size(s, s2), _shape(s, s1, s2))

    def ext_zero():
        s = g.sig(); s1 = S.extend(s, g.word())
        if not ws.eq(s1, ws.convert(s, s1, ws.zero(s)), ws.zero(s1)):
            return (f"{S.format_sig(s)} -> {S.format_sig(s1)}", _size(s, s1), _shape(s, s1))

    def ext_add():
        s = g.sig(); s1 = S.extend(s, g.word()); a, b = val(s), val(s)
        lhs = ws.convert(s, s1, ws.add(s, a, b))
        rhs = ws.add(s1, ws.convert(s, s1, a), ws.convert(s, s1, b))
        if not ws.eq(s1, lhs, rhs):
            return (f"a={show(s, a)} b={show(s, b)} to {S.format_sig(s1)}", _size(s, s1), _shape(s, s1))

    def ext_mul():
        s1 = g.sig(); s2 = g.strict_after(s1); w = g.word()
        t1, t2 = S.extend(s1, w), S.extend(s2, w)
        a, b = val(s1), val(s2)
        s, t = S.mul(s1, s2), S.mul(t1, t2)
        lhs = ws.convert(s, t, ws.smul(s1, s2, a, b))
        rhs = ws.smul(t1, t2, ws.convert(s1, t1, a), ws.convert(s2, t2, b))
        if not ws.eq(t, lhs, rhs):
            return (f"a={show(s1, a)} b={show(s2, b)} tail={S.format_word(w)}", _size(s1, s2, t1), _shape(s1, s2, t1, t2))

    def ext_unit():
        u = g.word(); w = g.word(); s = Sig(u, u); t = S.extend(s, w)
        if not ws.eq(t, ws.convert(s, t, ws.unit(s)), ws.unit(t)):
            return (f"{S.format_sig(s)} -> {S.format_sig(t)}", _size(s, t), _shape(s, t))

    def ext_monotone():
        s = g.sig(); t = S.extend(s, g.word()); a, c = val(s), val(s)
        b = ws.add(s, a, c)  # a ⊑ b
        ea, eb = ws.convert(s, t, a), ws.convert(s, t, b)
        if not ws.eq(t, ws.add(t, ea, eb), eb):
            return (f"a={show(s, a)} b={show(s, b)} to {S.format_sig(t)}", _size(s, t), _shape(s, t))

    def membership():
        s1 = g.sig(); s2 = g.strict_after(s1); s = S.mul(s1, s2)
        a, b, c = val(s1), val(s2), val(s1)
        t = S.extend(s1, g.word())
        bad = []
        if not ws.contains(s1, a):
            bad.append("sample")
        if not ws.contains(s, ws.smul(s1, s2, a, b)):
            bad.append("product")
        if not ws.contains(s1, ws.add(s1, a, c)):
            bad.append("sum")
        if not ws.contains(t, ws.convert(s1, t, a)):
            bad.append("conversion")
        if bad:
            return (f"{'/'.join(bad)} left its domain: a={show(s1, a)} b={show(s2, b)}", _size(s1, s2), _shape(s1, s2))

    return [
        ("add-commutative", "weight structure: commutative monoid", add_comm),
        ("add-associative", "weight structure: commutative monoid", add_assoc),
        ("add-idempotent", "saturation: idempotent addition", add_idem),
        ("add-zero", "weight structure: commutative monoid", add_zero),
        ("mul-associative", "weight structure: strict product", smul_assoc),
        ("unit-left", "weight structure: indexed units", unit_left),
        ("unit-right", "weight structure: indexed units", unit_right),
        ("zero-left", "weight structure: annihilator", zero_left),
        ("zero-right", "weight structure: annihilator", zero_right),
        ("distrib-left", "weight structure: distributivity", distrib_left),
        ("distrib-right", "weight structure: distributivity", distrib_right),
        ("conv-identity", "conversion: identity", ext_identity),
        ("conv-compose", "conversion: composition", ext_compose),
        ("conv-zero", "conversion: zero", ext_zero),
        ("conv-add", "conversion: additive", ext_add),
        ("conv-mul", "conversion: multiplicative", ext_mul),
        ("conv-unit", "conversion: preserves units", ext_unit),
        ("conv-monotone", "derived: conversion is monotone", ext_monotone),
        ("membership", "domains closed under operations", membership),
    ]


# -- indexed semiring laws --------------------------------------------------


def _lifted_laws(K: LiftedSemiring, g: _Gen):
    rng = g.rng
    ws = K.ws

    def val(s):
        return BULLET if s is TOP else ws.sample(s, rng)

    def show(s, a):
        return f"{K.render_safe(s, a)}@{S.format_sig(s)}"

    def add_comm():
        s = g.sig_or_top(); a, b = val(s), val(s)
        if not K.eq(s, K.add(s, a, b), K.add(s, b, a)):
            return (f"a={show(s, a)} b={show(s, b)}", _size(s), _shape(s))

    def add_assoc():
        s = g.sig_or_top(); a, b, c = val(s), val(s), val(s)
        if not K.eq(s, K.add(s, K.add(s, a, b), c), K.add(s, a, K.add(s, b, c))):
            return (f"a={show(s, a)} b={show(s, b)} c={show(s, c)}", _size(s), _shape(s))

    def add_idem():
        s = g.sig_or_top(); a = val(s)
        if not K.eq(s, K.add(s, a, a), a):
            return (f"a={show(s, a)}", _size(s), _shape(s))

    def add_zero():
        s = g.sig_or_top(); a = val(s)
        if not K.eq(s, K.add(s, a, K.zero(s)), a):
            return (f"a={show(s, a)}", _size(s), _shape(s))

    def mul_assoc():
        s1 = g.sig_or_top(0.03); s2 = g.after(s1); s3 = g.after(s2)
        a, b, c = val(s1), val(s2), val(s3)
        s = S.mul(S.mul(s1, s2), s3)
        lhs = K.mul(S.mul(s1, s2), s3, K.mul(s1, s2, a, b), c)
        rhs = K.mul(s1, S.mul(s2, s3), a, K.mul(s2, s3, b, c))
        if not K.eq(s, lhs, rhs):
            return (f"a={show(s1, a)} b={show(s2, b)} c={show(s3, c)}", _size(s1, s2, s3), _shape(s1, s2, s3))

    def one_left():
        s = g.sig_or_top(); a = val(s)
        if not K.eq(s, K.mul(UNIT, s, K.one(), a), a):
            return (f"a={show(s, a)}", _size(s), _shape(UNIT, s))

    def one_right():
        s = g.sig_or_top(); a = val(s)
        if not K.eq(s, K.mul(s, UNIT, a, K.one()), a):
            return (f"a={show(s, a)}", _size(s), _shape(s, UNIT))

    def zero_left():
        s1 = g.sig_or_top(); s2 = g.after(s1); b = val(s2); s = S.mul(s1, s2)
        if not K.eq(s, K.mul(s1, s2, K.zero(s1), b), K.zero(s)):
            return (f"b={show(s2, b)}", _size(s1, s2), _shape(s1, s2))

    def zero_right():
        s1 = g.sig_or_top(); s2 = g.after(s1); a = val(s1); s = S.mul(s1, s2)
        if not K.eq(s, K.mul(s1, s2, a, K.zero(s2)), K.zero(s)):
            return (f"a={show(s1, a)}", _size(s1, s2), _shape(s1, s2))

    def distrib_left():
        s1 = g.sig_or_top(0.03); s2 = g.after(s1); s = S.mul(s1, s2)
        a, b, c = val(s1), val(s2), val(s2)
        lhs = K.mul(s1, s2, a, K.add(s2, b, c))
        rhs = K.add(s, K.mul(s1, s2, a, b), K.mul(s1, s2, a, c))
        if not K.eq(s, lhs, rhs):
            return (f"a={show(s1, a)} b={show(s2, b)} c={show(s2, c)}", _size(s1, s2), _shape(s1, s2))

    def distrib_right():
        s1 = g.sig_or_top(0.03); s2 = g.after(s1); s = S.mul(s1, s2)
        a, b, c = val(s1), val(s1), val(s2)
        lhs = K.mul(s1, s2, K.add(s1, a, b), c)
        rhs = K.add(s, K.mul(s1, s2, a, c), K.mul(s1, s2, b, c))
        if not K.eq(s, lhs, rhs):
            return (f"a={show(s1, a)} b={show(s1, b)} c={show(s2, c)}", _size(s1, s2), _shape(s1, s2))

    def conv_identity():
        s = g.sig_or_top(); a = val(s)
        if not K.eq(s, K.convert(s, s, a) if s is not TOP else a, a):
            return (f"a={show(s, a)}", _size(s), _shape(s))

    def conv_compose():
        s = g.sig(); s1 = g.above(s); s2 = g.above(s1); a = val(s)
        if s1 is TOP:
            return _SKIP
        if not K.eq(s2, K.convert(s1, s2, K.convert(s, s1, a)), K.convert(s, s2, a)):
            return (f"a={show(s, a)} via {S.format_sig(s1)} to {S.format_sig(s2)}", _size(s, s2), _shape(s, s1, s2))

    def conv_zero():
        s = g.sig(); t = g.above(s)
        if not K.eq(t, K.convert(s, t, K.zero(s)), K.zero(t)):
            return (f"{S.format_sig(s)} -> {S.format_sig(t)}", _size(s, t), _shape(s, t))

    def conv_add():
        s = g.sig(); t = g.above(s); a, b = val(s), val(s)
        if not K.eq(t, K.convert(s, t, K.add(s, a, b)), K.add(t, K.convert(s, t, a), K.convert(s, t, b))):
            return (f"a={show(s, a)} b={show(s, b)} to {S.format_sig(t)}", _size(s, t), _shape(s, t))

    def conv_mul():
        s1 = g.sig(); s2 = g.after(s1)
        if s2 is TOP:
            return _SKIP
        t1, t2 = g.above(s1), g.above(s2)
        a, b = val(s1), val(s2)
        s, t = S.mul(s1, s2), S.mul(t1, t2)
        if s is TOP:
            # both sides live in the one-point domain
            return _SKIP
        lhs = K.convert(s, t, K.mul(s1, s2, a, b))
        rhs = K.mul(t1, t2, K.convert(s1, t1, a) if t1 is not TOP else BULLET,
                    K.convert(s2, t2, b) if t2 is not TOP else BULLET)
        if not K.eq(t, lhs, rhs):
            return (f"a={show(s1, a)} b={show(s2, b)} lifted to {S.format_sig(t1)}, {S.format_sig(t2)}",
                    _size(s1, s2, t1, t2), _shape(s1, s2, t1, t2))

    def exchange():
        s1 = g.sig(); t1 = S.extend(s1, g.word()); s2 = g.after(t1)
        if s2 is TOP or S.mul(t1, s2) is TOP:
            return _SKIP
        x, y = val(s1), val(s2)
        src, dst = S.mul(s1, s2), S.mul(t1, s2)
        lhs = K.convert(src, dst, K.mul(s1, s2, x, y))
        rhs = K.mul(t1, s2, K.convert(s1, t1, x), y)
        if not K.eq(dst, lhs, rhs):
            return (f"x={show(s1, x)} y={show(s2, y)} lifted to {S.format_sig(t1)}", _size(s1, s2, t1), _shape(s1, t1, s2))

    def conv_monotone():
        s = g.sig(); t = g.above(s, 0.0); a, c = val(s), val(s)
        b = K.add(s, a, c)
        ea, eb = K.convert(s, t, a), K.convert(s, t, b)
        if not K.eq(t, K.add(t, ea, eb), eb):
            return (f"a={show(s, a)} b={show(s, b)} to {S.format_sig(t)}", _size(s, t), _shape(s, t))

    def membership():
        s1 = g.sig_or_top(0.03); s2 = g.after(s1); s = S.mul(s1, s2)
        a, b = val(s1), val(s2)
        if not K.contains(s, K.mul(s1, s2, a, b)):
            return (f"product of a={show(s1, a)} b={show(s2, b)} left D_{S.format_sig(s)}", _size(s1, s2), _shape(s1, s2))

    return [
        ("add-commutative", "indexed semiring: addition", add_comm),
        ("add-associative", "indexed semiring: addition", add_assoc),
        ("add-idempotent", "saturation: idempotent addition", add_idem),
        ("add-zero", "indexed semiring: addition", add_zero),
        ("mul-associative", "indexed semiring: product", mul_assoc),
        ("one-left", "indexed semiring: unit", one_left),
        ("one-right", "indexed semiring: unit", one_right),
        ("zero-left", "indexed semiring: annihilator", zero_left),
        ("zero-right", "indexed semiring: annihilator", zero_right),
        ("distrib-left", "indexed semiring: distributivity", distrib_left),
        ("distrib-right", "indexed semiring: distributivity", distrib_right),
        ("conv-identity", "conversion: identity", conv_identity),
        ("conv-compose", "conversion: composition", conv_compose),
        ("conv-zero", "conversion: zero", conv_zero),
        ("conv-add", "conversion: additive", conv_add),
        ("conv-mul", "conversion: multiplicative", conv_mul),
        ("conv-exchange", "lifting: conversion commutes with product", exchange),
        ("conv-monotone", "derived: conversion is monotone", conv_monotone),
        ("membership", "product lands in its index", membership),
    ]


# -- ordinary semiring laws on tagged pairs ---------------------------------


def _flat_laws(F: FlatSemiring, g: _Gen):
    K = F.s
    if not isinstance(K, LiftedSemiring):
        raise TypeError("flat law suites sample through a lifted weight structure")
    ws = K.ws
    rng = g.rng
    small = max(1, min(g.max_len, 1))

    def tag():
        r = rng.random()
        if r < 0.05:
            return TOP
        if r < 0.55:
            # small tags such as eps/eps, x/x, x/eps, eps/x collide often
            return Sig(g.word(small), g.word(small))
        return g.sig()

    def elem():
        if rng.random() < 0.08:
            return FLAT_BOT
        s = tag()
        return (s, BULLET if s is TOP else ws.sample(s, rng))

    def tags(*xs):
        return tuple(x[0] for x in xs if x is not FLAT_BOT)

    def show(*xs):
        return " ".join(f"{n}={F.render(x)}" for n, x in zip("xyz", xs))

    def out(*xs):
        ts = tags(*xs)
        shape = ", ".join("⊥" if x is FLAT_BOT else S.format_sig(x[0]) for x in xs)
        return (show(*xs), _size(*ts) + sum(1 for x in xs if x is FLAT_BOT), shape)

    def add_comm():
        x, y = elem(), elem()
        if not F.eq(F.add(x, y), F.add(y, x)):
            return out(x, y)

    def add_assoc():
        x, y, z = elem(), elem(), elem()
        if not F.eq(F.add(F.add(x, y), z), F.add(x, F.add(y, z))):
            return out(x, y, z)

    def add_zero():
        x = elem()
        if not F.eq(F.add(x, F.zero), x):
            return out(x)

    def mul_assoc():
        x, y, z = elem(), elem(), elem()
        if not F.eq(F.mul(F.mul(x, y), z), F.mul(x, F.mul(y, z))):
            return out(x, y, z)

    def one_left():
        x = elem()
        if not F.eq(F.mul(F.one, x), x):
            return out(x)

    def one_right():
        x = elem()
        if not F.eq(F.mul(x, F.one), x):
            return out(x)

    def zero_mul():
        x = elem()
        if not (F.eq(F.mul(F.zero, x), F.zero) and F.eq(F.mul(x, F.zero), F.zero)):
            return out(x)

    def distrib_left():
        x, y, z = elem(), elem(), elem()
        if not F.eq(F.mul(x, F.add(y, z)), F.add(F.mul(x, y), F.mul(x, z))):
            return out(x, y, z)

    def distrib_right():
        x, y, z = elem(), elem(), elem()
        if not F.eq(F.mul(F.add(x, y), z), F.add(F.mul(x, z), F.mul(y, z))):
            return out(x, y, z)

    return [
        ("add-commutative", "flat semiring: addition", add_comm),
        ("add-associative", "flat semiring: addition", add_assoc),
        ("add-zero", "flat semiring: addition", add_zero),
        ("mul-associative", "flat semiring: product", mul_assoc),
        ("one-left", "flat semiring: unit", one_left),
        ("one-right", "flat semiring: unit", one_right),
        ("zero-annihilates", "flat semiring: annihilator", zero_mul),
        ("distrib-left", "flat semiring: distributivity", distrib_left),
        ("distrib-right", "flat semiring: distributivity", distrib_right),
    ]


def law_suite(subject, samples: int = 1000, seed: int = 0, max_len: int = 2,
              alphabet: Optional[tuple] = None, name: Optional[str] = None) -> LawReport:
    """Evaluate every applicable law ``samples`` times; never raises on a violation."""
    rng = random.Random(seed)
    if isinstance(subject, FlatSemiring):
        kind = "naive flat semiring" if type(subject).__name__ == "NaiveFlatSemiring" else "flat semiring"
        alph = alphabet or subject.s.alphabet
        laws = _flat_laws(subject, _Gen(alph, rng, max_len))
    elif isinstance(subject, LiftedSemiring):
        kind = "lifted indexed semiring"
        alph = alphabet or subject.alphabet
        laws = _lifted_laws(subject, _Gen(alph, rng, max_len))
    elif isinstance(subject, WeightStructure):
        kind = "weight structure"
        alph = alphabet or subject.alphabet
        laws = _ws_laws(subject, _Gen(alph, rng, max_len))
    else:
        raise TypeError(f"cannot check laws of {subject!r}")
    records = [LawRecord(n, ref) for n, ref, _ in laws]
    for _ in range(samples):
        for rec, (_, _, fn) in zip(records, laws):
            try:
                res = fn()
            except Exception as e:  # an exception is a failed law, not a crash
                rec.checked += 1
                rec._fail(f"raised {type(e).__name__}: {e}", 10**6, f"error:{type(e).__name__}")
                continue
            if res is _SKIP:
                continue
            rec.checked += 1
            if res is not None:
                rec._fail(*res)
    for rec in records:
        if rec.checked == 0:
            rec.status = "vacuous"
    return LawReport(name or repr(subject), kind, samples, seed, records)

