"""Self-contained text format for pushdown systems and their weights.

A file is a sequence of directives, one per line; ``#`` starts a comment
line.  Example::

    domain minheight
    states p0 p1 p2 p3
    alphabet γ
    rule p0 γ -> p1 γ γ
    rule p1 γ -> p2 -          [h:1]

``-`` is the empty push word.  A weight literal sits in square brackets at
the end of a rule; without one each domain uses its default encoding.

    minheight    [h:<n>]              default max(1, |w|)
    relations    [rel:{(x,y);...}]    default {(γ, w)}
    conditional  [cond:<automaton>]   default Γ*
    trpds        [tr:<automaton>]     default the identity transduction
    wspds        [phi:<transfer>]     required; rules read ``rule p -> p2 [phi:T]``

Automata are given inline between ``automaton NAME`` and ``end`` in the
``dfa`` format of :mod:`sigpds.reglang`.  WSPDS files declare an order
(``order vector 2`` or ``order finite a b c`` plus ``le a b`` lines) and
transfers::

    transfer T vector guard=(1,1) deltas=(0,1)(1,0)
    transfer F finite arity=1 a->b b->b
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from . import reglang as R
from . import wqo as W
from .algebra import WeightIndexError
from .domains.conditional import ConditionalPDS, conditional_ws
from .domains.minheight import minheight_semiring, parse_height
from .domains.relations import HASH, Relations, parse_relation
from .domains.trpds import TrPDS, trpds_ws
from .domains.wspds import Wspds, wspds_ws
from .algebra import lift
from .wpds import Pds, Rule, WeightedPDS

__all__ = ["DOMAINS", "FormatError", "RuleLine", "SystemFile", "Analysis", "parse_system", "load_system", "build"]

DOMAINS = ("minheight", "relations", "conditional", "wspds", "trpds")
_PREFIX = {"minheight": "h", "relations": "rel", "conditional": "cond", "wspds": "phi", "trpds": "tr"}


class FormatError(ValueError):
    def __init__(self, where: str, line: int, message: str):
        super().__init__(f"{where}:{line}: {message}")
        self.where = where
        self.line = line


@dataclass
class RuleLine:
    src: str
    sym: Optional[str]
    dst: str
    push: tuple
    literal: Optional[str]
    line: int


@dataclass
class SystemFile:
    path: str = "<string>"
    domain: Optional[str] = None
    states: tuple = ()
    alphabet: tuple = ()
    rules: List[RuleLine] = field(default_factory=list)
    automata: Dict[str, R.Dfa] = field(default_factory=dict)
    order: Optional[W.Wqo] = None
    transfers: Dict[str, W.MonotoneTransfer] = field(default_factory=dict)
    lines: Dict[str, int] = field(default_factory=dict)

    def error(self, line: int, message: str) -> FormatError:
        return FormatError(self.path, line, message)


@dataclass
class Analysis:
    """A parsed file turned into a weighted system for one domain."""

    domain: str
    ws: object
    P: WeightedPDS
    source: SystemFile
    gamma: tuple = ()


_RULE = re.compile(r"^rule\s+(?P<body>.*?)\s*(?:\[(?P<lit>[^\]]*)\])?\s*$")


def _split_lit(lit: Optional[str], f: SystemFile, ln: int) -> Optional[Tuple[str, str]]:
    if lit is None:
        return None
    lit = lit.strip()
    if ":" not in lit:
        raise f.error(ln, f"expected a weight literal such as h:3 or cond:NAME, got {lit!r}")
    k, v = lit.split(":", 1)
    if k not in _PREFIX.values():
        raise f.error(ln, f"unknown weight literal prefix {k!r}")
    return k, v.strip()


def parse_system(text: str, path: str = "<string>") -> SystemFile:
    f = SystemFile(path=path)
    lines = text.splitlines()
    i = 0
    while i < len(lines):
        ln = i + 1
        raw = lines[i].strip()
        i += 1
        if not raw or raw.startswith("#"):
            continue
        head, _, rest = raw.partition(" ")
        rest = rest.strip()
        if head == "domain":
            if rest not in DOMAINS:
                raise f.error(ln, f"expected one of {', '.join(DOMAINS)} after 'domain', got {rest!r}")
            f.domain = rest
        elif head == "states":
            f.states = tuple(rest.split())
            if not f.states:
                raise f.error(ln, "expected at least one state name")
        elif head == "alphabet":
            f.alphabet = tuple(rest.split())
            if not f.alphabet:
                raise f.error(ln, "expected at least one stack symbol")
            if any(":" in g or "/" in g or "," in g for g in f.alphabet):
                raise f.error(ln, "stack symbols may not contain ':', '/' or ','")
        elif head == "rule":
            f.rules.append(_parse_rule(f, raw, ln))
        elif head == "automaton":
            name = rest
            if not name or " " in name:
                raise f.error(ln, "expected 'automaton NAME'")
            body = []
            while i < len(lines) and lines[i].strip() != "end":
                body.append(lines[i])
                i += 1
            if i == len(lines):
                raise f.error(ln, f"automaton {name} is missing its 'end' line")
            i += 1
            try:
                f.automata[name] = R.parse_dfa("\n".join(body))
            except ValueError as e:
                raise f.error(ln, f"in automaton {name}: {e}") from None
            f.lines[name] = ln
        elif head == "order":
            f.order = _parse_order(f, rest, ln)
        elif head == "le":
            if not isinstance(f.order, W.FiniteOrder):
                raise f.error(ln, "'le' needs a preceding 'order finite ...' line")
            parts = rest.split()
            if len(parts) != 2:
                raise f.error(ln, "expected 'le x y'")
            try:
                f.order = W.FiniteOrder(f.order.elements, list(f.order.edges) + [tuple(parts)])
            except ValueError as e:
                raise f.error(ln, str(e)) from None
        elif head == "transfer":
            name, phi = _parse_transfer(f, rest, ln)
            f.transfers[name] = phi
            f.lines[name] = ln
        else:
            raise f.error(ln, f"unknown directive {head!r}; expected domain, states, alphabet, rule, "
                              "automaton, order, le or transfer")
    if not f.states:
        raise f.error(len(lines), "missing 'states' line")
    return f


def _parse_rule(f: SystemFile, raw: str, ln: int) -> RuleLine:
    m = _RULE.match(raw)
    body = m.group("body") if m else ""
    lhs, arrow, rhs = body.partition("->")
    if not arrow:
        raise f.error(ln, "expected 'rule p γ -> p2 w1 ... [weight]'")
    left, right = lhs.split(), rhs.split()
    lit = _split_lit(m.group("lit"), f, ln)
    if len(left) == 1 and len(right) == 1:
        # transfer rules of a WSPDS name no symbol
        return RuleLine(left[0], None, right[0], (), lit and ":".join(lit), ln)
    if len(left) != 2 or len(right) < 2:
        raise f.error(ln, "expected 'rule p γ -> p2 w1 ... [weight]' (write '-' for an empty push word)")
    push = () if right[1:] == ["-"] else tuple(right[1:])
    if "-" in push:
        raise f.error(ln, "'-' stands alone for the empty push word")
    return RuleLine(left[0], left[1], right[0], push, lit and ":".join(lit), ln)


def _parse_order(f: SystemFile, rest: str, ln: int) -> W.Wqo:
    parts = rest.split()
    if parts[:1] == ["vector"] and len(parts) == 2 and parts[1].isdigit() and int(parts[1]) > 0:
        return W.VectorOrder(int(parts[1]))
    if parts[:1] == ["finite"] and len(parts) > 1:
        return W.FiniteOrder(parts[1:], [])
    raise f.error(ln, "expected 'order vector K' or 'order finite x y ...'")


def _parse_transfer(f: SystemFile, rest: str, ln: int):
    parts = rest.split()
    if len(parts) < 2:
        raise f.error(ln, "expected 'transfer NAME vector ...' or 'transfer NAME finite ...'")
    name, kind, args = parts[0], parts[1], parts[2:]
    order = f.order
    try:
        if kind == "vector":
            if not isinstance(order, W.VectorOrder):
                raise f.error(ln, "a vector transfer needs 'order vector K' first")
            kv = dict(a.split("=", 1) for a in args)
            guard = order.parse(kv["guard"])
            deltas_text = kv.get("deltas", "")
            deltas = [] if deltas_text in ("", "-") else list(W.TupleOrder(order).parse(deltas_text))
            return name, W.VectorTransfer(order, guard, deltas)
        if kind == "finite":
            if not isinstance(order, W.FiniteOrder):
                raise f.error(ln, "a finite transfer needs 'order finite ...' first")
            if not args or not args[0].startswith("arity="):
                raise f.error(ln, "expected 'arity=K' after 'finite'")
            arity = int(args[0][6:])
            mapping = {}
            for a in args[1:]:
                x, arrow, y = a.partition("->")
                if not arrow:
                    raise f.error(ln, f"expected 'x->y1,...' in transfer, got {a!r}")
                mapping[order.parse(x)] = W.TupleOrder(order).parse(y)
            return name, W.FiniteTransfer(order, mapping, arity=arity)
    except FormatError:
        raise
    except (KeyError, ValueError) as e:
        raise f.error(ln, f"bad transfer {name}: {e}") from None
    raise f.error(ln, f"unknown transfer kind {kind!r}; expected vector or finite")


def load_system(path: str) -> SystemFile:
    with open(path, encoding="utf-8") as fh:
        return parse_system(fh.read(), path=path)


def _check_rule(f: SystemFile, r: RuleLine):
    if r.src not in f.states or r.dst not in f.states:
        raise f.error(r.line, f"undeclared state in rule {r.src} -> {r.dst}")
    if r.sym is None:
        raise f.error(r.line, "expected 'rule p γ -> p2 w ...'; only WSPDS rules omit the symbol")
    if r.sym not in f.alphabet or any(x not in f.alphabet for x in r.push):
        raise f.error(r.line, "rule uses a symbol missing from the 'alphabet' line")


def _literal(f: SystemFile, r: RuleLine, domain: str) -> Optional[str]:
    if r.literal is None:
        return None
    k, v = r.literal.split(":", 1)
    if k != _PREFIX[domain]:
        raise f.error(r.line, f"weight literal {k}: does not belong to the {domain} domain "
                              f"(expected {_PREFIX[domain]}:)")
    return v


def _automaton(f: SystemFile, r: RuleLine, name: str) -> R.Dfa:
    if name not in f.automata:
        raise f.error(r.line, f"no automaton named {name!r} in this file")
    return f.automata[name]


def build(f: SystemFile, domain: Optional[str] = None, closure_cap: int = 10_000,
          probe_bound: int = 3) -> Analysis:
    """Turn a parsed file into a weighted system; ``domain`` overrides the file's."""
    domain = domain or f.domain
    if domain is None:
        raise f.error(1, "no 'domain' line and no domain selected")
    if domain not in DOMAINS:
        raise f.error(1, f"unknown domain {domain!r}")
    name = f.path
    if domain == "wspds":
        return _build_wspds(f, probe_bound, name)
    for r in f.rules:
        _check_rule(f, r)
    if domain == "minheight":
        K = minheight_semiring(f.alphabet)
        rules = []
        for r in f.rules:
            v = _literal(f, r, domain)
            try:
                h = max(1, len(r.push)) if v is None else parse_height(v)
            except ValueError as e:
                raise f.error(r.line, f"bad height literal: {e}") from None
            rules.append(Rule(r.src, r.sym, r.dst, r.push, h))
        return Analysis(domain, K.ws, _wpds(f, f.alphabet, rules, K, name), f, f.alphabet)
    if domain == "relations":
        ws = Relations(f.alphabet)
        K = lift(ws)
        rules = []
        for r in f.rules:
            v = _literal(f, r, domain)
            try:
                rel = frozenset({((r.sym,), r.push)}) if v is None else parse_relation(v)
            except ValueError as e:
                raise f.error(r.line, f"bad relation literal: {e}") from None
            rules.append(Rule(r.src, HASH, r.dst, (HASH,) * len(r.push), rel))
        P = _wpds(f, (HASH,), rules, K, name)
        P.meta["gamma"] = f.alphabet
        return Analysis(domain, ws, P, f, f.alphabet)
    if domain == "conditional":
        crules = []
        for r in f.rules:
            v = _literal(f, r, domain)
            c = R.universal(f.alphabet) if v is None else _automaton(f, r, v)
            crules.append((r.src, r.sym, r.dst, r.push, c))
        try:
            ws, P = conditional_ws(ConditionalPDS(f.states, f.alphabet, crules), cap=closure_cap, name=name)
        except R.AlphabetMismatch as e:
            raise f.error(1, str(e)) from None
        return Analysis(domain, ws, P, f, f.alphabet)
    # trpds
    trules = []
    for r in f.rules:
        v = _literal(f, r, domain)
        t = R.identity(f.alphabet) if v is None else _automaton(f, r, v)
        trules.append((r.src, r.sym, r.dst, r.push, t))
    try:
        ws, P = trpds_ws(TrPDS(f.states, f.alphabet, trules), cap=closure_cap, name=name)
    except R.AlphabetMismatch as e:
        raise f.error(1, str(e)) from None
    return Analysis(domain, ws, P, f, f.alphabet)


def _wpds(f: SystemFile, alphabet, rules, K, name) -> WeightedPDS:
    try:
        return WeightedPDS(f.states, alphabet, rules, K, name=name)
    except (ValueError, WeightIndexError) as e:
        raise f.error(1, str(e)) from None


def _build_wspds(f: SystemFile, probe_bound: int, name: str) -> Analysis:
    if f.order is None:
        raise f.error(1, "a WSPDS file needs an 'order' line")
    rules = []
    for r in f.rules:
        if r.src not in f.states or r.dst not in f.states:
            raise f.error(r.line, f"undeclared state in rule {r.src} -> {r.dst}")
        if r.sym is not None:
            raise f.error(r.line, "expected 'rule p -> p2 [phi:NAME]' in a WSPDS file")
        v = _literal(f, r, "wspds")
        if v is None:
            raise f.error(r.line, "WSPDS rules need a [phi:NAME] transfer")
        if v not in f.transfers:
            raise f.error(r.line, f"no transfer named {v!r} in this file")
        rules.append((r.src, r.dst, f.transfers[v]))
    ws, P = wspds_ws(Wspds(f.states, f.order, rules), probe_bound=probe_bound, name=name)
    return Analysis("wspds", ws, P, f)
