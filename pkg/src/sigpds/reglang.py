"""Canonical finite automata over an alphabet or over letter pairs.

Every :class:`Dfa` is kept minimal, complete and numbered in breadth-first
order from the initial state, so two automata over the same alphabet are
``==`` exactly when they accept the same language.  Letter-to-letter
transductions are plain DFAs whose symbols are ``(input, output)`` pairs.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Dict, FrozenSet, Hashable, Iterable, List, Sequence, Tuple

__all__ = [
    "Dfa",
    "Transduction",
    "FailureTooLarge",
    "AlphabetMismatch",
    "universal",
    "empty",
    "from_table",
    "union",
    "intersect",
    "complement",
    "quotient",
    "membership",
    "is_empty",
    "determinize",
    "pair_alphabet",
    "identity",
    "letter_relation",
    "compose",
    "pair_quotient",
    "closure",
    "language_closure",
    "words",
    "parse_dfa",
    "format_dfa",
]


class AlphabetMismatch(ValueError):
    pass


class FailureTooLarge(RuntimeError):
    """A closure computation exceeded its element cap."""

    def __init__(self, size: int, cap: int, what: str = "closure"):
        super().__init__(f"{what} exceeded the cap of {cap} elements (reached {size})")
        self.size = size
        self.cap = cap


@dataclass(frozen=True, eq=True)
class Dfa:
    alphabet: Tuple[Hashable, ...]
    trans: Tuple[Tuple[int, ...], ...]
    init: int
    accept: FrozenSet[int]
    _hash: int = field(default=0, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "_hash", hash((self.alphabet, self.trans, self.init, self.accept)))

    def __hash__(self) -> int:
        return self._hash

    @property
    def n(self) -> int:
        return len(self.trans)

    def index(self, symbol) -> int:
        try:
            return self._index()[symbol]
        except KeyError:
            raise AlphabetMismatch(f"symbol {symbol!r} not in alphabet {self.alphabet}") from None

    def _index(self) -> Dict[Hashable, int]:
        return _alphabet_index(self.alphabet)

    def run(self, word: Iterable, state: int | None = None) -> int:
        q = self.init if state is None else state
        idx = self._index()
        for x in word:
            q = self.trans[q][idx[x]]
        return q

    def __contains__(self, word) -> bool:
        return membership(self, word)

    def __repr__(self) -> str:
        return f"Dfa(n={self.n}, alphabet={self.alphabet!r}, accept={sorted(self.accept)})"


Transduction = Dfa


@lru_cache(maxsize=None)
def _alphabet_index(alphabet: tuple) -> Dict[Hashable, int]:
    return {a: i for i, a in enumerate(alphabet)}


def _norm_alphabet(alphabet: Iterable) -> tuple:
    return tuple(sorted(set(alphabet)))


def _canonical(alphabet: tuple, trans: Sequence[Sequence[int]], init: int, accept) -> Dfa:
    """Trim, minimise (Hopcroft) and renumber breadth-first."""
    k = len(alphabet)
    accept = set(accept)
    # reachable part
    seen = {init: 0}
    order = [init]
    i = 0
    while i < len(order):
        q = order[i]
        i += 1
        for a in range(k):
            r = trans[q][a]
            if r not in seen:
                seen[r] = len(order)
                order.append(r)
    n = len(order)
    tr = [[seen[trans[q][a]] for a in range(k)] for q in order]
    acc = {seen[q] for q in order if q in accept}

    # Hopcroft partition refinement
    inv: List[List[List[int]]] = [[[] for _ in range(n)] for _ in range(k)]
    for q in range(n):
        for a in range(k):
            inv[a][tr[q][a]].append(q)
    blocks: List[set] = []
    block_of = [0] * n
    for part in (acc, set(range(n)) - acc):
        if part:
            for q in part:
                block_of[q] = len(blocks)
            blocks.append(set(part))
    work = deque()
    if len(blocks) == 2:
        small = 0 if len(blocks[0]) <= len(blocks[1]) else 1
        for a in range(k):
            work.append((small, a))
    elif blocks:
        for a in range(k):
            work.append((0, a))
    in_work = set(work)
    while work:
        b, a = work.popleft()
        in_work.discard((b, a))
        pre = set()
        for q in blocks[b]:
            pre.update(inv[a][q])
        touched: Dict[int, set] = {}
        for q in pre:
            touched.setdefault(block_of[q], set()).add(q)
        for c, hit in touched.items():
            if len(hit) == len(blocks[c]):
                continue
            rest = blocks[c] - hit
            blocks[c] = hit
            new = len(blocks)
            blocks.append(rest)
            for q in rest:
                block_of[q] = new
            for x in range(k):
                if (c, x) in in_work:
                    work.append((new, x))
                    in_work.add((new, x))
                else:
                    pick = c if len(hit) <= len(rest) else new
                    work.append((pick, x))
                    in_work.add((pick, x))

    # renumber blocks breadth-first from the initial block
    start = block_of[0]
    num = {start: 0}
    queue = [start]
    rep = {b: min(blocks[b]) for b in range(len(blocks))}
    j = 0
    while j < len(queue):
        b = queue[j]
        j += 1
        for a in range(k):
            nb = block_of[tr[rep[b]][a]]
            if nb not in num:
                num[nb] = len(queue)
                queue.append(nb)
    out = tuple(tuple(num[block_of[tr[rep[b]][a]]] for a in range(k)) for b in queue)
    out_acc = frozenset(num[b] for b in queue if rep[b] in acc)
    return Dfa(alphabet, out, 0, out_acc)


def from_table(alphabet: Iterable, n: int, edges: Iterable[Tuple[int, Hashable, int]], init: int, accept: Iterable[int]) -> Dfa:
    """Build from a possibly partial edge list; missing moves go to a dead state."""
    alphabet = _norm_alphabet(alphabet)
    idx = _alphabet_index(alphabet)
    dead = n
    trans = [[dead] * len(alphabet) for _ in range(n + 1)]
    for q, a, r in edges:
        if a not in idx:
            raise AlphabetMismatch(f"symbol {a!r} not in alphabet {alphabet}")
        if not (0 <= q < n and 0 <= r < n):
            raise ValueError(f"state out of range in edge {(q, a, r)}")
        trans[q][idx[a]] = r
    return _canonical(alphabet, trans, init, accept)


def universal(alphabet: Iterable) -> Dfa:
    alphabet = _norm_alphabet(alphabet)
    return Dfa(alphabet, (tuple(0 for _ in alphabet),), 0, frozenset({0}))


def empty(alphabet: Iterable) -> Dfa:
    alphabet = _norm_alphabet(alphabet)
    return Dfa(alphabet, (tuple(0 for _ in alphabet),), 0, frozenset())


def _product(a: Dfa, b: Dfa, accept: Callable[[bool, bool], bool]) -> Dfa:
    if a.alphabet != b.alphabet:
        raise AlphabetMismatch(f"{a.alphabet} != {b.alphabet}")
    k = len(a.alphabet)
    ids = {(a.init, b.init): 0}
    pairs = [(a.init, b.init)]
    trans = []
    i = 0
    while i < len(pairs):
        p, q = pairs[i]
        i += 1
        row = []
        for x in range(k):
            nxt = (a.trans[p][x], b.trans[q][x])
            if nxt not in ids:
                ids[nxt] = len(pairs)
                pairs.append(nxt)
            row.append(ids[nxt])
        trans.append(row)
    acc = [i for i, (p, q) in enumerate(pairs) if accept(p in a.accept, q in b.accept)]
    return _canonical(a.alphabet, trans, 0, acc)


@lru_cache(maxsize=65536)
def union(a: Dfa, b: Dfa) -> Dfa:
    if a == b:
        return a
    return _product(a, b, lambda x, y: x or y)


@lru_cache(maxsize=65536)
def intersect(a: Dfa, b: Dfa) -> Dfa:
    if a == b:
        return a
    return _product(a, b, lambda x, y: x and y)


def complement(a: Dfa) -> Dfa:
    return _canonical(a.alphabet, a.trans, a.init, set(range(a.n)) - a.accept)


@lru_cache(maxsize=65536)
def quotient(word: tuple, a: Dfa) -> Dfa:
    """``{v | word + v in L(a)}``."""
    word = tuple(word)
    if not word:
        return a
    return _canonical(a.alphabet, a.trans, a.run(word), a.accept)


def membership(a: Dfa, word) -> bool:
    return a.run(word) in a.accept


def is_empty(a: Dfa) -> bool:
    # canonical automata only keep reachable states
    return not a.accept


def determinize(alphabet: Iterable, start: FrozenSet, step: Callable[[FrozenSet, Hashable], FrozenSet],
                accepting: Callable[[FrozenSet], bool]) -> Dfa:
    """Subset construction driven by a successor function on state sets."""
    alphabet = _norm_alphabet(alphabet)
    ids = {start: 0}
    sets = [start]
    trans = []
    i = 0
    while i < len(sets):
        cur = sets[i]
        i += 1
        row = []
        for x in alphabet:
            nxt = frozenset(step(cur, x))
            if nxt not in ids:
                ids[nxt] = len(sets)
                sets.append(nxt)
            row.append(ids[nxt])
        trans.append(row)
    acc = [i for i, s in enumerate(sets) if accepting(s)]
    return _canonical(alphabet, trans, 0, acc)


def words(a: Dfa, max_len: int):
    """All accepted words of length <= max_len, shortest first."""
    for n in range(max_len + 1):
        for w in itertools.product(a.alphabet, repeat=n):
            if membership(a, w):
                yield w


# -- transductions ----------------------------------------------------------


def pair_alphabet(gamma: Iterable) -> tuple:
    g = _norm_alphabet(gamma)
    return tuple((x, y) for x in g for y in g)


def _base_alphabet(t: Dfa) -> tuple:
    return _norm_alphabet(x for x, _ in t.alphabet)


def letter_relation(gamma: Iterable, pairs: Iterable[Tuple[Hashable, Hashable]]) -> Dfa:
    """Words related letter by letter through ``pairs``."""
    alph = pair_alphabet(gamma)
    ok = set(pairs)
    edges = [(0, p, 0) for p in alph if p in ok]
    return from_table(alph, 1, edges, 0, [0])


def identity(gamma: Iterable) -> Dfa:
    g = _norm_alphabet(gamma)
    return letter_relation(g, [(x, x) for x in g])


@lru_cache(maxsize=65536)
def compose(t1: Dfa, t2: Dfa) -> Dfa:
    """``{(u, w) | (u, v) in t1 and (v, w) in t2}`` for letter-to-letter t1, t2."""
    if t1.alphabet != t2.alphabet:
        raise AlphabetMismatch(f"{t1.alphabet} != {t2.alphabet}")
    gamma = _base_alphabet(t1)
    i1, i2 = t1._index(), t2._index()

    def step(cur, sym):
        a, c = sym
        out = set()
        for p, q in cur:
            for b in gamma:
                out.add((t1.trans[p][i1[(a, b)]], t2.trans[q][i2[(b, c)]]))
        return out

    def accepting(cur):
        return any(p in t1.accept and q in t2.accept for p, q in cur)

    return determinize(t1.alphabet, frozenset({(t1.init, t2.init)}), step, accepting)


def pair_quotient(pair: Tuple[Hashable, Hashable], t: Dfa) -> Dfa:
    return quotient((tuple(pair),), t)


def _close(seed: Iterable[Dfa], unary: Sequence[Callable[[Dfa], Dfa]],
           binary: Sequence[Callable[[Dfa, Dfa], Dfa]], cap: int, what: str) -> FrozenSet[Dfa]:
    found: List[Dfa] = []
    seen = set()
    queue = deque()

    def push(x: Dfa):
        if x not in seen:
            seen.add(x)
            queue.append(x)
            if len(seen) > cap:
                raise FailureTooLarge(len(seen), cap, what)

    for x in seed:
        push(x)
    while queue:
        x = queue.popleft()
        found.append(x)
        for f in unary:
            push(f(x))
        for y in list(found):
            for g in binary:
                push(g(x, y))
                push(g(y, x))
    return frozenset(found)


class _TypeSpace:
    """Word types over a quotient-closed family ``G`` of languages.

    The type of a word is the set of members of ``G`` that contain it.  As
    ``G`` is closed under letter quotients, the type of ``x w`` depends only
    on ``x`` and the type of ``w``, so the realizable types are found by a
    search from the type of the empty word.  A union or intersection of
    members is then the union or intersection of their sets of types, kept
    as bitmasks; two bitmasks are equal exactly when the languages are.
    """

    def __init__(self, family: Sequence[Dfa], alphabet: tuple, what: str, cap: int):
        self.alphabet = alphabet
        self.family = list(family)
        pos = {g: i for i, g in enumerate(self.family)}
        n = len(self.family)
        # step[x][i]: position of the quotient of member i by letter x
        self.step = [[pos[quotient((x,), g)] for g in self.family] for x in alphabet]
        self.nullable = [g.init in g.accept for g in self.family]
        t0 = frozenset(i for i in range(n) if self.nullable[i])
        ids = {t0: 0}
        types = [t0]
        k = 0
        while k < len(types):
            t = types[k]
            k += 1
            for row in self.step:
                t2 = frozenset(i for i in range(n) if row[i] in t)
                if t2 not in ids:
                    ids[t2] = len(types)
                    types.append(t2)
                    if len(types) > 64 * cap:
                        raise FailureTooLarge(len(types), 64 * cap, what + " (word types)")
        self.type_id = ids
        masks = [0] * n
        for j, t in enumerate(types):
            for i in t:
                masks[i] |= 1 << j
        self.masks = masks
        self._forward = None

    def _automaton(self):
        # reading w moves to the tuple of quotients of every member by w
        if self._forward is None:
            start = tuple(range(len(self.family)))
            ids = {start: 0}
            states = [start]
            trans = []
            k = 0
            while k < len(states):
                cur = states[k]
                k += 1
                row = []
                for step in self.step:
                    nxt = tuple(step[i] for i in cur)
                    if nxt not in ids:
                        ids[nxt] = len(states)
                        states.append(nxt)
                    row.append(ids[nxt])
                trans.append(row)
            kinds = [self.type_id[frozenset(i for i, q in enumerate(s) if self.nullable[q])] for s in states]
            self._forward = (trans, kinds)
        return self._forward

    def to_dfa(self, mask: int) -> Dfa:
        trans, kinds = self._automaton()
        acc = [j for j, k in enumerate(kinds) if mask >> k & 1]
        return _canonical(self.alphabet, trans, 0, acc)


def _quotient_family(base: Iterable[Dfa], alphabet: tuple, cap: int, what: str) -> List[Dfa]:
    return sorted(_close(base, [lambda a, x=x: quotient((x,), a) for x in alphabet], [], cap, what),
                  key=lambda d: (d.n, d.trans, sorted(d.accept)))


def _union_closure(space: _TypeSpace, cap: int, what: str) -> set:
    found = {0}
    for m in space.masks:
        if m in found:
            continue
        for u in list(found):
            found.add(u | m)
            if len(found) > cap:
                raise FailureTooLarge(len(found), cap, what)
    return found


def closure(seed: Iterable[Dfa], gamma: Iterable | None = None, cap: int = 10_000) -> FrozenSet[Dfa]:
    """Least set of transductions containing ``seed``, the empty relation and
    the identity, closed under composition, union and letter-pair quotients.

    Composition and quotients distribute over union, so the result is the
    set of unions of the (usually much smaller) family closed under
    composition and quotients alone.
    """
    seed = list(seed)
    if gamma is None:
        if not seed:
            raise ValueError("closure of an empty seed needs the base alphabet")
        gamma = _base_alphabet(seed[0])
    pairs = pair_alphabet(gamma)
    base = [empty(pairs), identity(gamma)] + seed
    what = "transduction closure"
    unary = [lambda t, p=p: pair_quotient(p, t) for p in pairs]
    family = sorted(_close(base, unary, [compose], cap, what), key=lambda d: (d.n, d.trans, sorted(d.accept)))
    space = _TypeSpace(family, pairs, what, cap)
    return frozenset(space.to_dfa(m) for m in _union_closure(space, cap, what))


def language_closure(seed: Iterable[Dfa], alphabet: Iterable, cap: int = 10_000) -> FrozenSet[Dfa]:
    """Least set of languages containing ``seed``, the empty language and
    ``alphabet*``, closed under union, intersection and letter quotients.

    Quotients distribute over union and intersection, so this is the
    lattice generated by all quotients of the seed.
    """
    alph = _norm_alphabet(alphabet)
    what = "condition closure"
    seed = list(seed)
    for a in seed:
        if a.alphabet != alph:
            raise AlphabetMismatch(f"{a.alphabet} != {alph}")
    space = _TypeSpace(_quotient_family([empty(alph), universal(alph)] + seed, alph, cap, what), alph, what, cap)
    found = set(space.masks)
    todo = list(found)
    while todo:
        x = todo.pop()
        for y in list(found):
            for z in (x | y, x & y):
                if z not in found:
                    found.add(z)
                    todo.append(z)
                    if len(found) > cap:
                        raise FailureTooLarge(len(found), cap, what)
    return frozenset(space.to_dfa(m) for m in found)


# -- text format ------------------------------------------------------------
#
#   dfa <nstates> <symbol> <symbol> ...
#   <q> <symbol> <q'>
#   accept <q> ...
#   init <q>
#
# Pair symbols of transductions are written ``a|b``.


def _sym_out(x) -> str:
    if isinstance(x, tuple):
        return "|".join(str(y) for y in x)
    return str(x)


def _sym_in(text: str):
    if "|" in text:
        parts = text.split("|")
        if len(parts) != 2 or not all(parts):
            raise ValueError(f"malformed pair symbol {text!r}")
        return tuple(parts)
    return text


def format_dfa(a: Dfa) -> str:
    lines = [f"dfa {a.n} " + " ".join(_sym_out(x) for x in a.alphabet)]
    for q in range(a.n):
        for i, x in enumerate(a.alphabet):
            lines.append(f"{q} {_sym_out(x)} {a.trans[q][i]}")
    lines.append("accept " + " ".join(str(q) for q in sorted(a.accept)))
    lines.append(f"init {a.init}")
    return "\n".join(lines)


def parse_dfa(text: str | Sequence[str]) -> Dfa:
    lines = text.splitlines() if isinstance(text, str) else list(text)
    lines = [ln.strip() for ln in lines]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines or not lines[0].startswith("dfa"):
        raise ValueError("automaton text must start with a 'dfa' header")
    head = lines[0].split()
    if len(head) < 2:
        raise ValueError("dfa header needs a state count")
    n = int(head[1])
    alphabet = [_sym_in(x) for x in head[2:]]
    edges = []
    accept: List[int] = []
    init = 0
    for ln in lines[1:]:
        parts = ln.split()
        if parts[0] == "accept":
            accept.extend(int(x) for x in parts[1:])
        elif parts[0] == "init":
            init = int(parts[1])
        elif len(parts) == 3:
            edges.append((int(parts[0]), _sym_in(parts[1]), int(parts[2])))
        else:
            raise ValueError(f"unrecognised automaton line {ln!r}")
    return from_table(alphabet, n, edges, init, accept)
