"""Batch front end.

Exit codes: 0 success, 1 a yes/no query answered "no" (or a law failed),
2 bad input, 3 a cap or budget was exceeded.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from typing import List, Optional

from . import signatures as S
from .algebra import NaiveFlatSemiring, WeightIndexError, flatten, lift
from .domains import SHIPPED, default_structure
from .domains.conditional import OutsideClosure, cond_reach
from .domains.minheight import INF
from .domains.relations import relation_reach_to
from .domains.trpds import tr_reach
from .domains.wspds import cover
from .fileformat import DOMAINS, FormatError, build, load_system
from .laws import law_suite
from .reglang import AlphabetMismatch, FailureTooLarge
from .saturation import DEFAULT_BUDGET, BudgetExceeded, NotLocallyBounded, WorklistOrder, delta, saturate
from .wqo import TupleOrder

EXIT_OK, EXIT_NO, EXIT_INPUT, EXIT_CAP = 0, 1, 2, 3

COMMANDS = ("presat", "delta", "minheight", "reach", "cover", "trreach", "laws")
_ALLOWED = {
    "presat": DOMAINS,
    "delta": DOMAINS,
    "minheight": ("minheight",),
    "reach": ("minheight", "relations", "conditional", "trpds"),
    "cover": ("wspds",),
    "trreach": ("trpds",),
}


class InputError(Exception):
    pass


class _Report:
    def __init__(self, command: str, input_: Optional[str]):
        self.command = command
        self.input = input_
        self.result = None
        self.text: List[str] = []
        self.diagnostics: List[str] = []

    def emit(self, fmt: str, out) -> None:
        if fmt == "json":
            obj = {"command": self.command, "input": self.input, "result": self.result,
                   "diagnostics": self.diagnostics}
            out.write(json.dumps(obj, ensure_ascii=False, indent=2) + "\n")
            return
        for line in self.text:
            out.write(line + "\n")
        for d in self.diagnostics:
            sys.stderr.write(d + "\n")


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--domain", choices=DOMAINS + ("wspds-vector",), help="override the file's domain")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--closure-cap", type=int, default=10_000, help="cap on closure sizes")
    common.add_argument("--steps", type=int, default=DEFAULT_BUDGET, help="saturation budget in edge updates")
    common.add_argument("--depth", type=int, default=2, help="longest signature component sampled by 'laws'")
    common.add_argument("--probe-bound", type=int, default=3, help="probe grid for WSPDS weight equality")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--samples", type=int, default=1000)

    ap = argparse.ArgumentParser(prog="sigpds", description="Reachability for weighted pushdown systems.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("presat", parents=[common], help="saturate and dump the automaton")
    p.add_argument("file")
    p.add_argument("--policy", choices=("fifo", "lifo"), default="fifo")
    p.add_argument("--order-seed", type=int, default=None, help="shuffle the initial worklist")
    p.add_argument("--trace", action="store_true", help="print edge updates as they happen")

    for name, helptext in (("delta", "weight of paths from <p, w> to p2"),
                           ("minheight", "minimum stack height from <p, w> to <p2, eps>")):
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("file")
        p.add_argument("p")
        p.add_argument("word")
        p.add_argument("p2")

    p = sub.add_parser("reach", parents=[common], help="can <p, w> reach <p2, w2>?")
    p.add_argument("file")
    p.add_argument("p")
    p.add_argument("word")
    p.add_argument("p2")
    p.add_argument("word2", nargs="?", default="ε")

    for name, helptext in (("cover", "can <p, w> reach a configuration covering <p2, w2>?"),
                           ("trreach", "can <p, w> reach <p2, w2> in a transducer system?")):
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("file")
        p.add_argument("p")
        p.add_argument("word")
        p.add_argument("p2")
        p.add_argument("word2")

    p = sub.add_parser("laws", parents=[common], help="randomised law checks for a weight domain")
    p.add_argument("file", nargs="?", help="take the weight structure from this system file")
    p.add_argument("--structure", choices=("all", "weight", "lifted", "flat", "naive"), default="all",
                   help="'all' checks the weight structure, its lifting and its flattening")
    return ap


def _word(text: str, alphabet) -> tuple:
    t = text.strip()
    if t in ("", "ε", "-", "eps"):
        return ()
    parts = tuple(x for x in re.split(r"[,\s]+", t) if x)
    bad = [x for x in parts if x not in alphabet]
    if bad:
        raise InputError(f"symbol {bad[0]!r} is not in the declared alphabet {' '.join(alphabet)}")
    return parts


def _state(a, p):
    if p not in a.P.states:
        raise InputError(f"unknown state {p!r}; declared: {' '.join(map(str, a.P.states))}")
    return p


def _load(args, rep: _Report):
    f = load_system(args.file)
    a = build(f, domain=args.domain, closure_cap=args.closure_cap, probe_bound=args.probe_bound)
    allowed = _ALLOWED[args.command]
    if a.domain not in allowed:
        raise InputError(f"command {args.command} does not apply to the {a.domain} domain "
                         f"(supported: {', '.join(allowed)})")
    return a


def _cmd_presat(args, rep: _Report) -> int:
    a = _load(args, rep)
    order = WorklistOrder(seed=args.order_seed, policy=args.policy)
    res = saturate(a.P, order=order, budget=args.steps, trace=args.trace)
    A = res.automaton
    K = a.P.semiring
    if args.trace:
        rep.text.extend(ev.render(K) for ev in res.trace)
        rep.text.append("--")
    rep.text.extend(A.dump().splitlines())
    rep.result = A.to_json_obj()
    rep.diagnostics.append(f"{len(A.nonzero_edges())} edges, {res.updates} edge updates, {res.rule_firings} rule firings")
    return EXIT_OK


def _stack_word(a, text: str) -> tuple:
    return _word(text, a.gamma or a.P.alphabet)


def _cmd_delta(args, rep: _Report) -> int:
    a = _load(args, rep)
    p, p2 = _state(a, args.p), _state(a, args.p2)
    w = _stack_word(a, args.word)
    K = a.P.semiring
    A = saturate(a.P, budget=args.steps).automaton
    if a.domain in ("minheight", "conditional"):
        idx, path = S.Sig(w, ()), w
    else:
        idx, path = S.Sig(("#",) * len(w), ()), ("#",) * len(w)
    value = delta(A, p, path, p2)
    if a.domain in ("relations", "trpds"):
        # select the entry for the concrete word
        value = _select(a, value, w)
    if args.command == "minheight":
        rep.text.append("inf" if value == INF else str(value))
        rep.result = {"p": p, "word": list(w), "p2": p2, "height": None if value == INF else value}
        return EXIT_OK
    rendered = K.render_safe(idx, value) if not isinstance(value, _Selected) else value.text
    rep.text.append(rendered)
    rep.result = {"p": p, "word": list(w), "p2": p2,
                  "weight": value.json if isinstance(value, _Selected) else K.to_json(idx, value)}
    return EXIT_OK


class _Selected:
    def __init__(self, text, json_):
        self.text = text
        self.json = json_


def _select(a, value, w) -> _Selected:
    from .reglang import format_dfa
    from .domains.relations import format_relation

    if a.domain == "relations":
        hits = frozenset(pair for pair in value if pair[0] == w)
        return _Selected(format_relation(hits), [[list(x), list(y)] for x, y in sorted(hits)])
    t = value.get((w, ()))
    if t is None:
        return _Selected("∅", None)
    return _Selected(a.ws._t_name(t), format_dfa(t))


def _cmd_reach(args, rep: _Report) -> int:
    a = _load(args, rep)
    p, p2 = _state(a, args.p), _state(a, args.p2)
    w, w2 = _stack_word(a, args.word), _stack_word(a, args.word2)
    if a.domain == "minheight":
        if w2:
            raise InputError("the minheight domain answers reachability of empty-stack targets only")
        A = saturate(a.P, budget=args.steps).automaton
        ok = delta(A, p, w, p2) != INF
    elif a.domain == "relations":
        ok = relation_reach_to(a.P, p, w, p2, w2)
    elif a.domain == "conditional":
        ok = cond_reach(a.P, p, w, p2, w2)
    else:
        ok = tr_reach(a.P, p, w, p2, w2)
    src, dst = f"<{p}, {S.format_word(w)}>", f"<{p2}, {S.format_word(w2)}>"
    rep.text.append(f"{dst} is {'reachable' if ok else 'not reachable'} from {src}")
    rep.result = {"reachable": ok}
    return EXIT_OK if ok else EXIT_NO


def _cmd_trreach(args, rep: _Report) -> int:
    return _cmd_reach(args, rep)


def _cmd_cover(args, rep: _Report) -> int:
    a = _load(args, rep)
    p, p2 = _state(a, args.p), _state(a, args.p2)
    words = TupleOrder(a.ws.order)
    try:
        w, w2 = words.parse(args.word), words.parse(args.word2)
    except ValueError as e:
        raise InputError(str(e)) from None
    ok = cover(a.P, (p, w), (p2, w2))
    src, dst = f"<{p}, {words.render(w)}>", f"<{p2}, {words.render(w2)}>"
    if ok:
        rep.text.append(f"covered: {src} reaches a configuration at {p2} whose stack dominates {words.render(w2)}")
    else:
        rep.text.append(f"not covered: no configuration reachable from {src} dominates {dst}")
    rep.result = {"covered": ok}
    rep.diagnostics.append("coverability answer (reachability up to the order), not exact reachability")
    return EXIT_OK if ok else EXIT_NO


def _cmd_laws(args, rep: _Report) -> int:
    if args.file:
        f = load_system(args.file)
        a = build(f, domain=args.domain if args.domain in DOMAINS else None,
                  closure_cap=args.closure_cap, probe_bound=min(args.probe_bound, 2))
        ws, name = a.ws, f"{a.domain} ({args.file})"
    else:
        if not args.domain:
            raise InputError(f"laws needs --domain ({', '.join(SHIPPED)}) or a system file")
        ws, name = default_structure(args.domain, probe_bound=min(args.probe_bound, 2), cap=args.closure_cap), args.domain
    subjects = []
    if args.structure in ("all", "weight"):
        subjects.append((f"{name}: weight structure", ws))
    if args.structure in ("all", "lifted"):
        subjects.append((f"{name}: lifted", lift(ws)))
    if args.structure in ("all", "flat"):
        subjects.append((f"{name}: flattened", flatten(lift(ws))))
    if args.structure == "naive":
        subjects.append((f"{name}: naive flattening", NaiveFlatSemiring(lift(ws))))
    reports = [law_suite(s, samples=args.samples, seed=args.seed, max_len=args.depth, name=n) for n, s in subjects]
    for r in reports:
        rep.text.append(r.render())
    rep.result = [r.to_json_obj() for r in reports]
    ok = all(r.ok for r in reports)
    if not ok:
        rep.diagnostics.append("law violation")
    return EXIT_OK if ok else EXIT_NO


_HANDLERS = {
    "presat": _cmd_presat,
    "delta": _cmd_delta,
    "minheight": _cmd_delta,
    "reach": _cmd_reach,
    "cover": _cmd_cover,
    "trreach": _cmd_trreach,
    "laws": _cmd_laws,
}


def run(argv: Optional[List[str]] = None, out=None) -> int:
    out = out or sys.stdout
    ap = _parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return EXIT_INPUT if e.code else EXIT_OK
    rep = _Report(args.command, getattr(args, "file", None))
    try:
        code = _HANDLERS[args.command](args, rep)
    except (FormatError, InputError, AlphabetMismatch, WeightIndexError, OSError) as e:
        rep.diagnostics.append(f"error: {e}")
        code = EXIT_INPUT
    except (FailureTooLarge, BudgetExceeded) as e:
        rep.diagnostics.append(f"cap exceeded: {e}")
        code = EXIT_CAP
    except NotLocallyBounded as e:
        rep.diagnostics.append(f"error: {e}")
        code = EXIT_INPUT
    except OutsideClosure as e:
        rep.diagnostics.append(f"internal error: {e}")
        code = EXIT_INPUT
    rep.emit(args.format, out)
    return code


def main(argv: Optional[List[str]] = None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
