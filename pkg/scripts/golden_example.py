"""Saturate the four-state min-height example and print the automaton and a few deltas."""

from __future__ import annotations

import argparse
from pathlib import Path

from sigpds.fileformat import build, load_system
from sigpds.saturation import delta, saturate
from sigpds.signatures import Sig

ROOT = Path(__file__).resolve().parent.parent


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("system", nargs="?", default=str(ROOT / "systems" / "pex.pds"))
    ap.add_argument("--trace", action="store_true", help="print every edge update")
    args = ap.parse_args()

    P = build(load_system(args.system)).P
    res = saturate(P, trace=args.trace)
    if args.trace:
        for i, ev in enumerate(res.trace):
            q, g, r = ev.edge
            s = Sig((g,), ())
            old, new = P.semiring.render(s, ev.old), P.semiring.render(s, ev.new)
            print(f"{i:3}  rule {ev.rule_index}: {q} --{g}--> {r}  {old} -> {new}")
        print()
    print(res.automaton.dump(), end="")
    print(f"\n{res.updates} edge updates, {res.rule_firings} rule firings")
    K = P.semiring
    for sym in P.alphabet:
        s = Sig((sym,), ())
        for p in P.states:
            for q in P.states:
                d = delta(res.automaton, p, (sym,), q)
                if not K.is_zero(s, d):
                    print(f"delta({p}, {sym}, {q}) = {K.render(s, d)}")


if __name__ == "__main__":
    main()
