"""Run the law suites over every shipped weight structure and its lifted and flattened forms."""

from __future__ import annotations

import argparse

from sigpds.algebra import NaiveFlatSemiring, flatten, lift
from sigpds.domains import SHIPPED, default_structure
from sigpds.laws import law_suite


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--samples", type=int, default=1000)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--domain", choices=SHIPPED, action="append", help="restrict to these domains")
    args = ap.parse_args()

    bad = 0
    for d in args.domain or SHIPPED:
        ws = default_structure(d)
        for subject in (ws, lift(ws), flatten(lift(ws))):
            rep = law_suite(subject, samples=args.samples, seed=args.seed, name=d)
            print(rep.render(), end="\n\n")
            bad += len(rep.failures())
    naive = law_suite(NaiveFlatSemiring(lift(default_structure("minheight"))), samples=args.samples, seed=args.seed)
    print("expected to fail (addition that ignores signatures):")
    print(naive.render())
    for name in ("distrib-left", "distrib-right"):
        print(f"  {name} witness shapes: {naive.record(name).witness_shapes[:3]}")
    return 1 if bad else 0


if __name__ == "__main__":
    raise SystemExit(main())
