"""Cross-validate the three engines on a corpus and print a summary line per ideal.

    python scripts/run_corpus.py --n 4                       # every squarefree ideal on 4 variables
    python scripts/run_corpus.py --n 6 --random 50 --seed 2026
"""
import argparse
import time

from subcyc.corpus import all_squarefree_ideals, random_corpus
from subcyc.field_linalg import FieldSpec
from subcyc.invariants import cross_validate


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=int, default=3)
    ap.add_argument("--random", type=int, help="sample this many ideals instead of enumerating")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--max-gens", type=int, default=6)
    ap.add_argument("--field", default="q")
    ap.add_argument("--quiet", action="store_true")
    args = ap.parse_args()

    f = FieldSpec.parse(args.field)
    corpus = (random_corpus(args.random, args.n, args.seed, args.max_gens) if args.random
              else all_squarefree_ideals(args.n))
    bad = 0
    t0 = time.perf_counter()
    for I in corpus:
        t = time.perf_counter()
        rep = cross_validate(I, f)
        bad += not rep.ok
        if not args.quiet or not rep.ok:
            print(f"{'ok  ' if rep.ok else 'FAIL'} {time.perf_counter() - t:6.2f}s  {I}")
            for d in rep.diffs[:10]:
                print(f"      {d}")
    print(f"{len(corpus) - bad}/{len(corpus)} ideals agree over {f} in {time.perf_counter() - t0:.1f}s")
    raise SystemExit(1 if bad else 0)


if __name__ == "__main__":
    main()
