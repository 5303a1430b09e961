"""Seeded sweeps over random grammars.

    python scripts/sweep.py cs --seeds 200 --word-bound 8
    python scripts/sweep.py bar-hillel --seeds 200 --max-len 8 --max-states 4

Prints one line per failing seed and a summary; exits 1 if any seed fails.
"""
import argparse
import dataclasses
import json
import random
import sys
import time

from splicetool.contour import cs_decompose, cs_verify
from splicetool.grammar import enumerate_language
from splicetool.intersection import intersect_cfg_regular
from splicetool.oracle import filtered_language
from splicetool.randomgen import GrammarConfig, NfaConfig, random_cfg, random_nfa


def cs_case(rng, cfg, args):
    g = random_cfg(rng, cfg)
    rep = cs_verify(cs_decompose(g), g, args.word_bound)
    return rep.equal, len(rep.language)


def bar_hillel_case(rng, cfg, args):
    g = random_cfg(rng, cfg)
    m = random_nfa(rng, g.base, *g.start_type, NfaConfig(max_states=args.max_states))
    got = {w.edges for w in enumerate_language(intersect_cfg_regular(g, m), args.max_len)}
    want = filtered_language(g, m, args.max_len)
    return got == want, len(want)


CASES = {"cs": cs_case, "bar-hillel": bar_hillel_case}


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("check", choices=sorted(CASES))
    p.add_argument("--seeds", type=int, default=100)
    p.add_argument("--start", type=int, default=0, help="first seed")
    p.add_argument("--word-bound", type=int, default=8)
    p.add_argument("--max-len", type=int, default=8)
    p.add_argument("--max-states", type=int, default=4)
    p.add_argument("--max-colors", type=int, default=4)
    p.add_argument("--max-nodes", type=int, default=6)
    p.add_argument("--max-segment", type=int, default=2)
    p.add_argument("--json", metavar="FILE", help="write the summary as JSON")
    args = p.parse_args(argv)

    cfg = GrammarConfig(max_colors=args.max_colors, max_nodes=args.max_nodes,
                        max_segment=args.max_segment)
    case = CASES[args.check]
    failed, words = [], 0
    t0 = time.perf_counter()
    for seed in range(args.start, args.start + args.seeds):
        ok, n = case(random.Random(seed), cfg, args)
        words += n
        if not ok:
            failed.append(seed)
            print(f"seed {seed}: FAIL")
    dt = time.perf_counter() - t0
    print(f"{args.check}: {args.seeds - len(failed)}/{args.seeds} equal, {words} words, "
          f"{dt:.1f}s")
    if args.json:
        with open(args.json, "w") as fh:
            json.dump({"check": args.check, "seeds": args.seeds, "start": args.start,
                       "failed": failed, "words": words, "seconds": round(dt, 3),
                       "config": dataclasses.asdict(cfg)}, fh, indent=2)
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
