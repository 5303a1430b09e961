"""Command-line front end: ``splicetool <command> [options]``.

Exit status is 0 on success, 1 when an input fails validation (or a check
reports a difference), and 2 on usage errors.
"""
from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path
from typing import Any, Callable, List, Optional

from . import io
from .automaton import ClassicalNfa, Nfa, classical_to_nfa, enumerate_regular
from .contour import (contour_graph, contour_of_tree, cs_decompose, cs_verify, chromatic_factorization,
                      q_functor, universal_grammar)
from .dyck import (balanced_accepted, bracket_alphabet, dyck_k_grammar, index_automaton,
                   inverse_translate, is_balanced, s_translate, sdyck_grammar)
from .errors import SpliceError
from .grammar import (Cfg, analyze, bilinearize, enumerate_language, trim, validate_cfg)
from .graph import PathArrow, apply_functor
from .ids import label
from .intersection import intersect_cfg_regular, pullback_grammar
from .parsing import format_chart, parse_trees, recognize
from .species import check_tree
from .tree_automaton import (accepts_tree, count_tree_runs, enumerate_gcfg, intersect_gcfg_regular)

DEFAULT_MAX_LEN = 8
DEFAULT_MAX_NODES = 6


class CliError(Exception):
    """Bad input data; reported with exit status 1."""


def _words(ps) -> List[str]:
    return sorted((" ".join(label(e) for e in p.edges) or "ε" for p in ps),
                  key=lambda s: (len(s.split()) if s != "ε" else 0, s))


def _emit(args, obj: Any) -> None:
    if getattr(args, "json", None):
        io.dump_json(obj, args.json)


def _seed(args) -> int:
    env = os.environ.get("SPLICETOOL_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise CliError(f"SPLICETOOL_SEED must be an integer, got {env!r}") from None
    return args.seed


def _grammar(args, required: bool = True) -> Optional[Cfg]:
    if not args.grammar:
        if required:
            raise CliError("this command needs -g/--grammar")
        return None
    g = io.load_cfg(args.grammar)
    rep = validate_cfg(g)
    if not rep.ok:
        raise CliError(f"{args.grammar}: invalid grammar\n{rep}")
    return g


def _automaton(args, g: Optional[Cfg] = None) -> Nfa:
    if not args.automaton:
        raise CliError("this command needs -a/--automaton")
    m = io.load_automaton(args.automaton)
    if isinstance(m, ClassicalNfa):
        m = classical_to_nfa(m, g.base if g is not None else None)
    return m


def _word(args, base, default_src) -> PathArrow:
    toks = [] if args.word is None else args.word.split()
    toks = [t for t in toks if t not in ("ε", "eps")]
    src = args.src
    if src is None:
        src = base.edge(toks[0]).src if toks else default_src
    return base.path(src, toks, args.tgt)


def _tree(text: str):
    import json
    try:
        return io.tree_from_json(json.loads(text))
    except json.JSONDecodeError:
        # allow a bare constant name
        return io.tree_from_json(text)


# -- commands -----------------------------------------------------------------

def cmd_parse(args) -> int:
    g = _grammar(args)
    w = _word(args, g.base, g.start_type.left)
    res = parse_trees(g, w, args.max_trees)
    print(f"count: {res.count}")
    for t in res.trees:
        print(t)
    if res.truncated:
        print(f"(showing {len(res.trees)} trees)")
    if args.dot:
        Path(args.dot).write_text(io.trees_dot(res.trees), encoding="utf-8")
    _emit(args, {"count": None if res.count.is_infinite else res.count.count,
                 "infinite": res.count.is_infinite,
                 "trees": [io.tree_to_json(t) for t in res.trees]})
    return 0


def cmd_recognize(args) -> int:
    g = _grammar(args)
    w = _word(args, g.base, g.start_type.left)
    chart = recognize(g, w)
    print(format_chart(chart))
    print("ACCEPT" if chart.accepts else "REJECT")
    _emit(args, {"accepts": chart.accepts,
                 "cells": {f"{i},{j}": sorted(label(c) for c in cs)
                           for (i, j), cs in sorted(chart.cells.items())}})
    return 0


def cmd_enumerate(args) -> int:
    g = _grammar(args)
    words = _words(enumerate_language(g, args.max_len))
    print("\n".join(words))
    _emit(args, {"maxLen": args.max_len, "words": words})
    return 0


def cmd_enumerate_nfa(args) -> int:
    m = io.load_automaton(args.automaton) if args.automaton else None
    if m is None:
        raise CliError("this command needs -a/--automaton")
    if isinstance(m, ClassicalNfa):
        words = sorted((" ".join(map(label, w)) or "ε" for w in m.enumerate(args.max_len)),
                       key=lambda s: (len(s.split()) if s != "ε" else 0, s))
    else:
        words = _words(enumerate_regular(m, args.max_len))
    print("\n".join(words))
    _emit(args, {"maxLen": args.max_len, "words": words})
    return 0


def _out_grammar(args, g: Cfg) -> None:
    if args.json:
        io.dump_json(io.cfg_to_json(g), args.json)
    else:
        print("\n".join(g.productions()))


def cmd_intersect(args) -> int:
    g = _grammar(args)
    m = _automaton(args, g)
    i = intersect_cfg_regular(g, m, trim=not args.no_trim)
    if args.enumerate is not None:
        words = _words(enumerate_language(i, args.enumerate))
        print("\n".join(words))
        _emit(args, {"maxLen": args.enumerate, "words": words})
    else:
        _out_grammar(args, i)
    return 0


def cmd_pullback(args) -> int:
    g = _grammar(args)
    m = _automaton(args, g)
    _out_grammar(args, pullback_grammar(g, m, trim=not args.no_trim))
    return 0


def cmd_bilinearize(args) -> int:
    out, _ = bilinearize(_grammar(args))
    _out_grammar(args, out)
    return 0


def cmd_trim(args) -> int:
    _out_grammar(args, trim(_grammar(args)))
    return 0


def cmd_analyze(args) -> int:
    g = _grammar(args)
    a = analyze(g)
    fields = {"nullable": a.nullable, "productive": a.productive,
              "reachable": a.reachable, "useful": a.useful}
    for k, v in fields.items():
        print(f"{k}: {', '.join(sorted(label(c) for c in v)) or '-'}")
    _emit(args, {k: sorted(label(c) for c in v) for k, v in fields.items()})
    return 0


def cmd_contour(args) -> int:
    g = _grammar(args)
    if args.tree:
        trees = [_tree(args.tree)]
    else:
        trees = parse_trees(g, _word(args, g.base, g.start_type.left), args.max_trees).trees
    out = []
    for t in trees:
        check_tree(g.species, t)
        c = contour_of_tree(g.species, t)
        img = apply_functor(q_functor(g), c)
        print(f"{t}: {' '.join(map(label, c.edges))}  =>  {' '.join(map(label, img.edges)) or 'ε'}")
        out.append({"tree": io.tree_to_json(t), "contour": [label(e) for e in c.edges],
                    "image": [label(e) for e in img.edges]})
    if args.dot:
        Path(args.dot).write_text(io.graph_dot(contour_graph(g.species), "Contour"),
                                  encoding="utf-8")
    _emit(args, out)
    return 0


def cmd_universal(args) -> int:
    g = _grammar(args)
    _out_grammar(args, universal_grammar(g.species, g.start))
    return 0


def cmd_cs(args) -> int:
    g = _grammar(args)
    d = cs_decompose(g)
    if args.out_dir:
        od = Path(args.out_dir)
        od.mkdir(parents=True, exist_ok=True)
        io.dump_json(io.cfg_to_json(d.chromatic_universal), od / "chromatic_universal.json")
        io.dump_json(io.nfa_to_json(d.coloring), od / "coloring.json")
        f = d.output
        io.dump_json({"source": io.graph_to_json(f.source), "target": io.graph_to_json(f.target),
                      "nodeMap": {label(k): label(v) for k, v in f.node_map.items()},
                      "edgeMap": {label(k): [label(e) for e in p.edges]
                                  for k, p in f.edge_map.items()}}, od / "output.json")
    print("chromatic universal grammar:")
    print("  " + "\n  ".join(d.chromatic_universal.productions()))
    print("coloring automaton:")
    for q, e, r in d.coloring.transitions():
        print(f"  {label(q)} -[{label(e)}]-> {label(r)}")
    print(f"  q0 = {label(d.coloring.q0)}, qf = {label(d.coloring.qf)}")
    if not args.verify:
        return 0
    cb = None if args.contour_bound == "auto" else int(args.contour_bound)
    rep = cs_verify(d, g, args.word_bound, cb)
    print(f"contour bound {rep.contour_bound} (witness {rep.witness_bound}), "
          f"word bound {rep.word_bound}")
    print(rep)
    _emit(args, rep.to_json())
    return 0 if rep.equal else 1


def _dyck_species(args):
    g = _grammar(args)
    if args.chromatic:
        g, _ = chromatic_factorization(g)
    return g, g.species, g.start


def cmd_dyck(args) -> int:
    g, s, start = _dyck_species(args)
    if args.action == "translate":
        if args.tree:
            t = _tree(args.tree)
            check_tree(s, t)
        else:
            res = parse_trees(g, _word(args, g.base, g.start_type.left), 1)
            if not res.trees:
                raise CliError("word is not in the language")
            t = res.trees[0]
        c = contour_of_tree(s, t)
        d = s_translate(s, c)
        print("contour:", " ".join(map(label, c.edges)))
        print("dyck:   ", " ".join(map(label, d.edges)))
        print("balanced:", is_balanced(d.edges))
        for side in ("green", "red"):
            print(f"{side} inverse:", inverse_translate(s, d, side) == c)
        _emit(args, {"contour": [label(e) for e in c.edges], "dyck": [label(e) for e in d.edges]})
    elif args.action == "grammar":
        print("\n".join(sdyck_grammar(s, start).productions()))
    elif args.action == "index-automaton":
        ia = index_automaton(s, start)
        print(f"states: {len(ia.states)}, transitions: {len(ia.transitions)}")
        for q, a, r in ia.transitions:
            print(f"  {label(q)} -[{label(a)}]-> {label(r)}")
        _emit(args, io.classical_to_json(ia))
    else:
        sd = {p.edges for p in enumerate_language(sdyck_grammar(s, start), args.max_len)}
        rhs = balanced_accepted(index_automaton(s, start), args.max_len)
        dk = dyck_k_grammar(bracket_alphabet(s))
        in_dk = all(recognize(dk, PathArrow("*", "*", w)).accepts for w in rhs)
        ok = sd == rhs and in_dk
        print(f"{'EQUAL' if ok else 'DIFFERENT'} ({len(sd)} vs {len(rhs)} words up to length "
              f"{args.max_len})")
        return 0 if ok else 1
    return 0


def cmd_tree_accept(args) -> int:
    a = io.tree_nfa_from_json(io.load_json(args.automaton))
    t = _tree(args.tree)
    ok = accepts_tree(a, t)
    n = count_tree_runs(a, t)
    print(f"{'ACCEPT' if ok else 'REJECT'} ({n} run{'' if n == 1 else 's'})")
    _emit(args, {"accepts": ok, "runs": n})
    return 0


def cmd_tree_intersect(args) -> int:
    a = io.tree_nfa_from_json(io.load_json(args.automaton))
    g = io.gcfg_from_json(io.load_json(args.tree_grammar))
    i = intersect_gcfg_regular(g, a, trim=not args.no_trim)
    trees = sorted(enumerate_gcfg(i, args.max_nodes), key=lambda t: (len(str(t)), str(t)))
    print("\n".join(str(t) for t in trees))
    _emit(args, io.gcfg_to_json(i))
    return 0


def cmd_check_oracle(args) -> int:
    from .oracle import run_checks
    seed = _seed(args)
    results = run_checks(seed, args.cases)
    ok = True
    for name, passed, detail in results:
        print(f"{'PASS' if passed else 'FAIL'} {name}: {detail}")
        ok &= passed
    _emit(args, [{"check": n, "pass": p, "detail": d} for n, p, d in results])
    return 0 if ok else 1


def cmd_dot(args) -> int:
    if args.tree:
        text = io.tree_dot(_tree(args.tree))
    elif args.automaton:
        m = io.load_automaton(args.automaton)
        if isinstance(m, ClassicalNfa):
            m = classical_to_nfa(m)
        text = io.nfa_dot(m)
    elif args.grammar:
        text = io.graph_dot(_grammar(args).base, "Base")
    else:
        raise CliError("dot needs -g, -a or --tree")
    if args.dot:
        Path(args.dot).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return 0


# -- argument parsing -----------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-g", "--grammar", metavar="FILE")
    common.add_argument("-a", "--automaton", metavar="FILE")
    common.add_argument("-w", "--word", metavar="TOKENS")
    common.add_argument("--from", dest="src", metavar="NODE")
    common.add_argument("--to", dest="tgt", metavar="NODE")
    common.add_argument("--max-len", type=int, default=DEFAULT_MAX_LEN, metavar="N")
    common.add_argument("--max-trees", type=int, default=100, metavar="N")
    common.add_argument("--max-nodes", type=int, default=DEFAULT_MAX_NODES, metavar="N")
    common.add_argument("--seed", type=int, default=0, metavar="N")
    common.add_argument("--no-trim", action="store_true")
    common.add_argument("--dot", metavar="FILE")
    common.add_argument("--json", metavar="FILE")
    common.add_argument("--tree", metavar="JSON")

    p = argparse.ArgumentParser(prog="splicetool",
                                description="Grammars and automata over free categories.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name: str, fn: Callable, help: str) -> argparse.ArgumentParser:
        sp = sub.add_parser(name, parents=[common], help=help)
        sp.set_defaults(fn=fn)
        return sp

    add("parse", cmd_parse, "parse trees of a word")
    add("recognize", cmd_recognize, "membership via the chart")
    add("enumerate", cmd_enumerate, "words of a grammar up to --max-len")
    add("enumerate-nfa", cmd_enumerate_nfa, "words of an automaton up to --max-len")
    sp = add("intersect", cmd_intersect, "grammar for L(g) ∩ L(a)")
    sp.add_argument("--enumerate", type=int, metavar="N", help="list words up to length N")
    add("pullback", cmd_pullback, "grammar over the automaton's states")
    add("bilinearize", cmd_bilinearize, "equivalent grammar of arity <= 2")
    add("trim", cmd_trim, "drop useless colors")
    add("analyze", cmd_analyze, "nullable/productive/reachable/useful colors")
    add("contour", cmd_contour, "contour words of a tree or of a word's parses")
    add("universal", cmd_universal, "universal grammar of the species")
    sp = add("cs", cmd_cs, "Chomsky-Schützenberger decomposition")
    sp.add_argument("--verify", action="store_true")
    sp.add_argument("--contour-bound", default="auto")
    sp.add_argument("--word-bound", type=int, default=DEFAULT_MAX_LEN)
    sp.add_argument("--out-dir", metavar="DIR")
    sp = add("dyck", cmd_dyck, "contour words as Dyck words")
    sp.add_argument("action", choices=["translate", "grammar", "index-automaton", "verify"])
    sp.add_argument("--chromatic", action="store_true",
                    help="use the chromatic species of the grammar")
    add("tree-accept", cmd_tree_accept, "run a tree automaton (-a) on --tree")
    sp = add("tree-intersect", cmd_tree_intersect, "tree grammar ∩ tree automaton")
    sp.add_argument("-G", "--tree-grammar", metavar="FILE", required=True)
    sp = add("check-oracle", cmd_check_oracle, "randomized oracle checks")
    sp.add_argument("--cases", type=int, default=20)
    add("dot", cmd_dot, "GraphViz export")
    return p


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (CliError, SpliceError, KeyError, OSError, ValueError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"error: {msg}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
