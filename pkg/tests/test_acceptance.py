"""Acceptance criteria, one test per criterion.

Each criterion records a PASS/FAIL line with its wall time and budget; pytest
prints them at the end of the run.  ``python tests/test_acceptance.py`` runs
the same checks without pytest and exits non-zero on any failure.
"""
import random
import sys
import time

import pytest

from splicetool.contour import (chromatic_factorization, coloring_automaton,
                                contour_of_tree, cs_decompose, cs_verify, universal_grammar)
from splicetool.dyck import (balanced_accepted, bracket_alphabet, dyck_k_grammar,
                             index_automaton, inverse_translate, is_balanced, s_translate,
                             sdyck_grammar)
from splicetool.fixtures import (bool_automaton, bool_species, eval_bool, letter_tree,
                                 g_sent, s_bin, s_letters, sent_tree, sent_word,
                                 unit_cycle_grammar)
from splicetool.grammar import (analyze, bilinearize, classical_cfg,
                                enumerate_language, member_bruteforce, yield_path)
from splicetool.graph import STAR, PathArrow, lift_runs
from splicetool.ids import label
from splicetool.intersection import intersect_cfg_regular, pullback_grammar
from splicetool.oracle import filtered_language, tree_runs_bruteforce
from splicetool.parsing import parse_count, parse_trees, recognize
from splicetool.randomgen import (random_cfg, random_gcfg, random_nfa,
                                  random_species, random_tree, random_tree_nfa)
from splicetool.species import Leaf, enumerate_trees, size
from splicetool.tree_automaton import (accepts_tree, count_tree_runs,
                                       enumerate_gcfg, intersect_gcfg_regular, total_gcfg)

from laws import LAWS
from strategies import brute_count, parse_case

SENTENCES = {"mom sp loves sp mom", "mom sp loves sp tom", "tom sp loves sp mom",
             "tom sp loves sp tom"}
LETTER_CONTOUR = "a.0 b.0 a.1 c.0 d.0 c.1 e.0 c.2 a.2 f.0 g.0 f.1 a.3"
LAW_CASES = 1000


def words(ps):
    return {" ".join(map(label, p.edges)) for p in ps}


# -- criteria -------------------------------------------------------------------
# each returns a short detail string and raises AssertionError on failure

def c1_sentence_grammar():
    g = g_sent()
    assert words(enumerate_language(g, 5)) == SENTENCES
    res = parse_trees(g, sent_word("mom sp loves sp tom"))
    assert res.trees == [sent_tree()] and str(res.count) == "Finite(1)"
    return f"4 sentences, parse {res.trees[0]} {res.count}"


def c2_tree_contour():
    s = s_letters()
    c = contour_of_tree(s, letter_tree())
    assert " ".join(map(label, c.edges)) == LETTER_CONTOUR
    d = s_translate(s, c)
    assert is_balanced(d.edges) and len(d) == 26
    return f"{len(c)} corners, {len(d)} balanced brackets"


def c3_universal_and_coloring():
    g = g_sent()
    assert universal_grammar(g.species, "S").productions() == [
        "S -> x1.0 NP x1.1 VP x1.2", "NP -> x2.0", "NP -> x3.0", "VP -> x4.0 NP x4.1"]
    m = coloring_automaton(g)
    states = {label(q) for q in m.states.nodes}
    trans = {(label(q), label(e), label(r)) for q, e, r in m.transitions()}
    assert states == {"S↑", "S↓", "NP↑", "NP↓", "VP↑", "VP↓"}
    assert trans == {
        ("S↑", "x1.0", "NP↑"), ("NP↑", "x2.0", "NP↓"), ("NP↑", "x3.0", "NP↓"),
        ("NP↓", "x1.1", "VP↑"), ("VP↑", "x4.0", "NP↑"), ("NP↓", "x4.1", "VP↓"),
        ("VP↓", "x1.2", "S↓")}
    assert (label(m.q0), label(m.qf)) == ("S↑", "S↓")
    return f"4 productions, {len(states)} states, {len(trans)} transitions"


def c4_cs_theorem(cases=25):
    g = g_sent()
    rep = cs_verify(cs_decompose(g), g, 5)
    assert rep.equal and len(rep.language) == 4
    total = 0
    for seed in range(cases):
        g = random_cfg(random.Random(seed))
        assert len(g.species.colors) <= 4 and len(g.species.nodes) <= 6
        assert all(len(p) <= 2 for f in g.rule_assign.values() for p in f.segments)
        rep = cs_verify(cs_decompose(g), g, 8)
        assert rep.equal, f"seed {seed}: {rep}"
        total += len(rep.language)
    return f"sentence grammar + {cases} random grammars equal ({total} words)"


def c5_bar_hillel(cases=60):
    total = nonempty = 0
    for seed in range(cases):
        rng = random.Random(seed)
        g = random_cfg(rng)
        m = random_nfa(rng, g.base, *g.start_type)
        assert len(m.states.nodes) <= 4
        got = {w.edges for w in enumerate_language(intersect_cfg_regular(g, m), 8)}
        want = filtered_language(g, m, 8)
        assert got == want, f"seed {seed}"
        runs = {r for w in enumerate_language(g, 8) for r in lift_runs(m.hom, w, m.q0, m.qf)}
        assert enumerate_language(pullback_grammar(g, m), 8) == runs, f"seed {seed}"
        total += len(want)
        nonempty += bool(want)
    return f"{cases} pairs equal, {nonempty} nonempty ({total} words)"


def c6_parser(cases=120):
    nullable = infinite = finite = 0
    for seed in range(cases):
        g, w = parse_case(seed)
        nullable += bool(analyze(g).nullable)
        assert recognize(g, w).accepts == member_bruteforce(g, w, 7), f"seed {seed}"
        c = parse_count(g, w)
        if c.is_infinite:
            infinite += 1
            trees = parse_trees(g, w, 12).trees
            assert len(set(trees)) == 12 and all(yield_path(g, t) == w for t in trees)
        elif c.count:
            finite += 1
            trees = parse_trees(g, w, 1000).trees
            bound = max(size(t) for t in trees)
            assert brute_count(g, w, bound) == brute_count(g, w, bound + 2) == c.count
    assert nullable and infinite and finite
    for g, w in ((unit_cycle_grammar(), ["a"]),
                 (classical_cfg(["S -> S E | a", "E -> ε"]), ["a"])):
        assert parse_count(g, g.base.path(STAR, w)).is_infinite
    acyclic = classical_cfg(["S -> S S | a"])
    assert parse_count(acyclic, acyclic.base.path(STAR, ["a"] * 4)).count == 5
    return (f"{cases} pairs agree; {finite} finite counts, {infinite} infinite, "
            f"{nullable} grammars with nullable colors; cycle fixtures infinite")


def c7_bilinearization(cases=40):
    used = checked = 0
    for seed in range(cases):
        g = random_cfg(random.Random(seed))
        lang = enumerate_language(g, 6)
        counts = {w: parse_count(g, w) for w in lang}
        if any(c.is_infinite for c in counts.values()):
            continue
        used += 1
        b, _ = bilinearize(g)
        assert all(x.arity <= 2 for x in b.species.nodes)
        assert all(parse_count(b, w).count == c.count for w, c in counts.items()), f"seed {seed}"
        assert enumerate_language(b, 8) == enumerate_language(g, 8), f"seed {seed}"
        checked += len(counts)
    assert used >= cases // 2
    return f"{used} finite-ambiguity grammars, {checked} word counts preserved"


def c8_dyck():
    trees = 0
    species = [s_bin(), chromatic_factorization(g_sent())[0].species]
    for s in species:
        root = s.colors[0]
        for t in enumerate_trees(s, root, 6):
            c = contour_of_tree(s, t)
            d = s_translate(s, c)
            assert inverse_translate(s, d, "green") == c == inverse_translate(s, d, "red")
            trees += 1
        sd = {p.edges for p in enumerate_language(sdyck_grammar(s, root), 12)}
        both = balanced_accepted(index_automaton(s, root), 12)
        dk = dyck_k_grammar(bracket_alphabet(s))
        assert sd == both
        assert all(recognize(dk, PathArrow(STAR, STAR, w)).accepts for w in both)
    return f"{trees} round trips, S-Dyck = Dyck ∩ index at length 12"


def c9_tree_automata(cases=60):
    runs = 0
    for seed in range(cases):
        rng = random.Random(seed)
        s = random_species(rng)
        a = random_tree_nfa(rng, s)
        t = random_tree(rng, s, s.colors[0], 3)
        if isinstance(t, Leaf):
            continue
        n = tree_runs_bruteforce(a, t)
        assert count_tree_runs(a, t) == n and accepts_tree(a, t) == (n > 0), f"seed {seed}"
        runs += 1
    for seed in range(cases // 2):
        rng = random.Random(seed)
        s = random_species(rng)
        a = random_tree_nfa(rng, s)
        g = random_gcfg(rng, s)
        got = enumerate_gcfg(intersect_gcfg_regular(g, a), 7)
        assert got == {t for t in enumerate_gcfg(g, 7) if accepts_tree(a, t)}, f"seed {seed}"
    bs = bool_species()
    accepted = enumerate_gcfg(intersect_gcfg_regular(total_gcfg(bs, "b"), bool_automaton()), 7)
    every = enumerate_trees(bs, "b", 7)
    assert accepted == {t for t in every if eval_bool(t)}
    assert all(accepts_tree(bool_automaton(), t) == eval_bool(t) for t in every)
    assert runs >= 50
    return f"{runs} run counts, {cases // 2} intersections, {len(every)} boolean trees"


def c10_laws():
    for name, law in LAWS.items():
        for seed in range(LAW_CASES):
            law(random.Random(seed))
    return f"{len(LAWS)} laws x {LAW_CASES} cases"


CRITERIA = [
    (1, "sentence grammar", 1, c1_sentence_grammar),
    (2, "tree contour", 1, c2_tree_contour),
    (3, "universal grammar and coloring automaton", 1, c3_universal_and_coloring),
    (4, "Chomsky-Schutzenberger, bounded", 60, c4_cs_theorem),
    (5, "Bar-Hillel, bounded", 120, c5_bar_hillel),
    (6, "parser vs brute force", 60, c6_parser),
    (7, "bilinearization", 30, c7_bilinearization),
    (8, "Dyck round trips and index automaton", 30, c8_dyck),
    (9, "tree automata", 60, c9_tree_automata),
    (10, "structural laws", 60, c10_laws),
]


def evaluate(num, title, budget, fn):
    """Run one criterion; returns ``(passed, line)``."""
    t0 = time.perf_counter()
    try:
        detail, ok = fn(), True
    except AssertionError as exc:
        detail, ok = f"assertion failed: {exc}", False
    dt = time.perf_counter() - t0
    if ok and dt >= budget:
        ok, detail = False, f"{detail}; over time budget"
    line = f"{'PASS' if ok else 'FAIL'} C{num:<2} {title} [{dt:.2f}s / {budget}s] {detail}"
    return ok, line


@pytest.mark.parametrize("num,title,budget,fn", CRITERIA, ids=[f"C{c[0]}" for c in CRITERIA])
def test_criterion(num, title, budget, fn):
    from conftest import ACCEPTANCE_LINES
    ok, line = evaluate(num, title, budget, fn)
    ACCEPTANCE_LINES.append((num, line))
    print(line)
    assert ok, line


if __name__ == "__main__":
    results = [evaluate(*c) for c in CRITERIA]
    for _, line in results:
        print(line)
    sys.exit(0 if all(ok for ok, _ in results) else 1)
