"""Independent reference implementations and the randomized check driver.

The functions here avoid the library's fast paths (charts, pullbacks,
bottom-up state sets) and recompute answers by plain enumeration.  They are
slow and only meant for small instances.
"""
from __future__ import annotations

import itertools
import random
from typing import Callable, Dict, Hashable, List, Set, Tuple

from .automaton import Nfa
from .contour import contour_of_tree, cs_decompose, cs_verify
from .dyck import inverse_translate, is_balanced, s_translate
from .grammar import Cfg, enumerate_language, member_bruteforce
from .intersection import intersect_cfg_regular
from .parsing import recognize
from .randomgen import (random_cfg, random_nfa, random_species, random_tree,
                        random_tree_nfa, random_word)
from .species import Leaf, Node, OpTree, enumerate_trees
from .tree_automaton import TreeNfa, accepts_tree, count_tree_runs

Id = Hashable
Check = Tuple[str, bool, str]


def word_accepted(m: Nfa, word: Tuple[Id, ...]) -> bool:
    """Subset simulation over the transition list, without the lifting index."""
    trans = m.transitions()
    cur = {m.q0}
    for a in word:
        cur = {r for q, b, r in trans if b == a and q in cur}
    return m.qf in cur


def filtered_language(g: Cfg, m: Nfa, max_len: int) -> Set[Tuple[Id, ...]]:
    """``E(g) ∩ E(m)`` by filtering the grammar's words through the automaton."""
    return {w.edges for w in enumerate_language(g, max_len) if word_accepted(m, w.edges)}


def _nodes(t: OpTree) -> List[Node]:
    if isinstance(t, Leaf):
        return []
    out = [t]
    for c in t.children:
        out.extend(_nodes(c))
    return out


def tree_runs_bruteforce(a: TreeNfa, t: OpTree) -> int:
    """Count runs by trying every assignment of states to the nodes of ``t``."""
    nodes = _nodes(t)
    options = [[q for q in a.states.colors if a.map.color_map[q] == a.base.node(u.node).output]
               for u in nodes]
    index = {id(u): k for k, u in enumerate(nodes)}
    fiber: Dict[Tuple[Id, Tuple[Id, ...], Id], int] = {}
    for y in a.states.nodes:
        key = (a.map.node_map[y.id], y.inputs, y.output)
        fiber[key] = fiber.get(key, 0) + 1
    total = 0
    for assign in itertools.product(*options):
        if not nodes or assign[0] != a.root_state:
            continue
        mult = 1
        for k, u in enumerate(nodes):
            ins = tuple(assign[index[id(c)]] for c in u.children)
            mult *= fiber.get((u.node, ins, assign[k]), 0)
            if not mult:
                break
        total += mult
    return total


# -- randomized driver ----------------------------------------------------------

def check_bar_hillel(rng: random.Random, cases: int, max_len: int = 8) -> Check:
    bad = 0
    words = 0
    for _ in range(cases):
        g = random_cfg(rng)
        a, b = g.start_type
        m = random_nfa(rng, g.base, a, b)
        got = {w.edges for w in enumerate_language(intersect_cfg_regular(g, m), max_len)}
        want = filtered_language(g, m, max_len)
        words += len(want)
        bad += got != want
    return "bar-hillel", bad == 0, f"{cases - bad}/{cases} equal, {words} words"


def check_recognizer(rng: random.Random, cases: int) -> Check:
    bad = 0
    for _ in range(cases):
        g = random_cfg(rng)
        lang = sorted(enumerate_language(g, 5), key=lambda p: p.edges)
        w = rng.choice(lang) if lang and rng.random() < 0.5 else random_word(rng, g, 5)
        bad += recognize(g, w).accepts != member_bruteforce(g, w, 7)
    return "recognize", bad == 0, f"{cases - bad}/{cases} agree with brute force"


def check_cs(rng: random.Random, cases: int) -> Check:
    bad = 0
    for _ in range(cases):
        g = random_cfg(rng)
        bad += not cs_verify(cs_decompose(g), g, 8).equal
    return "chomsky-schutzenberger", bad == 0, f"{cases - bad}/{cases} equal"


def check_dyck(rng: random.Random, cases: int) -> Check:
    bad = 0
    for _ in range(cases):
        s = random_species(rng)
        root = rng.choice(s.colors)
        for t in enumerate_trees(s, root, 5):
            c = contour_of_tree(s, t)
            d = s_translate(s, c)
            ok = (is_balanced(d.edges) and inverse_translate(s, d, "green") == c
                  and inverse_translate(s, d, "red") == c)
            bad += not ok
    return "dyck round trips", bad == 0, f"{bad} failures"


def check_tree_automata(rng: random.Random, cases: int) -> Check:
    bad = 0
    for _ in range(cases):
        s = random_species(rng)
        a = random_tree_nfa(rng, s)
        t = random_tree(rng, s, s.colors[0], max_depth=3)
        n = tree_runs_bruteforce(a, t)
        bad += (count_tree_runs(a, t) != n) or (accepts_tree(a, t) != (n > 0))
    return "tree automata", bad == 0, f"{cases - bad}/{cases} agree with brute force"


CHECKS: List[Callable[[random.Random, int], Check]] = [
    check_bar_hillel, check_recognizer, check_cs, check_dyck, check_tree_automata]


def run_checks(seed: int, cases: int) -> List[Check]:
    return [chk(random.Random(f"{seed}:{chk.__name__}"), cases) for chk in CHECKS]
