"""Small named grammars, species and automata used by tests, scripts and the CLI."""
from __future__ import annotations

from .automaton import Nfa
from .grammar import Cfg, classical_cfg
from .graph import STAR, Graph, GraphHom, bouquet
from .species import Node, Species, SpeciesMap
from .spliced import GapType, SplicedArrow
from .tree_automaton import TreeNfa

SENT_ALPHABET = ("mom", "tom", "loves", "sp")


def g_sent() -> Cfg:
    """``S -> NP sp VP``, ``NP -> mom | tom``, ``VP -> loves sp NP``."""
    base = bouquet(SENT_ALPHABET)
    species = Species.make(["S", "NP", "VP"], [
        ("x1", ("NP", "VP"), "S"),
        ("x2", (), "NP"),
        ("x3", (), "NP"),
        ("x4", ("NP",), "VP"),
    ])
    gap = GapType(STAR, STAR)
    p = base.path
    rules = {
        "x1": SplicedArrow((p(STAR), p(STAR, ["sp"]), p(STAR))),
        "x2": SplicedArrow((p(STAR, ["mom"]),)),
        "x3": SplicedArrow((p(STAR, ["tom"]),)),
        "x4": SplicedArrow((p(STAR, ["loves", "sp"]), p(STAR))),
    }
    return Cfg(base, species, "S", {c: gap for c in species.colors}, rules)


def sent_tree() -> Node:
    """The derivation ``x1 ∘ (x2, x4 ∘ x3)`` of "mom sp loves sp tom"."""
    return Node("x1", (Node("x2"), Node("x4", (Node("x3"),))))


def sent_word(text: str = "mom sp loves sp tom"):
    return g_sent().base.path(STAR, text.split())


def s_letters() -> Species:
    """Monochrome species with nodes a/3, b/0, c/2, d/0, e/0, f/1, g/0."""
    ar = {"a": 3, "b": 0, "c": 2, "d": 0, "e": 0, "f": 1, "g": 0}
    return Species.make(["1"], [(x, ("1",) * n, "1") for x, n in ar.items()])


def letter_tree() -> Node:
    """``a(b, c(d, e), f(g))``."""
    return Node("a", (Node("b"), Node("c", (Node("d"), Node("e"))), Node("f", (Node("g"),))))


def s_bin() -> Species:
    return Species.make(["*"], [("n2", ("*", "*"), "*"), ("n0", (), "*")])


def dyck_grammar() -> Cfg:
    """``S -> ε | [ S ] S`` over the bouquet on ``[`` and ``]``."""
    return classical_cfg(["S -> ε", "S -> [ S ] S"], alphabet=["[", "]"])


def unit_cycle_grammar() -> Cfg:
    """``S -> S | a``: every derivation of ``a`` can be padded by unit steps."""
    return classical_cfg(["S -> S", "S -> a"])


def parity_nfa(alphabet=("a",), modulus: int = 2, residue: int = 0) -> Nfa:
    """Accepts words whose length is ``residue`` mod ``modulus``."""
    base = bouquet(alphabet)
    states = [f"p{k}" for k in range(modulus)]
    edges = [((a, k), states[k], states[(k + 1) % modulus]) for k in range(modulus) for a in alphabet]
    g = Graph.make(states, edges)
    hom = GraphHom(g, base, {s: STAR for s in states}, {e[0]: e[0][0] for e in edges})
    return Nfa(base, hom, states[0], states[residue % modulus])


def ab_two_runs_nfa() -> Nfa:
    """q0 -a-> m1 -b-> qf and q0 -a-> m2 -b-> qf: two runs over ``ab``."""
    base = bouquet(["a", "b"])
    g = Graph.make(["q0", "m1", "m2", "qf"], [
        ("t1", "q0", "m1"), ("t2", "q0", "m2"), ("t3", "m1", "qf"), ("t4", "m2", "qf")])
    hom = GraphHom(g, base, {n: STAR for n in g.nodes},
                   {"t1": "a", "t2": "a", "t3": "b", "t4": "b"})
    return Nfa(base, hom, "q0", "qf")


def no_double_close_nfa() -> Nfa:
    """Over ``[``/``]``: nonempty words without a ``]]`` factor.

    With a single accepting state the empty word cannot be accepted as well,
    since the language is not closed under concatenation.
    """
    base = bouquet(["[", "]"])
    g = Graph.make(["q0", "o", "c", "fin"], [
        ("s[", "q0", "o"), ("s]", "q0", "c"),
        ("o[", "o", "o"), ("o]", "o", "c"), ("c[", "c", "o"),
        ("s[f", "q0", "fin"), ("s]f", "q0", "fin"),
        ("o[f", "o", "fin"), ("o]f", "o", "fin"), ("c[f", "c", "fin"),
    ])
    emap = {e.id: e.id[1] for e in g.edges}
    return Nfa(base, GraphHom(g, base, {n: STAR for n in g.nodes}, emap), "q0", "fin")


def bool_species() -> Species:
    """Ranked alphabet ``and/2, true/0, false/0`` over one color."""
    return Species.make(["b"], [("and", ("b", "b"), "b"), ("true", (), "b"), ("false", (), "b")])


def bool_automaton(root: str = "T", duplicate_true: bool = False) -> TreeNfa:
    """Bottom-up evaluation of boolean trees; states ``T``/``F``.

    ``duplicate_true`` adds a second ``T``-transition over ``true`` so that
    run counts exceed one.
    """
    base = bool_species()
    nodes = [("true", (), "T"), ("false", (), "F")]
    if duplicate_true:
        nodes.append(("true'", (), "T"))
    for p in "TF":
        for q in "TF":
            nodes.append((f"and{p}{q}", (p, q), "T" if p == q == "T" else "F"))
    states = Species.make(["T", "F"], nodes)
    nmap = {y.id: ("and" if y.id.startswith("and") else y.id.rstrip("'")) for y in states.nodes}
    return TreeNfa(base, SpeciesMap(states, base, {"T": "b", "F": "b"}, nmap), root)


def eval_bool(t: Node) -> bool:
    if t.node == "and":
        return all(eval_bool(c) for c in t.children)
    return t.node == "true"
