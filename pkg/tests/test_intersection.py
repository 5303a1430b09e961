import pytest
from hypothesis import given, settings

from splicetool.automaton import Nfa, singleton_nfa, total_nfa
from splicetool.errors import TypingError
from splicetool.fixtures import dyck_grammar, g_sent, no_double_close_nfa, parity_nfa
from splicetool.grammar import enumerate_language
from splicetool.graph import STAR, Graph, GraphHom, lift_runs
from splicetool.intersection import intersect_cfg_regular, lift_spliced, pullback_grammar
from splicetool.oracle import filtered_language
from splicetool.randomgen import random_cfg, random_nfa
from splicetool.spliced import SplicedArrow

from strategies import rngs


def words(ps):
    return {" ".join(p.edges) for p in ps}


def sp_counter():
    """Two states counting ``sp`` mod 2; other letters loop."""
    base = g_sent().base
    edges, emap = [], {}
    for q, r in (("0", "1"), ("1", "0")):
        edges.append((f"sp{q}", q, r))
        emap[f"sp{q}"] = "sp"
        for a in ("mom", "tom", "loves"):
            edges.append((f"{a}{q}", q, q))
            emap[f"{a}{q}"] = a
    g = Graph.make(["0", "1"], edges)
    return Nfa(base, GraphHom(g, base, {"0": STAR, "1": STAR}, emap), "0", "0")


def test_lift_of_constant_is_plain_runs():
    m = parity_nfa(modulus=2)
    p = m.base.path(STAR, ["a", "a"])
    assert [t[0] for t in lift_spliced(m, SplicedArrow((p,)))] == lift_runs(m.hom, p)


def test_lift_of_sentence_rule():
    # x1 = ε - sp - ε: segments lift independently, 2 states x 2 flips x 2 states
    tuples = lift_spliced(sp_counter(), g_sent().rule_assign["x1"])
    assert len(tuples) == 8
    assert {(b.src, b.tgt) for _, b, _ in tuples} == {("0", "1"), ("1", "0")}
    assert all(a.is_identity and c.is_identity for a, _, c in tuples)
    pinned = lift_spliced(sp_counter(), g_sent().rule_assign["x1"],
                          ["0", None, None, None, None, "0"])
    assert sorted((a.src, b.src, b.tgt, c.src) for a, b, c in pinned) == \
        [("0", "0", "1", "0"), ("0", "1", "0", "0")]


def test_pullback_with_total_is_a_copy():
    g = dyck_grammar()
    p = pullback_grammar(g, total_nfa(g.base, STAR, STAR), trim=False)
    assert len(p.species.colors) == len(g.species.colors)
    assert len(p.species.nodes) == len(g.species.nodes)


def test_pullback_color_count():
    g = g_sent()
    p = pullback_grammar(g, sp_counter(), trim=False)
    assert len(p.species.colors) == 3 * 2 * 2


def test_pullback_singleton():
    g = dyck_grammar()
    w = g.base.path(STAR, ["[", "]", "[", "]"])
    m = singleton_nfa(g.base, w)
    lang = enumerate_language(pullback_grammar(g, m), 8)
    assert len(lang) == 1
    (run,) = lang
    assert m.hom.apply(run) == w


def test_dyck_even():
    g = dyck_grammar()
    m = parity_nfa(alphabet=("[", "]"), modulus=2)
    assert enumerate_language(intersect_cfg_regular(g, m), 8) == enumerate_language(g, 8)


def test_dyck_without_double_close():
    g = dyck_grammar()
    got = words(enumerate_language(intersect_cfg_regular(g, no_double_close_nfa()), 8))
    assert got == {"[ ]", "[ ] [ ]", "[ ] [ ] [ ]", "[ ] [ ] [ ] [ ]"}
    assert {tuple(w.split()) for w in got} == filtered_language(g, no_double_close_nfa(), 8)


def test_sentence_with_even_sp():
    got = words(enumerate_language(intersect_cfg_regular(g_sent(), sp_counter()), 5))
    assert len(got) == 4  # every sentence has exactly two ``sp``


def test_type_errors():
    with pytest.raises(TypingError):
        pullback_grammar(g_sent(), parity_nfa())


def test_threshold_forces_bilinear_form():
    g = g_sent()
    p = pullback_grammar(g, sp_counter(), threshold=0)
    assert all(x.arity <= 2 for x in p.species.nodes)
    assert enumerate_language(intersect_cfg_regular(g, sp_counter(), threshold=0), 5) == \
        enumerate_language(g, 5)


def run_level(g, m, n):
    """Runs ``q0 -> qf`` over the words of ``E(g) ∩ E(m)``."""
    return {r for w in enumerate_language(g, n) for r in lift_runs(m.hom, w, m.q0, m.qf)}


@settings(max_examples=60)
@given(rngs)
def test_bar_hillel(rng):
    g = random_cfg(rng)
    m = random_nfa(rng, g.base, *g.start_type)
    got = {w.edges for w in enumerate_language(intersect_cfg_regular(g, m), 8)}
    assert got == filtered_language(g, m, 8)
    assert enumerate_language(pullback_grammar(g, m), 8) == run_level(g, m, 8)


@settings(max_examples=30)
@given(rngs)
def test_trim_flag_does_not_change_language(rng):
    g = random_cfg(rng)
    m = random_nfa(rng, g.base, *g.start_type)
    assert enumerate_language(pullback_grammar(g, m, trim=False), 6) == \
        enumerate_language(pullback_grammar(g, m), 6)
