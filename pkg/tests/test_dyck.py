import pytest
from hypothesis import given

from splicetool.automaton import enumerate_regular
from splicetool.contour import (chromatic_factorization, coloring_automaton, contour_of_tree,
                                universal_grammar)
from splicetool.dyck import (Bracket, balanced_accepted, bracket_alphabet, dyck_k_grammar,
                             h_functor, index_automaton, inverse_translate, is_balanced,
                             s_image_nfa, s_translate, sdyck_grammar)
from splicetool.errors import TypingError
from splicetool.fixtures import letter_tree, g_sent, s_bin, s_letters
from splicetool.grammar import enumerate_language, image
from splicetool.graph import STAR, PathArrow
from splicetool.ids import label
from splicetool.intersection import intersect_cfg_regular
from splicetool.parsing import recognize
from splicetool.randomgen import random_species
from splicetool.species import Node, enumerate_trees

from strategies import rngs

LETTER_DYCK = ("[a.0 [a.1 [b.0 ]b.0 ]a.1 [a.2 [c.0 [c.1 [d.0 ]d.0 ]c.1 [c.2 [e.0 ]e.0 ]c.2 ]c.0 "
             "]a.2 [a.3 [f.0 [f.1 [g.0 ]g.0 ]f.1 ]f.0 ]a.3 ]a.0")


def text(p):
    return " ".join(label(b) for b in p.edges)


def chromatic_sent():
    chrom, _ = chromatic_factorization(g_sent())
    return chrom


def test_constant():
    s = s_bin()
    assert text(s_translate(s, contour_of_tree(s, Node("n0")))) == "[n0.0 ]n0.0"


def test_letter_tree():
    s = s_letters()
    d = s_translate(s, contour_of_tree(s, letter_tree()))
    assert len(d) == 26 and is_balanced(d.edges)
    assert text(d) == LETTER_DYCK
    assert index_automaton(s).accepts(d.edges)


def test_non_corner():
    with pytest.raises(TypingError):
        s_translate(s_bin(), PathArrow(STAR, STAR, ("n0",)))


@pytest.mark.parametrize("side", ["green", "red"])
def test_round_trip_letter_tree(side):
    s = s_letters()
    c = contour_of_tree(s, letter_tree())
    assert inverse_translate(s, s_translate(s, c), side) == c


@pytest.mark.parametrize("species", [s_bin(), chromatic_sent().species], ids=["bin", "sent"])
def test_round_trips_small_trees(species):
    root = species.colors[0]
    seen = set()
    for t in enumerate_trees(species, root, 6):
        c = contour_of_tree(species, t)
        d = s_translate(species, c)
        assert is_balanced(d.edges) and len(d) == 2 * len(c)
        assert inverse_translate(species, d, "green") == c
        assert inverse_translate(species, d, "red") == c
        seen.add(d)
    assert len(seen) == len(enumerate_trees(species, root, 6))


def test_green_rejects_non_contours():
    s = s_bin()
    bad = PathArrow(STAR, STAR, (Bracket("n2", 0, True), Bracket("n2", 2, False)))
    with pytest.raises(TypingError):
        inverse_translate(s, bad, "green")
    with pytest.raises(ValueError):
        inverse_translate(s, bad, "blue")


def test_sdyck_productions():
    assert sdyck_grammar(s_bin(), "*").productions() == [
        "* -> [n0.0 ]n0.0", "* -> [n2.0 [n2.1 * ]n2.1 [n2.2 * ]n2.2 ]n2.0"]


@pytest.mark.parametrize("species", [s_bin(), s_letters(), chromatic_sent().species],
                         ids=["bin", "letters", "sent"])
def test_sdyck_is_image_of_contours(species):
    root = species.colors[0]
    u = universal_grammar(species, root)
    want = {s_translate(species, c) for c in enumerate_language(u, 6)}
    assert enumerate_language(sdyck_grammar(species, root), 12) == want


def test_dyck_k_catalan():
    g = dyck_k_grammar([Bracket("x", 0, True), Bracket("x", 0, False)])
    counts = [sum(1 for p in enumerate_language(g, 6) if len(p) == n) for n in (0, 2, 4, 6)]
    assert counts == [1, 1, 2, 5]


@given(rngs)
def test_dyck_k_words_are_balanced(rng):
    s = random_species(rng, n_colors=1, n_nodes=2, max_arity=1)
    for p in enumerate_language(dyck_k_grammar(bracket_alphabet(s)), 6):
        assert is_balanced(p.edges)


def test_index_automaton_local_rules():
    s = s_bin()
    ia = index_automaton(s)
    n00, n0c = Bracket("n0", 0, True), Bracket("n0", 0, False)
    n20 = Bracket("n2", 0, True)
    assert ia.accepts((n00, n0c))
    assert not ia.accepts((n00, Bracket("n2", 0, False)))
    assert not ia.accepts((n20, n00))
    assert not ia.accepts(())


@pytest.mark.parametrize("species", [s_bin(), chromatic_sent().species], ids=["bin", "sent"])
def test_sdyck_is_dyck_within_index_language(species):
    root = species.colors[0]
    sd = {p.edges for p in enumerate_language(sdyck_grammar(species, root), 12)}
    both = balanced_accepted(index_automaton(species, root), 12)
    assert sd == both
    dk = dyck_k_grammar(bracket_alphabet(species))
    assert all(recognize(dk, PathArrow(STAR, STAR, w)).accepts for w in both)


def test_balanced_accepted_matches_filter():
    s = s_bin()
    ia = index_automaton(s)
    every = {w for w in ia.enumerate(8)}
    assert balanced_accepted(ia, 8) == {w for w in every if is_balanced(w)}


def test_s_image_nfa():
    g = g_sent()
    m = coloring_automaton(g)
    chrom, _ = chromatic_factorization(g)
    img = s_image_nfa(m, chrom.species)
    want = {s_translate(chrom.species, c) for c in enumerate_regular(m, 7)}
    assert enumerate_regular(img, 14) == want


def test_classical_cs_form():
    g = g_sent()
    chrom, _ = chromatic_factorization(g)
    m = s_image_nfa(coloring_automaton(g), chrom.species)
    inter = intersect_cfg_regular(sdyck_grammar(chrom.species, chrom.start), m)
    h = h_functor(g, chrom)
    got = {p for p in enumerate_language(image(inter, h), 6)}
    assert got == enumerate_language(g, 6)
