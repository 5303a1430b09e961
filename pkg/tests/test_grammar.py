import pytest
from hypothesis import given, settings

from splicetool.errors import TypingError, ValidationError
from splicetool.fixtures import dyck_grammar, g_sent, sent_tree, sent_word
from splicetool.grammar import (Cfg, analyze, bilinearize, check_translation, classical_cfg,
                                enumerate_language, image, member_bruteforce, splice_concat, trim,
                                translate_tree, union, validate_cfg, yield_of, yield_path)
from splicetool.graph import STAR, PathArrow, PathFunctor, bouquet, identity_functor
from splicetool.parsing import parse_count
from splicetool.species import Leaf, Node, Species, enumerate_trees, graft
from splicetool.spliced import GapType, SplicedArrow

from strategies import cfgs

SENTENCES = {"mom sp loves sp mom", "mom sp loves sp tom", "tom sp loves sp mom",
             "tom sp loves sp tom"}


def words(ps):
    return {" ".join(p.edges) for p in ps}


def bottom_up_yield(g, t):
    """Second splicer: recursive concatenation of segments, no operad composition."""
    x = g.species.node(t.node)
    segs = g.rule_assign[x.id].segments
    out = list(segs[0].edges)
    for k, c in enumerate(t.children):
        out += bottom_up_yield(g, c) + list(segs[k + 1].edges)
    return out


class TestValidation:
    def test_sentence_grammar_is_valid(self):
        assert validate_cfg(g_sent()).ok

    def test_wrong_arity(self):
        g = g_sent()
        rules = dict(g.rule_assign)
        rules["x4"] = SplicedArrow((g.base.path(STAR, ["loves"]),))
        rep = validate_cfg(Cfg(g.base, g.species, g.start, g.color_assign, rules))
        assert len(rep.errors) == 1

    def test_wrong_gap_type(self):
        base = bouquet(["a"])
        two = Species.make(["S", "T"], [("x", ("T",), "S"), ("y", (), "T")])
        f = SplicedArrow((base.path(STAR), base.path(STAR)))
        g = Cfg(base, two, "S", {"S": GapType(STAR, STAR), "T": GapType(STAR, "nowhere")},
                {"x": f, "y": SplicedArrow((base.path(STAR),))})
        assert not validate_cfg(g).ok


class TestYield:
    def test_leaf(self):
        f = yield_of(g_sent(), Leaf("NP"))
        assert f.arity == 1 and all(p.is_identity for p in f.segments)

    def test_sentence(self):
        assert yield_path(g_sent(), sent_tree()) == sent_word()

    @given(cfgs())
    def test_second_splicer(self, g):
        for t in enumerate_trees(g.species, g.start, 5)[:20]:
            assert list(yield_path(g, t).edges) == bottom_up_yield(g, t)


class TestEnumerate:
    def test_sentences(self):
        assert words(enumerate_language(g_sent(), 5)) == SENTENCES
        assert enumerate_language(g_sent(), 4) == set()

    def test_dyck(self):
        assert words(enumerate_language(dyck_grammar(), 4)) == {"", "[ ]", "[ ] [ ]", "[ [ ] ]"}

    def test_empty_species(self):
        base = bouquet(["a"])
        g = Cfg(base, Species.make(["S"], []), "S", {"S": GapType(STAR, STAR)}, {})
        assert enumerate_language(g, 5) == set()

    def test_membership(self):
        g = g_sent()
        assert all(member_bruteforce(g, sent_word(s), 4) for s in SENTENCES)
        assert not member_bruteforce(g, sent_word("mom mom"), 6)

    @settings(max_examples=50)
    @given(cfgs())
    def test_language_is_tree_yields(self, g):
        # every tree of at most 4 nodes with a short yield shows up in the enumeration
        lang = enumerate_language(g, 4)
        for t in enumerate_trees(g.species, g.start, 4):
            p = yield_path(g, t)
            if len(p) <= 4:
                assert p in lang


def single(letter):
    return classical_cfg([f"S -> {letter}"], alphabet=["a", "b"])


class TestClosure:
    def test_union_of_one(self):
        assert enumerate_language(union([g_sent()]), 5) == enumerate_language(g_sent(), 5)

    def test_union_of_singletons(self):
        assert words(enumerate_language(union([single("a"), single("b")]), 3)) == {"a", "b"}

    def test_union_adds_counts(self):
        u = union([single("a"), single("a")])
        assert parse_count(u, u.base.path(STAR, ["a"])).count == 2

    def test_union_type_errors(self):
        with pytest.raises(TypingError):
            union([single("a"), g_sent()])

    def test_constant_concat(self):
        base = bouquet(["a", "b"])
        g = splice_concat(SplicedArrow((base.path(STAR, ["a", "b"]),)), [], base)
        assert words(enumerate_language(g, 5)) == {"a b"}

    def test_concat_of_languages(self):
        base = bouquet(["a", "b"])
        g1 = classical_cfg(["S -> a | a S"], alphabet=["a", "b"])
        g2 = classical_cfg(["S -> b | ε"], alphabet=["a", "b"])
        f = SplicedArrow((base.path(STAR), base.path(STAR), base.path(STAR)))
        got = words(enumerate_language(splice_concat(f, [g1, g2]), 4))
        want = {" ".join(filter(None, [u, v])) for u in words(enumerate_language(g1, 4))
                for v in words(enumerate_language(g2, 4))}
        assert got == {w for w in want if len(w.split()) <= 4}

    def test_sentence_from_parts(self):
        base = g_sent().base
        np = classical_cfg(["N -> mom | tom"], alphabet=base_letters(base))
        f = SplicedArrow((base.path(STAR), base.path(STAR, ["sp", "loves", "sp"]), base.path(STAR)))
        assert enumerate_language(splice_concat(f, [np, np]), 5) == enumerate_language(g_sent(), 5)

    def test_image_identity(self):
        g = g_sent()
        assert enumerate_language(image(g, identity_functor(g.base)), 5) == \
            enumerate_language(g, 5)

    def test_image_erasing(self):
        g = dyck_grammar()
        erase = PathFunctor(g.base, g.base, {STAR: STAR},
                            {e.id: g.base.path(STAR) for e in g.base.edges})
        assert enumerate_language(image(g, erase), 6) == {PathArrow(STAR, STAR)}


def base_letters(base):
    return [e.id for e in base.edges]


class TestBilinearize:
    def test_arity_and_language(self):
        g = g_sent()
        b, tr = bilinearize(g)
        assert all(x.arity <= 2 for x in b.species.nodes)
        assert enumerate_language(b, 6) == enumerate_language(g, 6)
        assert check_translation(tr) == []

    def test_translated_tree_has_same_yield(self):
        g = g_sent()
        b, tr = bilinearize(g)
        t2 = translate_tree(tr, sent_tree())
        assert yield_path(b, t2) == yield_path(g, sent_tree())
        assert translate_tree(tr, Leaf("NP")) == Leaf("NP")

    def test_translation_respects_grafting(self):
        g = g_sent()
        _, tr = bilinearize(g)
        s, sb = g.species, tr.target.species
        a = Node("x1", (Leaf("NP"), Leaf("VP")))
        c = Node("x4", (Leaf("NP"),))
        assert translate_tree(tr, graft(s, a, 1, c)) == graft(sb, translate_tree(tr, a), 1,
                                                              translate_tree(tr, c))

    @settings(max_examples=40)
    @given(cfgs())
    def test_random(self, g):
        b, tr = bilinearize(g)
        assert all(x.arity <= 2 for x in b.species.nodes)
        assert check_translation(tr) == []
        assert enumerate_language(b, 6) == enumerate_language(g, 6)


class TestAnalysis:
    def test_sentence(self):
        a = analyze(g_sent())
        assert a.nullable == frozenset() and a.useful == frozenset({"S", "NP", "VP"})
        assert trim(g_sent()).productions() == g_sent().productions()

    def test_nullable(self):
        assert "S" in analyze(classical_cfg(["S -> ε"])).nullable

    def test_junk_removed(self):
        g = classical_cfg(["S -> a", "J -> J b", "U -> a"])
        a = analyze(g)
        assert "J" not in a.productive and "U" not in a.reachable
        assert trim(g).species.colors == ("S",)

    @settings(max_examples=50)
    @given(cfgs(nontrivial=False))
    def test_trim_keeps_language(self, g):
        assert enumerate_language(trim(g), 5) == enumerate_language(g, 5)


def test_classical_reader_errors():
    with pytest.raises(ValidationError):
        classical_cfg(["S a"])
    with pytest.raises(ValidationError):
        classical_cfg([])
