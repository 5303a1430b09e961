
from hypothesis import given, settings

from splicetool.fixtures import g_sent, sent_tree, sent_word, unit_cycle_grammar
from splicetool.grammar import classical_cfg, member_bruteforce, yield_path
from splicetool.graph import STAR, PathArrow
from splicetool.parsing import format_chart, min_derivation_cost, parse_count, parse_trees, recognize
from splicetool.species import height, size

from strategies import brute_count, parse_case, seeds

SENTENCES = ["mom sp loves sp mom", "mom sp loves sp tom", "tom sp loves sp mom",
             "tom sp loves sp tom"]


def test_sentence_chart():
    c = recognize(g_sent(), sent_word())
    assert c.accepts
    assert "S" in c[(0, 5)] and "VP" in c[(2, 5)]
    assert "NP" in c[(0, 1)] and "NP" in c[(4, 5)]
    assert "N[0,5] = {S}" in format_chart(c)


def test_identity_word_has_empty_diagonal():
    c = recognize(g_sent(), PathArrow(STAR, STAR))
    assert not c.accepts
    assert not c[(0, 0)]


def test_sentence_parse():
    res = parse_trees(g_sent(), sent_word())
    assert res.trees == [sent_tree()]
    assert str(res.count) == "Finite(1)"


def test_every_sentence_has_one_parse():
    for s in SENTENCES:
        assert parse_count(g_sent(), sent_word(s)).count == 1


def test_outside_language():
    w = sent_word("mom mom")
    assert not recognize(g_sent(), w).accepts
    assert parse_count(g_sent(), w).count == 0
    assert parse_trees(g_sent(), w).trees == []


def test_unit_cycle_is_infinite():
    g = unit_cycle_grammar()
    w = g.base.path(STAR, ["a"])
    res = parse_trees(g, w, max_trees=5)
    assert res.count.is_infinite and str(res.count) == "Infinite"
    assert len(res.trees) == 5 and res.truncated
    assert [height(t) for t in res.trees] == [1, 2, 3, 4, 5]
    assert all(yield_path(g, t) == w for t in res.trees)


def test_nullable_cycle_is_infinite():
    g = classical_cfg(["S -> S E | a", "E -> ε"])
    assert parse_count(g, g.base.path(STAR, ["a"])).is_infinite


def test_ambiguous_count():
    g = classical_cfg(["S -> S S | a"])
    counts = [parse_count(g, g.base.path(STAR, ["a"] * n)).count for n in range(1, 6)]
    assert counts == [1, 1, 2, 5, 14]


def test_min_derivation_cost():
    # x1 (3 corners) + x2 + x4 (2 corners) + x3
    assert min_derivation_cost(g_sent(), sent_word()) == 7
    assert min_derivation_cost(g_sent(), sent_word("mom")) is None


@settings(max_examples=100)
@given(seeds)
def test_recognize_matches_bruteforce(seed):
    g, w = parse_case(seed)
    assert recognize(g, w).accepts == member_bruteforce(g, w, 7)


@settings(max_examples=100)
@given(seeds)
def test_counts_match_bruteforce(seed):
    g, w = parse_case(seed)
    c = parse_count(g, w)
    if c.is_infinite:
        trees = parse_trees(g, w, 12).trees
        assert len(set(trees)) == 12
        assert all(yield_path(g, t) == w for t in trees)
    elif c.count:
        trees = parse_trees(g, w, 1000).trees
        assert len(set(trees)) == c.count
        bound = max(size(t) for t in trees)
        assert brute_count(g, w, bound) == brute_count(g, w, bound + 2) == c.count
    else:
        assert not member_bruteforce(g, w, 7)
