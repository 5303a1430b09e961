import pytest
from hypothesis import given

from splicetool.errors import TypingError
from splicetool.graph import STAR, bouquet
from splicetool.spliced import (GapType, SplicedArrow, constant, identity_spliced, splice_apply,
                                splice_at, splice_full)

from strategies import LAW_GRAPH, random_spliced, rngs

LETTERS = bouquet(list("HeloWrd,! abcwxyz"))


def w(text):
    return LETTERS.path(STAR, list(text))


def sp(*words):
    return SplicedArrow(tuple(w(t) for t in words))


def test_typing_is_read_off_segments():
    g = LAW_GRAPH
    f = SplicedArrow((g.path("A", ["b"]), g.path("A", ["a"]), g.path("B", ["c"])))
    assert f.arity == 2
    assert f.outer == GapType("A", "A")
    assert f.gap_types == (GapType("B", "A"), GapType("A", "B"))


def test_splice_at_gap_one():
    f = sp("w", "x", "y", "z")
    g = sp("a", "b", "c")
    assert splice_at(f, 1, g) == sp("w", "xa", "b", "cy", "z")


def test_spliced_words():
    # "Hell" - ", " - "rld!" with "o" then "Wo" plugged into the first gap each time
    f = sp("Hell", ", ", "rld!")
    once = splice_at(f, 0, constant(w("o")))
    twice = splice_at(once, 0, constant(w("Wo")))
    assert twice.arity == 0
    assert "".join(twice.segments[0].edges) == "Hello, World!"


def test_units():
    f = sp("ab", "c", "")
    unit = identity_spliced(GapType(STAR, STAR))
    assert splice_at(f, 0, unit) == f
    assert splice_full(f, [unit, unit]) == f
    assert splice_full(unit, [f]) == f


def test_gap_mismatch():
    f = SplicedArrow((LAW_GRAPH.path("A", ["b"]), LAW_GRAPH.path("A")))
    with pytest.raises(TypingError):
        splice_at(f, 0, constant(LAW_GRAPH.path("A", ["a"])))
    with pytest.raises(TypingError):
        splice_at(f, 1, constant(LAW_GRAPH.path("A")))


def test_splice_apply_sentence():
    base = bouquet(["mom", "tom", "loves", "sp"])
    x1 = SplicedArrow((base.path(STAR), base.path(STAR, ["sp"]), base.path(STAR)))
    out = splice_apply(x1, [base.path(STAR, ["mom"]), base.path(STAR, ["loves", "sp", "tom"])])
    assert out.edges == ("mom", "sp", "loves", "sp", "tom")


@given(rngs)
def test_random_spliced_has_requested_type(rng):
    outer = GapType(rng.choice("AB"), rng.choice("AB"))
    f = random_spliced(rng, outer)
    assert f.outer == outer
    for p in f.segments:
        LAW_GRAPH.check_path(p)


@given(rngs)
def test_splice_apply_agrees_with_splice_full(rng):
    f = random_spliced(rng)
    cs = [random_spliced(rng, f.gap(k), max_arity=0) for k in range(f.arity)]
    assert splice_apply(f, [c.segments[0] for c in cs]) == splice_full(f, cs).segments[0]
