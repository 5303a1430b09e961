"""Contours of trees and the Chomsky-Schützenberger decomposition.

The contour graph of a species has two nodes ``R↑``/``R↓`` per color and one
corner edge ``x.i`` per node ``x`` and ``0 <= i <= arity(x)``.  Walking
around a closed tree clockwise reads a path ``root↑ -> root↓`` of corners.

Every grammar ``g`` factors as the universal grammar of its species followed
by the functor :func:`q_functor`.  Splitting the species map into a
recoloring and a chromatic part gives :func:`cs_decompose`: ``L(g)`` is the
image of a chromatic contour language intersected with a regular language.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from typing import Dict, Hashable, List, NamedTuple, Optional, Set, Tuple

from .automaton import Nfa, accepts
from .errors import TypingError, UnknownIdError
from .grammar import Cfg, enumerate_language
from .graph import Edge, Graph, GraphHom, PathArrow, PathFunctor, apply_functor, count_runs
from .ids import label, sorted_ids
from .parsing import min_derivation_cost
from .species import Leaf, OpTree, SNode, Species, SpeciesMap
from .spliced import GapType, SplicedArrow

Id = Hashable


class Oriented(NamedTuple):
    color: Id
    up: bool

    def __str__(self) -> str:
        return f"{label(self.color)}{'↑' if self.up else '↓'}"


class Corner(NamedTuple):
    node: Id
    index: int

    def __str__(self) -> str:
        return f"{label(self.node)}.{self.index}"


def up(c: Id) -> Oriented:
    return Oriented(c, True)


def down(c: Id) -> Oriented:
    return Oriented(c, False)


def corner_ends(x: SNode, i: int) -> Tuple[Oriented, Oriented]:
    src = up(x.output) if i == 0 else down(x.inputs[i - 1])
    tgt = down(x.output) if i == x.arity else up(x.inputs[i])
    return src, tgt


def contour_graph(s: Species) -> Graph:
    nodes = [o for c in s.colors for o in (up(c), down(c))]
    edges = [Edge(Corner(x.id, i), *corner_ends(x, i)) for x in s.nodes for i in range(x.arity + 1)]
    return Graph(tuple(nodes), tuple(edges))


def universal_grammar(s: Species, start: Id) -> Cfg:
    """Each node ``x`` is sent to its own corner sequence ``x.0 - x.1 - ... - x.n``."""
    if not s.has_color(start):
        raise UnknownIdError(f"unknown start color {label(start)!r}")
    base = contour_graph(s)
    ca = {c: GapType(up(c), down(c)) for c in s.colors}
    ra = {}
    for x in s.nodes:
        segs = []
        for i in range(x.arity + 1):
            a, b = corner_ends(x, i)
            segs.append(PathArrow(a, b, (Corner(x.id, i),)))
        ra[x.id] = SplicedArrow(tuple(segs))
    return Cfg(base, s, start, ca, ra)


def contour_of_tree(s: Species, t: OpTree) -> PathArrow:
    """Clockwise contour word of a closed tree."""
    edges: List[Corner] = []

    def walk(u: OpTree) -> Id:
        if isinstance(u, Leaf):
            raise TypingError("contours are defined for closed trees")
        x = s.node(u.node)
        if len(u.children) != x.arity:
            raise TypingError(f"node {label(x.id)!r} has arity {x.arity}")
        edges.append(Corner(x.id, 0))
        for i, c in enumerate(u.children, 1):
            if walk(c) != x.inputs[i - 1]:
                raise TypingError(f"child {i - 1} of {label(x.id)!r} has the wrong color")
            edges.append(Corner(x.id, i))
        return x.output

    root = walk(t)
    return PathArrow(up(root), down(root), tuple(edges))


def q_functor(g: Cfg) -> PathFunctor:
    """Functor from the contour graph to ``g.base``: corner ``x.i`` goes to segment ``i`` of ``x``."""
    cg = contour_graph(g.species)
    nm = {}
    for c in g.species.colors:
        a, b = g.color_assign[c]
        nm[up(c)], nm[down(c)] = a, b
    em = {e.id: g.rule_assign[e.id.node].segments[e.id.index] for e in cg.edges}
    return PathFunctor(cg, g.base, nm, em)


def chromatic_factorization(g: Cfg) -> Tuple[Cfg, SpeciesMap]:
    """Recolor by gap types: ``g`` factors through a grammar whose colors are its gap types."""
    ca = g.color_assign
    colors = sorted_ids(set(ca[c] for c in g.species.colors))
    nodes = [SNode(x.id, tuple(ca[c] for c in x.inputs), ca[x.output]) for x in g.species.nodes]
    chrom = Species.make(colors, nodes)
    recolor = SpeciesMap(g.species, chrom, dict(ca), {x.id: x.id for x in g.species.nodes})
    cg = Cfg(g.base, chrom, ca[g.start], {c: c for c in colors}, dict(g.rule_assign))
    return cg, recolor


def coloring_automaton(g: Cfg) -> Nfa:
    """Automaton over the chromatic contour graph checking that colors can be consistently restored."""
    chrom, recolor = chromatic_factorization(g)
    states = contour_graph(g.species)
    base = contour_graph(chrom.species)
    nm = {o: Oriented(recolor.color_map[o.color], o.up) for o in states.nodes}
    em = {e.id: e.id for e in states.edges}
    return Nfa(base, GraphHom(states, base, nm, em), up(g.start), down(g.start))


@dataclass(frozen=True, eq=False)
class CsDecomposition:
    chromatic_universal: Cfg
    coloring: Nfa
    output: PathFunctor


def cs_decompose(g: Cfg) -> CsDecomposition:
    chrom, _ = chromatic_factorization(g)
    return CsDecomposition(universal_grammar(chrom.species, chrom.start),
                           coloring_automaton(g), q_functor(chrom))


@dataclass
class CsReport:
    equal: bool
    word_bound: int
    contour_bound: int
    witness_bound: int
    language: Set[PathArrow]
    recovered: Set[PathArrow]
    contour_words: int
    missing: List[PathArrow] = field(default_factory=list)
    extra: List[PathArrow] = field(default_factory=list)

    def __str__(self) -> str:
        if self.equal:
            return f"EQUAL ({len(self.language)} words)"
        return (f"DIFFERENT (grammar {len(self.language)} words, decomposition "
                f"{len(self.recovered)} words; {len(self.missing)} missing, {len(self.extra)} extra)")

    def to_json(self) -> dict:
        words = lambda ps: sorted(" ".join(label(e) for e in p.edges) for p in ps)  # noqa: E731
        return {"equal": self.equal, "wordBound": self.word_bound,
                "contourBound": self.contour_bound, "witnessBound": self.witness_bound,
                "words": len(self.language), "contourWords": self.contour_words,
                "missing": words(self.missing), "extra": words(self.extra)}


def witness_bound(g: Cfg, words) -> int:
    """Smallest contour length that witnesses every word: max over words of the cheapest derivation."""
    costs = [min_derivation_cost(g, w) for w in words]
    return max((c for c in costs if c is not None), default=0)


def bounded_intersection(d: CsDecomposition, contour_bound: int,
                         image_bound: Optional[int] = None) -> Set[PathArrow]:
    """Contour words of length ``<= contour_bound`` in both the chromatic contour language and ``L(coloring)``.

    Subtrees are assembled bottom up; a partial contour is dropped as soon as
    it has no run at all through the coloring automaton (the contour of a
    subtree is a factor of the whole contour, so every accepted word keeps
    its subcontours).  ``image_bound`` additionally drops contours whose
    image under ``d.output`` is longer.
    """
    u = d.chromatic_universal
    h = d.coloring.hom
    img_len = {e.id: len(f.edges) for e, f in
               ((d.output.source.edge(k), v) for k, v in d.output.edge_map.items())}
    cap = float("inf") if image_bound is None else image_bound
    derived: Dict[Id, Set[Tuple[Tuple[Id, ...], int]]] = defaultdict(set)
    changed = True
    while changed:
        changed = False
        for x in u.species.nodes:
            corners = [Corner(x.id, i) for i in range(x.arity + 1)]
            base_len = x.arity + 1
            base_img = sum(img_len[c] for c in corners)
            if base_len > contour_bound or base_img > cap:
                continue
            pools = [sorted(derived[c], key=lambda p: (len(p[0]), p)) for c in x.inputs]
            out = derived[x.output]
            new: Set[Tuple[Tuple[Id, ...], int]] = set()

            def rec(k: int, acc: Tuple[Id, ...], length: int, img: int):
                if k == x.arity:
                    new.add((acc, img))
                    return
                for sub, sub_img in pools[k]:
                    if length + len(sub) > contour_bound:
                        break
                    if img + sub_img <= cap:
                        rec(k + 1, acc + sub + (corners[k + 1],), length + len(sub),
                            img + sub_img)

            rec(0, (corners[0],), base_len, base_img)
            for item in new - out:
                path = PathArrow(up(x.output), down(x.output), item[0])
                if count_runs(h, path) > 0:
                    out.add(item)
                    changed = True
    start = u.start
    result = set()
    for word, _ in derived[start]:
        p = PathArrow(up(start), down(start), word)
        if accepts(d.coloring, p):
            result.add(p)
    return result


def cs_verify(d: CsDecomposition, g: Cfg, word_bound: int,
              contour_bound: Optional[int] = None) -> CsReport:
    """Compare ``E(g, word_bound)`` with ``output(E(universal) ∩ E(coloring))`` cut to the same bound.

    With no ``contour_bound`` the witness bound is used, which is enough to
    reach every word of the left-hand side.
    """
    lhs = enumerate_language(g, word_bound)
    wb = witness_bound(g, lhs)
    cb = wb if contour_bound is None else contour_bound
    contours = bounded_intersection(d, cb, word_bound)
    rhs = {apply_functor(d.output, c) for c in contours}
    rhs = {w for w in rhs if len(w) <= word_bound}
    return CsReport(lhs == rhs, word_bound, cb, wb, lhs, rhs, len(contours),
                    sorted(lhs - rhs, key=str), sorted(rhs - lhs, key=str))
