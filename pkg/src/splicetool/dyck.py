"""Contour words as Dyck words.

Each corner ``x.i`` is subdivided into two brackets (:func:`s_translate`).
The images of contour words are the ``S``-Dyck words generated by
:func:`sdyck_grammar`; they are the balanced words accepted by the local
:func:`index_automaton`.
"""
from __future__ import annotations

from typing import Dict, Hashable, List, NamedTuple, Optional, Sequence, Set, Tuple

from .automaton import ClassicalNfa, Nfa
from .contour import Corner, contour_graph, q_functor, universal_grammar, up
from .errors import TypingError
from .grammar import Cfg, image
from .graph import STAR, Graph, GraphHom, PathArrow, PathFunctor, bouquet
from .ids import label
from .species import SNode, Species
from .spliced import GapType, SplicedArrow

Id = Hashable


class Bracket(NamedTuple):
    node: Id
    index: int
    opening: bool

    def __str__(self) -> str:
        return f"{'[' if self.opening else ']'}{label(self.node)}.{self.index}"


def bracket_alphabet(s: Species) -> List[Bracket]:
    return [Bracket(x.id, i, o) for x in s.nodes for i in range(x.arity + 1) for o in (True, False)]


def bracket_base(s: Species) -> Graph:
    return bouquet(bracket_alphabet(s))


def _subdivide(x: SNode, i: int) -> Tuple[Bracket, Bracket]:
    n = x.arity
    if n == 0:
        return Bracket(x.id, 0, True), Bracket(x.id, 0, False)
    if i == 0:
        return Bracket(x.id, 0, True), Bracket(x.id, 1, True)
    if i < n:
        return Bracket(x.id, i, False), Bracket(x.id, i + 1, True)
    return Bracket(x.id, n, False), Bracket(x.id, 0, False)


def s_functor(s: Species) -> PathFunctor:
    """The subdivision as a functor from the contour graph to the bracket bouquet."""
    cg = contour_graph(s)
    em = {e.id: PathArrow(STAR, STAR, _subdivide(s.node(e.id.node), e.id.index)) for e in cg.edges}
    return PathFunctor(cg, bracket_base(s), {n: STAR for n in cg.nodes}, em)


def s_translate(s: Species, w: PathArrow) -> PathArrow:
    out: List[Bracket] = []
    for c in w.edges:
        if not isinstance(c, Corner):
            raise TypingError(f"{label(c)!r} is not a corner")
        out.extend(_subdivide(s.node(c.node), c.index))
    return PathArrow(STAR, STAR, tuple(out))


def _green(s: Species, b: Bracket) -> Optional[Corner]:
    if b.opening:
        return Corner(b.node, 0) if b.index == 0 else None
    return None if b.index == 0 else Corner(b.node, b.index)


def _red(s: Species, b: Bracket) -> Optional[Corner]:
    # each corner keeps its other bracket: x.0 -> [x.1, x.i -> [x.i+1, x.n -> ]x.0
    if b.opening:
        return None if b.index == 0 else Corner(b.node, b.index - 1)
    return Corner(b.node, s.node(b.node).arity) if b.index == 0 else None


def inverse_translate(s: Species, w: PathArrow, side: str = "green",
                      root: Optional[Id] = None) -> PathArrow:
    """Read a bracket word back as a corner path (``side`` is ``green`` or ``red``).

    The result is validated as a path of the contour graph, so bracket words
    that are not subdivided contours raise :class:`TypingError`.  ``root``
    gives the color used when the result is empty.
    """
    pick = {"green": _green, "red": _red}.get(side)
    if pick is None:
        raise ValueError(f"side must be 'green' or 'red', got {side!r}")
    corners = [c for c in (pick(s, b) for b in w.edges) if c is not None]
    cg = contour_graph(s)
    if not corners:
        if root is None:
            raise TypingError("empty translation needs an explicit root color")
        return PathArrow(up(root), up(root))
    return cg.path(cg.edge(corners[0]).src, corners)


def sdyck_grammar(s: Species, start: Id) -> Cfg:
    """``R -> [x.0 [x.1 R1 ]x.1 [x.2 ... Rn ]x.n ]x.0`` for every node ``x : R1..Rn -> R``."""
    return image(universal_grammar(s, start), s_functor(s))


def dyck_k_grammar(alphabet: Sequence[Bracket]) -> Cfg:
    """``S -> ε | [b S ]b S`` for every bracket pair ``b``."""
    base = bouquet(alphabet)
    pairs = sorted({(b.node, b.index) for b in alphabet}, key=lambda p: (label(p[0]), p[1]))
    nodes = [SNode("eps", (), "S")]
    ra: Dict[Id, SplicedArrow] = {"eps": SplicedArrow((PathArrow(STAR, STAR),))}
    for x, i in pairs:
        xid = ("pair", x, i)
        nodes.append(SNode(xid, ("S", "S"), "S"))
        ra[xid] = SplicedArrow((PathArrow(STAR, STAR, (Bracket(x, i, True),)),
                                PathArrow(STAR, STAR, (Bracket(x, i, False),)),
                                PathArrow(STAR, STAR)))
    return Cfg(base, Species.make(["S"], nodes), "S", {"S": GapType(STAR, STAR)}, ra)


def is_balanced(word: Sequence[Bracket]) -> bool:
    stack: List[Tuple[Id, int]] = []
    for b in word:
        if b.opening:
            stack.append((b.node, b.index))
        elif not stack or stack.pop() != (b.node, b.index):
            return False
    return not stack


def index_automaton(s: Species, start: Optional[Id] = None) -> ClassicalNfa:
    """Local adjacency conditions on bracket words, tracked by the last letter read.

    1. the word starts with some ``[x.0`` (with ``x`` producing ``start``);
    2. ``[x.0`` is followed by ``]x.0`` (arity 0) or ``[x.1``;
    3. ``[x.i`` (i > 0) is followed by some ``[y.0`` (``y`` producing input ``i``);
    4. ``]x.i`` (i > 0) is followed by ``[x.i+1`` or, when ``i = arity(x)``, ``]x.0``;
    5. ``]x.0`` is followed by a closing bracket or ends the word.

    Colors in 1 and 3 only matter for species with more than one color.
    """
    alpha = bracket_alphabet(s)
    begin = "start"
    trans = []
    for x in s.nodes:
        if start is None or x.output == start:
            trans.append((begin, Bracket(x.id, 0, True), Bracket(x.id, 0, True)))
    closers = [b for b in alpha if not b.opening]
    for b in alpha:
        x = s.node(b.node)
        n = x.arity
        if b.opening and b.index == 0:
            nxt = [Bracket(x.id, 0, False) if n == 0 else Bracket(x.id, 1, True)]
        elif b.opening:
            want = x.inputs[b.index - 1]
            nxt = [Bracket(y.id, 0, True) for y in s.producing(want)]
        elif b.index > 0:
            nxt = [Bracket(x.id, b.index + 1, True) if b.index < n else Bracket(x.id, 0, False)]
        else:
            nxt = closers
        trans.extend((b, a, a) for a in nxt)
    accepting = [b for b in alpha if not b.opening and b.index == 0]
    return ClassicalNfa(tuple(alpha), tuple(alpha) + (begin,), tuple(trans), (begin,),
                        tuple(accepting))


def s_image_nfa(m: Nfa, s: Species) -> Nfa:
    """Automaton for ``s(L(m))``, ``m`` over the contour graph of ``s``: two transitions per transition."""
    base = bracket_base(s)
    nodes = list(m.states.nodes)
    edges, emap = [], {}
    for e in m.states.edges:
        c = m.hom.edge_map[e.id]
        a, b = _subdivide(s.node(c.node), c.index)
        mid = ("mid", e.id)
        nodes.append(mid)
        edges += [((e.id, 0), e.src, mid), ((e.id, 1), mid, e.tgt)]
        emap[(e.id, 0)], emap[(e.id, 1)] = a, b
    g = Graph.make(nodes, edges)
    return Nfa(base, GraphHom(g, base, {n: STAR for n in g.nodes}, emap), m.q0, m.qf)


def h_functor(g: Cfg, chromatic: Cfg) -> PathFunctor:
    """``q ∘ green`` from bracket words of the chromatic species to the base of ``g``.

    Only meaningful when the base is a bouquet, where every bracket sits on ``*``.
    """
    if len(g.base.nodes) != 1:
        raise TypingError("the bracket homomorphism needs a one-node base graph")
    q = q_functor(chromatic)
    star = g.base.nodes[0]
    em = {}
    for b in bracket_alphabet(chromatic.species):
        c = _green(chromatic.species, b)
        em[b] = PathArrow(star, star) if c is None else q.edge_map[c]
    return PathFunctor(bracket_base(chromatic.species), g.base, {STAR: star}, em)


def balanced_accepted(c: ClassicalNfa, max_len: int) -> Set[Tuple[Bracket, ...]]:
    """Balanced words of length ``<= max_len`` accepted by ``c``.

    The automaton is run in step with a bracket stack.  A prefix is dropped
    as soon as a closing bracket mismatches or the open brackets can no
    longer be closed in the remaining length; neither side is enumerated on
    its own.
    """
    delta: Dict[Id, List[Tuple[Bracket, Id]]] = {}
    for q, a, r in c.transitions:
        delta.setdefault(q, []).append((a, r))
    acc = set(c.accepting)
    out: Set[Tuple[Bracket, ...]] = set()

    def walk(qs: frozenset, word: Tuple[Bracket, ...], stack: Tuple[Tuple[Id, int], ...]):
        if not stack and qs & acc:
            out.add(word)
        left = max_len - len(word)
        if left == 0:
            return
        moves: Dict[Bracket, Set[Id]] = {}
        for q in qs:
            for a, r in delta.get(q, ()):
                moves.setdefault(a, set()).add(r)
        for a, rs in moves.items():
            if a.opening:
                if len(stack) + 1 > left - 1:
                    continue
                walk(frozenset(rs), word + (a,), stack + ((a.node, a.index),))
            elif stack and stack[-1] == (a.node, a.index):
                walk(frozenset(rs), word + (a,), stack[:-1])

    walk(frozenset(c.initial), (), ())
    return out
