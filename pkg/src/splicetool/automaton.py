"""Finite-state automata over free categories.

An :class:`Nfa` is a graph homomorphism ``hom : states -> base`` with an
initial state ``q0`` and an accepting state ``qf``.  A path ``w`` of the base
is accepted when it lifts to a path ``q0 -> qf`` of the state graph.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from typing import Dict, FrozenSet, Hashable, Iterable, List, Sequence, Set, Tuple

from .errors import TypingError, UnknownIdError, ValidationError
from .graph import (BOTTOM, BOW, EOW, STAR, TOP, Edge, Graph, GraphHom, PathArrow, PathFunctor,
                    bouquet, bracket_bouquet, compose_homs, identity_hom, lift_runs, pullback_graphs)
from .ids import fresh, label, sort_key, sorted_ids

Id = Hashable


@dataclass(frozen=True)
class Nfa:
    base: Graph
    hom: GraphHom
    q0: Id
    qf: Id

    def __post_init__(self):
        if self.hom.target != self.base:
            raise ValidationError("automaton homomorphism does not land in the base graph")
        for q in (self.q0, self.qf):
            if not self.states.has_node(q):
                raise UnknownIdError(f"unknown state {label(q)!r}")

    @property
    def states(self) -> Graph:
        return self.hom.source

    @property
    def src_node(self) -> Id:
        return self.hom.node_map[self.q0]

    @property
    def tgt_node(self) -> Id:
        return self.hom.node_map[self.qf]

    def transitions(self) -> List[Tuple[Id, Id, Id]]:
        """``(q, base edge, q')`` triples, sorted."""
        return sorted(((e.src, self.hom.edge_map[e.id], e.tgt) for e in self.states.edges),
                      key=sort_key)


def _check_endpoints(m: Nfa, w: PathArrow) -> None:
    m.base.check_path(w)
    if (w.src, w.tgt) != (m.src_node, m.tgt_node):
        raise TypingError(f"path runs {label(w.src)} -> {label(w.tgt)}, automaton reads "
                          f"{label(m.src_node)} -> {label(m.tgt_node)}")


def runs(m: Nfa, w: PathArrow) -> List[PathArrow]:
    _check_endpoints(m, w)
    return lift_runs(m.hom, w, m.q0, m.qf)


def accepts(m: Nfa, w: PathArrow) -> bool:
    _check_endpoints(m, w)
    cur = {m.q0}
    for e in w.edges:
        cur = {se.tgt for q in cur for se in m.hom.lifts_from(q, e)}
        if not cur:
            return False
    return m.qf in cur


def _dist_to(g: Graph, b: Id) -> Dict[Id, int]:
    dist = {b: 0}
    todo = [b]
    while todo:
        nxt = []
        for n in todo:
            for e in g.in_edges(n):
                if e.src not in dist:
                    dist[e.src] = dist[n] + 1
                    nxt.append(e.src)
        todo = nxt
    return dist


def enumerate_regular(m: Nfa, max_len: int) -> Set[PathArrow]:
    """Images of runs ``q0 -> qf`` of length ``<= max_len``.

    Words are explored breadth first with their sets of reachable states, so
    ambiguity does not multiply the work.
    """
    dist = _dist_to(m.states, m.qf)
    if m.q0 not in dist:
        return set()
    out: Set[PathArrow] = set()
    layer: Dict[Tuple[Id, ...], FrozenSet[Id]] = {(): frozenset([m.q0])}
    for k in range(max_len + 1):
        nxt: Dict[Tuple[Id, ...], Set[Id]] = defaultdict(set)
        for word, qs in layer.items():
            if m.qf in qs:
                out.add(PathArrow(m.src_node, m.tgt_node, word))
            if k == max_len:
                continue
            for q in qs:
                for e in m.states.out_edges(q):
                    if dist.get(e.tgt, max_len + 1) <= max_len - k - 1:
                        nxt[word + (m.hom.edge_map[e.id],)].add(e.tgt)
        layer = {w: frozenset(s) for w, s in nxt.items()}
    return out


def intersect_nfa(m1: Nfa, m2: Nfa) -> Nfa:
    if m1.base != m2.base:
        raise TypingError("automata over different base graphs")
    g, p1, _ = pullback_graphs(m1.hom, m2.hom)
    q0, qf = (m1.q0, m2.q0), (m1.qf, m2.qf)
    if not (g.has_node(q0) and g.has_node(qf)):
        raise TypingError("initial or accepting states lie over different base nodes")
    return Nfa(m1.base, compose_homs(p1, m1.hom), q0, qf)


def singleton_nfa(base: Graph, w: PathArrow) -> Nfa:
    """The ``n+1`` state line automaton accepting exactly ``w``."""
    base.check_path(w)
    nodes = base.boundary_nodes(w)
    states = [str(k) for k in range(len(nodes))]
    edges = [(f"t{k}", states[k], states[k + 1]) for k in range(len(w.edges))]
    g = Graph.make(states, edges)
    hom = GraphHom(g, base, {states[k]: nodes[k] for k in range(len(nodes))},
                   {f"t{k}": e for k, e in enumerate(w.edges)})
    return Nfa(base, hom, states[0], states[-1])


def total_nfa(g: Graph, a: Id, b: Id) -> Nfa:
    for n in (a, b):
        if not g.has_node(n):
            raise UnknownIdError(f"unknown node {label(n)!r}")
    return Nfa(g, identity_hom(g), a, b)


def preimage_nfa(m: Nfa, F: PathFunctor, r: Id, s: Id) -> Nfa:
    """Automaton over ``F.source`` accepting ``F^-1(L(m))`` restricted to paths ``r -> s``.

    States are pairs ``(z, q)`` with ``q`` over ``F(z)``; each edge ``e`` of
    ``F.source`` contributes one state edge per run of ``m`` over ``F(e)``.
    """
    if F.target != m.base:
        raise TypingError("functor does not land in the automaton's base")
    if F.node_map[r] != m.src_node or F.node_map[s] != m.tgt_node:
        raise TypingError("endpoints do not lie over the automaton's initial/accepting nodes")
    z = F.source
    nodes = [(n, q) for n in z.nodes for q in m.hom.over(F.node_map[n])]
    edges, emap = [], {}
    for e in z.edges:
        img = F.edge_map[e.id]
        for alpha in lift_runs(m.hom, img):
            eid = (e.id, alpha.src, alpha.tgt, alpha.edges)
            edges.append(Edge(eid, (e.src, alpha.src), (e.tgt, alpha.tgt)))
            emap[eid] = e.id
    g = Graph(tuple(nodes), tuple(edges))
    hom = GraphHom(g, z, {n: n[0] for n in nodes}, emap)
    return Nfa(z, hom, (r, m.q0), (s, m.qf))


def pushforward_nfa(m: Nfa, h: GraphHom) -> Nfa:
    """Image of ``L(m)`` along ``h``, by composing the presentations."""
    if h.source != m.base:
        raise TypingError("homomorphism does not start at the automaton's base")
    return Nfa(h.target, compose_homs(m.hom, h), m.q0, m.qf)


# -- classical automata -----------------------------------------------------

@dataclass(frozen=True)
class ClassicalNfa:
    alphabet: Tuple[Id, ...]
    states: Tuple[Id, ...]
    transitions: Tuple[Tuple[Id, Id, Id], ...]
    initial: Tuple[Id, ...]
    accepting: Tuple[Id, ...]

    def __post_init__(self):
        for name in ("alphabet", "states", "initial", "accepting"):
            object.__setattr__(self, name, tuple(sorted_ids(set(getattr(self, name)))))
        ts = tuple(sorted({tuple(t) for t in self.transitions}, key=sort_key))
        object.__setattr__(self, "transitions", ts)
        st, al = set(self.states), set(self.alphabet)
        for q, a, r in ts:
            if q not in st or r not in st:
                raise ValidationError(f"transition ({label(q)}, {label(a)}, {label(r)}) "
                                      "uses an undeclared state")
            if a not in al:
                raise ValidationError(f"transition uses undeclared letter {label(a)!r}")
        for q in self.initial + self.accepting:
            if q not in st:
                raise ValidationError(f"undeclared state {label(q)!r}")

    def step(self, qs: Iterable[Id], a: Id) -> Set[Id]:
        qs = set(qs)
        return {r for q, b, r in self.transitions if b == a and q in qs}

    def accepts(self, word: Sequence[Id]) -> bool:
        cur = set(self.initial)
        for a in word:
            cur = self.step(cur, a)
            if not cur:
                return False
        return bool(cur & set(self.accepting))

    def enumerate(self, max_len: int) -> Set[Tuple[Id, ...]]:
        delta: Dict[Id, List[Tuple[Id, Id]]] = defaultdict(list)
        for q, a, r in self.transitions:
            delta[q].append((a, r))
        acc = set(self.accepting)
        out: Set[Tuple[Id, ...]] = set()
        layer: Dict[Tuple[Id, ...], Set[Id]] = {(): set(self.initial)}
        for k in range(max_len + 1):
            nxt: Dict[Tuple[Id, ...], Set[Id]] = defaultdict(set)
            for word, qs in layer.items():
                if qs & acc:
                    out.add(word)
                if k < max_len:
                    for q in qs:
                        for a, r in delta[q]:
                            nxt[word + (a,)].add(r)
            layer = nxt
        return out


def bracket_embed(c: ClassicalNfa) -> Nfa:
    """Categorical automaton over the bracketed bouquet accepting ``bow w eow`` for ``w`` in ``L(c)``."""
    base = bracket_bouquet(c.alphabet)
    used = set(c.states)
    q0 = fresh("q0", used)
    qf = fresh("qf", used | {q0})
    nodes = list(c.states) + [q0, qf]
    edges, emap = [], {}
    for t in c.transitions:
        edges.append((t, t[0], t[2]))
        emap[t] = t[1]
    for q in c.initial:
        edges.append(((BOW, q), q0, q))
        emap[(BOW, q)] = BOW
    for q in c.accepting:
        edges.append(((EOW, q), q, qf))
        emap[(EOW, q)] = EOW
    g = Graph.make(nodes, edges)
    nm = {q: STAR for q in c.states}
    nm[q0], nm[qf] = BOTTOM, TOP
    return Nfa(base, GraphHom(g, base, nm, emap), q0, qf)


def classical_to_nfa(c: ClassicalNfa, base: Graph | None = None) -> Nfa:
    """Read a classical automaton with one initial and one accepting state over a bouquet.

    ``base`` defaults to the bouquet on ``c.alphabet``; a larger bouquet may
    be given so that the automaton shares a grammar's base graph.
    """
    if len(c.initial) != 1 or len(c.accepting) != 1:
        raise ValidationError("need exactly one initial and one accepting state; "
                              "use bracket_embed for the general case")
    if base is None:
        base = bouquet(c.alphabet)
    if len(base.nodes) != 1:
        raise TypingError("classical automata read paths of a one-node graph")
    star = base.nodes[0]
    g = Graph.make(c.states, [(t, t[0], t[2]) for t in c.transitions])
    hom = GraphHom(g, base, {q: star for q in c.states}, {t: t[1] for t in c.transitions})
    return Nfa(base, hom, c.initial[0], c.accepting[0])
