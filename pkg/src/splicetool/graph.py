"""Finite graphs and the free categories they generate.

An arrow of the free category on a graph is a :class:`PathArrow`: a source
node, a target node and a (possibly empty) sequence of edge ids.  Graph
homomorphisms present ULF functors between free categories, and
:func:`lift_runs` computes their fibers over a given path.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from typing import Dict, Hashable, Iterable, List, Mapping, Optional, Sequence, Tuple

from .errors import TypingError, UnknownIdError, ValidationError
from .ids import label, sort_key, sorted_ids

Id = Hashable


@dataclass(frozen=True)
class Edge:
    id: Id
    src: Id
    tgt: Id


@dataclass(frozen=True)
class PathArrow:
    src: Id
    tgt: Id
    edges: Tuple[Id, ...] = ()

    def __post_init__(self):
        if not isinstance(self.edges, tuple):
            object.__setattr__(self, "edges", tuple(self.edges))
        if not self.edges and self.src != self.tgt:
            raise TypingError(f"identity path needs src == tgt, got {self.src!r} -> {self.tgt!r}")

    def __len__(self) -> int:
        return len(self.edges)

    @property
    def is_identity(self) -> bool:
        return not self.edges

    def __str__(self) -> str:
        if not self.edges:
            return f"id[{label(self.src)}]"
        return " ".join(label(e) for e in self.edges)


@dataclass(frozen=True)
class Graph:
    nodes: Tuple[Id, ...]
    edges: Tuple[Edge, ...]
    _edge: Dict[Id, Edge] = field(default=None, compare=False, repr=False, hash=False)
    _out: Dict[Id, Tuple[Edge, ...]] = field(default=None, compare=False, repr=False, hash=False)
    _in: Dict[Id, Tuple[Edge, ...]] = field(default=None, compare=False, repr=False, hash=False)

    def __post_init__(self):
        nodes = tuple(sorted_ids(set(self.nodes)))
        if len(nodes) != len(tuple(self.nodes)):
            raise ValidationError("duplicate node identifiers")
        edges = tuple(sorted(self.edges, key=lambda e: sort_key(e.id)))
        index: Dict[Id, Edge] = {}
        node_set = set(nodes)
        out = defaultdict(list)
        inc = defaultdict(list)
        for e in edges:
            if e.id in index:
                raise ValidationError(f"duplicate edge identifier {label(e.id)!r}")
            if e.src not in node_set or e.tgt not in node_set:
                raise ValidationError(f"edge {label(e.id)!r} has an endpoint outside the graph")
            index[e.id] = e
            out[e.src].append(e)
            inc[e.tgt].append(e)
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "_edge", index)
        object.__setattr__(self, "_out", {n: tuple(out[n]) for n in nodes})
        object.__setattr__(self, "_in", {n: tuple(inc[n]) for n in nodes})

    @classmethod
    def make(cls, nodes: Iterable[Id], edges: Iterable) -> "Graph":
        """Build from node ids and ``(id, src, tgt)`` triples or :class:`Edge` values."""
        es = [e if isinstance(e, Edge) else Edge(*e) for e in edges]
        return cls(tuple(nodes), tuple(es))

    def has_node(self, n: Id) -> bool:
        return n in self._out

    def edge(self, e: Id) -> Edge:
        try:
            return self._edge[e]
        except KeyError:
            raise UnknownIdError(f"unknown edge {label(e)!r}") from None

    def out_edges(self, n: Id) -> Tuple[Edge, ...]:
        return self._out.get(n, ())

    def in_edges(self, n: Id) -> Tuple[Edge, ...]:
        return self._in.get(n, ())

    def path(self, src: Id, edges: Sequence[Id] = (), tgt: Optional[Id] = None) -> PathArrow:
        """Checked constructor for a path starting at ``src``."""
        self._require_node(src)
        cur = src
        for e in edges:
            ed = self.edge(e)
            if ed.src != cur:
                raise TypingError(
                    f"edge {label(e)!r} starts at {label(ed.src)!r}, expected {label(cur)!r}")
            cur = ed.tgt
        if tgt is not None and tgt != cur:
            raise TypingError(f"path ends at {label(cur)!r}, expected {label(tgt)!r}")
        return PathArrow(src, cur, tuple(edges))

    def word(self, *edges: Id) -> PathArrow:
        """Path from a non-empty edge sequence, source read off the first edge."""
        if not edges:
            raise TypingError("word() needs at least one edge; use identity_path for id")
        return self.path(self.edge(edges[0]).src, edges)

    def check_path(self, p: PathArrow) -> None:
        q = self.path(p.src, p.edges)
        if q.tgt != p.tgt:
            raise TypingError(f"path target {label(p.tgt)!r} does not match its edges")

    def contains_path(self, p: PathArrow) -> bool:
        try:
            self.check_path(p)
        except (TypingError, UnknownIdError):
            return False
        return True

    def boundary_nodes(self, p: PathArrow) -> List[Id]:
        """Node at each of the ``len(p)+1`` positions of ``p``."""
        out = [p.src]
        for e in p.edges:
            out.append(self._edge[e].tgt)
        return out

    def _require_node(self, n: Id) -> None:
        if n not in self._out:
            raise UnknownIdError(f"unknown node {label(n)!r}")


def compose_paths(p: PathArrow, q: PathArrow) -> PathArrow:
    if p.tgt != q.src:
        raise TypingError(f"cannot compose: {label(p.tgt)!r} != {label(q.src)!r}")
    return PathArrow(p.src, q.tgt, p.edges + q.edges)


def concat_paths(paths: Sequence[PathArrow]) -> PathArrow:
    out = paths[0]
    for q in paths[1:]:
        out = compose_paths(out, q)
    return out


def identity_path(g: Graph, a: Id) -> PathArrow:
    g._require_node(a)
    return PathArrow(a, a, ())


STAR = "*"
BOTTOM = "⊥"
TOP = "⊤"
BOW = "bow"
EOW = "eow"


def bouquet(alphabet: Iterable[Id]) -> Graph:
    letters = list(alphabet)
    if len(set(letters)) != len(letters):
        raise ValidationError("duplicate letters in alphabet")
    return Graph.make([STAR], [(a, STAR, STAR) for a in letters])


def bracket_bouquet(alphabet: Iterable[Id]) -> Graph:
    letters = list(alphabet)
    if len(set(letters)) != len(letters):
        raise ValidationError("duplicate letters in alphabet")
    if BOW in letters or EOW in letters:
        raise ValidationError("letters 'bow' and 'eow' are reserved")
    edges = [(a, STAR, STAR) for a in letters]
    edges += [(BOW, BOTTOM, STAR), (EOW, STAR, TOP)]
    return Graph.make([BOTTOM, STAR, TOP], edges)


def _distance_to(g: Graph, b: Id) -> Dict[Id, int]:
    dist = {b: 0}
    frontier = [b]
    while frontier:
        nxt = []
        for n in frontier:
            for e in g.in_edges(n):
                if e.src not in dist:
                    dist[e.src] = dist[n] + 1
                    nxt.append(e.src)
        frontier = nxt
    return dist


def enumerate_paths(g: Graph, a: Id, b: Id, max_len: int) -> List[PathArrow]:
    """All paths ``a -> b`` with at most ``max_len`` edges.

    Output is ordered by length, then lexicographically by edge id.
    """
    g._require_node(a)
    g._require_node(b)
    dist = _distance_to(g, b)
    out: List[PathArrow] = []
    layer: List[Tuple[Id, Tuple[Id, ...]]] = [(a, ())] if a in dist and dist[a] <= max_len else []
    for length in range(max_len + 1):
        nxt = []
        for node, edges in layer:
            if node == b:
                out.append(PathArrow(a, b, edges))
            if length == max_len:
                continue
            for e in g.out_edges(node):
                d = dist.get(e.tgt)
                if d is not None and length + 1 + d <= max_len:
                    nxt.append((e.tgt, edges + (e.id,)))
        layer = nxt
    return out


@dataclass(frozen=True)
class GraphHom:
    source: Graph
    target: Graph
    node_map: Mapping[Id, Id]
    edge_map: Mapping[Id, Id]
    _fiber_out: Dict = field(default=None, compare=False, repr=False, hash=False)
    _node_fiber: Dict = field(default=None, compare=False, repr=False, hash=False)

    def __post_init__(self):
        nm = dict(self.node_map)
        em = dict(self.edge_map)
        for n in self.source.nodes:
            if n not in nm:
                raise ValidationError(f"node {label(n)!r} has no image")
            if not self.target.has_node(nm[n]):
                raise ValidationError(f"node {label(n)!r} maps outside the target graph")
        fiber_out = defaultdict(list)
        for e in self.source.edges:
            if e.id not in em:
                raise ValidationError(f"edge {label(e.id)!r} has no image")
            te = self.target.edge(em[e.id])
            if te.src != nm[e.src] or te.tgt != nm[e.tgt]:
                raise ValidationError(
                    f"edge {label(e.id)!r} maps to {label(te.id)!r} with incompatible endpoints")
            fiber_out[(e.src, te.id)].append(e)
        node_fiber = defaultdict(list)
        for n in self.source.nodes:
            node_fiber[nm[n]].append(n)
        object.__setattr__(self, "node_map", nm)
        object.__setattr__(self, "edge_map", em)
        object.__setattr__(self, "_fiber_out", {k: tuple(v) for k, v in fiber_out.items()})
        object.__setattr__(self, "_node_fiber", {k: tuple(v) for k, v in node_fiber.items()})

    def over(self, node: Id) -> Tuple[Id, ...]:
        """Source nodes lying over a target node."""
        return self._node_fiber.get(node, ())

    def lifts_from(self, q: Id, e: Id) -> Tuple[Edge, ...]:
        return self._fiber_out.get((q, e), ())

    def apply(self, p: PathArrow) -> PathArrow:
        return PathArrow(self.node_map[p.src], self.node_map[p.tgt],
                         tuple(self.edge_map[e] for e in p.edges))


def identity_hom(g: Graph) -> GraphHom:
    return GraphHom(g, g, {n: n for n in g.nodes}, {e.id: e.id for e in g.edges})


def compose_homs(h1: GraphHom, h2: GraphHom) -> GraphHom:
    """``h2`` after ``h1``."""
    if h1.target != h2.source:
        raise TypingError("homomorphisms are not composable")
    return GraphHom(h1.source, h2.target,
                    {n: h2.node_map[m] for n, m in h1.node_map.items()},
                    {e: h2.edge_map[f] for e, f in h1.edge_map.items()})


@dataclass(frozen=True)
class PathFunctor:
    """A functor between free categories, given on generators."""
    source: Graph
    target: Graph
    node_map: Mapping[Id, Id]
    edge_map: Mapping[Id, PathArrow]

    def __post_init__(self):
        nm = dict(self.node_map)
        em = dict(self.edge_map)
        for n in self.source.nodes:
            if n not in nm or not self.target.has_node(nm[n]):
                raise ValidationError(f"node {label(n)!r} has no image in the target graph")
        for e in self.source.edges:
            if e.id not in em:
                raise ValidationError(f"edge {label(e.id)!r} has no image")
            img = em[e.id]
            self.target.check_path(img)
            if img.src != nm[e.src] or img.tgt != nm[e.tgt]:
                raise ValidationError(f"image of edge {label(e.id)!r} has the wrong endpoints")
        object.__setattr__(self, "node_map", nm)
        object.__setattr__(self, "edge_map", em)


def hom_as_functor(h: GraphHom) -> PathFunctor:
    return PathFunctor(h.source, h.target, h.node_map,
                       {e.id: PathArrow(h.node_map[e.src], h.node_map[e.tgt], (h.edge_map[e.id],))
                        for e in h.source.edges})


def identity_functor(g: Graph) -> PathFunctor:
    return hom_as_functor(identity_hom(g))


def apply_functor(f: PathFunctor, w: PathArrow) -> PathArrow:
    f.source.check_path(w)
    out: List[Id] = []
    for e in w.edges:
        out.extend(f.edge_map[e].edges)
    return PathArrow(f.node_map[w.src], f.node_map[w.tgt], tuple(out))


def _forward_sets(h: GraphHom, w: PathArrow, q_src: Optional[Id]) -> List[set]:
    if q_src is not None:
        if q_src not in h.node_map:
            raise UnknownIdError(f"unknown state {label(q_src)!r}")
        if h.node_map[q_src] != w.src:
            raise TypingError(f"state {label(q_src)!r} does not lie over {label(w.src)!r}")
        start = {q_src}
    else:
        start = set(h.over(w.src))
    sets = [start]
    for e in w.edges:
        nxt = set()
        for q in sets[-1]:
            for se in h.lifts_from(q, e):
                nxt.add(se.tgt)
        sets.append(nxt)
    return sets


def lift_runs(h: GraphHom, w: PathArrow, q_src: Optional[Id] = None,
              q_tgt: Optional[Id] = None) -> List[PathArrow]:
    """All paths of ``h.source`` whose edgewise image is ``w``.

    ``q_src``/``q_tgt`` pin the endpoints.  Runs come back sorted by
    (source state, edge sequence).
    """
    h.target.check_path(w)
    if q_tgt is not None and h.node_map.get(q_tgt) != w.tgt:
        raise TypingError(f"state {label(q_tgt)!r} does not lie over {label(w.tgt)!r}")
    sets = _forward_sets(h, w, q_src)
    n = len(w.edges)
    ends = sets[n] if q_tgt is None else sets[n] & {q_tgt}
    # backward pass: alive[k] = states at position k that reach an allowed end
    alive = [set() for _ in range(n + 1)]
    alive[n] = set(ends)
    for k in range(n - 1, -1, -1):
        for q in sets[k]:
            if any(se.tgt in alive[k + 1] for se in h.lifts_from(q, w.edges[k])):
                alive[k].add(q)
    runs: List[PathArrow] = []

    def extend(k: int, start: Id, q: Id, acc: Tuple[Id, ...]):
        if k == n:
            runs.append(PathArrow(start, q, acc))
            return
        for se in h.lifts_from(q, w.edges[k]):
            if se.tgt in alive[k + 1]:
                extend(k + 1, start, se.tgt, acc + (se.id,))

    for q in sorted_ids(alive[0]):
        extend(0, q, q, ())
    return runs


def count_runs(h: GraphHom, w: PathArrow, q_src: Optional[Id] = None,
               q_tgt: Optional[Id] = None) -> int:
    """Number of runs over ``w``, by the same forward pass without backtracking."""
    h.target.check_path(w)
    if q_src is not None:
        counts = {q: 1 for q in _forward_sets(h, PathArrow(w.src, w.src), q_src)[0]}
    else:
        counts = {q: 1 for q in h.over(w.src)}
    for e in w.edges:
        nxt: Dict[Id, int] = defaultdict(int)
        for q, c in counts.items():
            for se in h.lifts_from(q, e):
                nxt[se.tgt] += c
        counts = nxt
    if q_tgt is not None:
        return counts.get(q_tgt, 0)
    return sum(counts.values())


def pullback_graphs(h1: GraphHom, h2: GraphHom) -> Tuple[Graph, GraphHom, GraphHom]:
    """Pullback of two homomorphisms into the same graph.

    Nodes are pairs ``(a, b)`` over a common target node, edges are pairs of
    edges over a common target edge.
    """
    if h1.target != h2.target:
        raise TypingError("pullback needs homomorphisms into the same graph")
    nodes = [(a, b) for t in h1.target.nodes for a in h1.over(t) for b in h2.over(t)]
    by_img = defaultdict(list)
    for e in h2.source.edges:
        by_img[h2.edge_map[e.id]].append(e)
    edges = []
    for e1 in h1.source.edges:
        for e2 in by_img.get(h1.edge_map[e1.id], ()):
            edges.append(Edge((e1.id, e2.id), (e1.src, e2.src), (e1.tgt, e2.tgt)))
    g = Graph(tuple(nodes), tuple(edges))
    p1 = GraphHom(g, h1.source, {n: n[0] for n in g.nodes}, {e.id: e.id[0] for e in g.edges})
    p2 = GraphHom(g, h2.source, {n: n[1] for n in g.nodes}, {e.id: e.id[1] for e in g.edges})
    return g, p1, p2


@dataclass(frozen=True)
class DeterminismFlags:
    deterministic: bool
    codeterministic: bool
    partial_deterministic: bool
    partial_codeterministic: bool


def determinism_flags(h: GraphHom) -> DeterminismFlags:
    det = pdet = codet = pcodet = True
    in_fiber = defaultdict(int)
    for e in h.source.edges:
        in_fiber[(e.tgt, h.edge_map[e.id])] += 1
    for q in h.source.nodes:
        img = h.node_map[q]
        for te in h.target.out_edges(img):
            k = len(h.lifts_from(q, te.id))
            det &= k == 1
            pdet &= k <= 1
        for te in h.target.in_edges(img):
            k = in_fiber.get((q, te.id), 0)
            codet &= k == 1
            pcodet &= k <= 1
    return DeterminismFlags(det, codet, pdet, pcodet)
