"""Seeded random instances: graphs, paths, grammars, automata, species, trees.

All generators take a :class:`random.Random` so a seed fixes the whole
instance.  Sizes default to the small ranges used by the acceptance suite.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Dict, Hashable, List, Optional, Sequence, Tuple

from .automaton import Nfa
from .grammar import Cfg, analyze
from .graph import Graph, GraphHom, PathArrow, bouquet, enumerate_paths
from .species import Leaf, Node, OpTree, SNode, Species, SpeciesMap, enumerate_trees
from .spliced import GapType, SplicedArrow, identity_spliced
from .tree_automaton import GCfgFree, TreeNfa

Id = Hashable


@dataclass(frozen=True)
class GrammarConfig:
    max_colors: int = 4
    max_nodes: int = 6
    max_arity: int = 3
    max_segment: int = 2
    alphabet: Tuple[str, ...] = ("a", "b")
    base_nodes: int = 1
    # resample until the start color is productive and most colors are useful
    nontrivial: bool = True
    # extra unary rules R -> R' with identity segments; these can close unit cycles
    unit_rules: int = 0


@dataclass(frozen=True)
class NfaConfig:
    max_states: int = 4
    density: float = 0.35


def random_graph(rng: random.Random, n_nodes: int = 2, n_edges: int = 4,
                 alphabet: Sequence[str] = ("a", "b", "c", "d", "e", "f")) -> Graph:
    nodes = [chr(ord("A") + k) for k in range(n_nodes)]
    edges = [(alphabet[k] if k < len(alphabet) else f"e{k}", rng.choice(nodes), rng.choice(nodes))
             for k in range(n_edges)]
    return Graph.make(nodes, edges)


def random_path(rng: random.Random, g: Graph, max_len: int, src: Optional[Id] = None) -> PathArrow:
    """A random walk of length ``<= max_len`` (shorter if it gets stuck)."""
    cur = rng.choice(g.nodes) if src is None else src
    start, edges = cur, []
    for _ in range(rng.randint(0, max_len)):
        outs = g.out_edges(cur)
        if not outs:
            break
        e = rng.choice(outs)
        edges.append(e.id)
        cur = e.tgt
    return PathArrow(start, cur, tuple(edges))


def _random_segment(rng: random.Random, base: Graph, a: Id, b: Id, max_len: int,
                    cache: Dict) -> Optional[PathArrow]:
    key = (a, b, max_len)
    if key not in cache:
        cache[key] = enumerate_paths(base, a, b, max_len)
    ps = cache[key]
    return rng.choice(ps) if ps else None


def random_cfg(rng: random.Random, cfg: GrammarConfig = GrammarConfig()) -> Cfg:
    """Random grammar; nullable colors and unit cycles occur naturally at these sizes."""
    g = _random_cfg_once(rng, cfg)
    for _ in range(200):
        if not cfg.nontrivial:
            break
        a = analyze(g)
        if g.start in a.productive and len(a.useful) >= min(2, len(g.species.colors)) \
                and len(g.species.nodes) >= 2:
            break
        g = _random_cfg_once(rng, cfg)
    return g


def _random_cfg_once(rng: random.Random, cfg: GrammarConfig) -> Cfg:
    if cfg.base_nodes == 1:
        base = bouquet(cfg.alphabet)
    else:
        base = random_graph(rng, cfg.base_nodes, len(cfg.alphabet) + cfg.base_nodes,
                            cfg.alphabet + tuple(f"z{k}" for k in range(cfg.base_nodes)))
    n_colors = rng.randint(1, cfg.max_colors)
    colors = ["S"] + [f"R{k}" for k in range(1, n_colors)]
    ca = {c: GapType(rng.choice(base.nodes), rng.choice(base.nodes)) for c in colors}
    if cfg.base_nodes > 1:
        ca["S"] = GapType(base.nodes[0], base.nodes[-1])
    cache: Dict = {}
    nodes, ra = [], {}
    n_nodes = rng.randint(2, cfg.max_nodes)
    attempts = 0
    while len(nodes) < n_nodes and attempts < 50 * n_nodes:
        attempts += 1
        out = rng.choice(colors)
        arity = rng.choice([0, 0, 1, 2] + ([3] if cfg.max_arity >= 3 else []))
        arity = min(arity, cfg.max_arity)
        ins = [rng.choice(colors) for _ in range(arity)]
        ends = [ca[out].left] + [p for c in ins for p in (ca[c].left, ca[c].right)] + [ca[out].right]
        segs = []
        for k in range(arity + 1):
            p = _random_segment(rng, base, ends[2 * k], ends[2 * k + 1], cfg.max_segment, cache)
            if p is None:
                break
            segs.append(p)
        else:
            xid = f"x{len(nodes) + 1}"
            nodes.append(SNode(xid, tuple(ins), out))
            ra[xid] = SplicedArrow(tuple(segs))
    for k in range(cfg.unit_rules):
        out = rng.choice(colors)
        same = [c for c in colors if ca[c] == ca[out]]
        xid = f"u{k + 1}"
        nodes.append(SNode(xid, (rng.choice(same),), out))
        ra[xid] = identity_spliced(ca[out])
    return Cfg(base, Species.make(colors, nodes), "S", ca, ra)


def random_word(rng: random.Random, g: Cfg, max_len: int) -> PathArrow:
    a, b = g.start_type
    for _ in range(20):
        p = random_path(rng, g.base, max_len, a)
        if p.tgt == b:
            return p
    paths = enumerate_paths(g.base, a, b, max_len)
    return rng.choice(paths) if paths else PathArrow(a, a)


def random_nfa(rng: random.Random, base: Graph, src: Id, tgt: Id,
               cfg: NfaConfig = NfaConfig()) -> Nfa:
    """Random automaton with ``q0`` over ``src`` and ``qf`` over ``tgt``."""
    k = rng.randint(1, cfg.max_states)
    states = [f"q{i}" for i in range(k)]
    nm = {q: rng.choice(base.nodes) for q in states}
    nm["q0"] = src
    qf = rng.choice(states)
    if nm[qf] != tgt:
        if src == tgt:
            qf = "q0"
        else:
            qf = states[-1] if k > 1 else "q0"
            if qf == "q0":
                states.append("q1")
                qf = "q1"
            nm[qf] = tgt
    edges, em = [], {}
    for q in states:
        for q2 in states:
            for e in base.edges:
                if e.src == nm[q] and e.tgt == nm[q2] and rng.random() < cfg.density:
                    eid = f"{q}-{e.id}-{q2}"
                    edges.append((eid, q, q2))
                    em[eid] = e.id
    g = Graph.make(states, edges)
    return Nfa(base, GraphHom(g, base, nm, em), "q0", qf)


def random_hom(rng: random.Random, target: Graph, n_nodes: int = 3, n_edges: int = 5) -> GraphHom:
    """Random graph over ``target`` (edges drawn from fibers of target edges)."""
    nodes = [f"s{i}" for i in range(n_nodes)]
    nm = {n: rng.choice(target.nodes) for n in nodes}
    edges, em = [], {}
    candidates = [(q, e, q2) for q in nodes for q2 in nodes for e in target.edges
                  if e.src == nm[q] and e.tgt == nm[q2]]
    for k in range(min(n_edges, len(candidates))):
        q, e, q2 = rng.choice(candidates)
        edges.append((f"h{k}", q, q2))
        em[f"h{k}"] = e.id
    return GraphHom(Graph.make(nodes, edges), target, nm, em)


# -- species, trees, tree automata ---------------------------------------------

def random_species(rng: random.Random, n_colors: int = 2, n_nodes: int = 4,
                   max_arity: int = 2) -> Species:
    colors = [f"c{k}" for k in range(n_colors)]
    nodes = []
    for k in range(n_nodes):
        ar = rng.randint(0, max_arity) if k else 0
        nodes.append((f"n{k}", tuple(rng.choice(colors) for _ in range(ar)), rng.choice(colors)))
    # make sure every color has a constant so closed trees exist
    for c in colors:
        if not any(x[2] == c and not x[1] for x in nodes):
            nodes.append((f"k{c}", (), c))
    return Species.make(colors, nodes)


def random_tree(rng: random.Random, s: Species, color: Id, max_depth: int = 3,
                leaf_prob: float = 0.0) -> OpTree:
    """Random tree of output ``color``; ``leaf_prob`` > 0 leaves open inputs."""
    if max_depth <= 0 or (leaf_prob and rng.random() < leaf_prob):
        consts = [x for x in s.producing(color) if x.arity == 0]
        if leaf_prob or not consts:
            return Leaf(color)
        return Node(rng.choice(consts).id, ())
    x = rng.choice(s.producing(color))
    return Node(x.id, tuple(random_tree(rng, s, c, max_depth - 1, leaf_prob) for c in x.inputs))


def random_tree_nfa(rng: random.Random, base: Species, max_states: int = 2,
                    density: float = 0.5) -> TreeNfa:
    states_over = {c: [f"{c}:{k}" for k in range(rng.randint(1, max_states))] for c in base.colors}
    cm = {q: c for c, qs in states_over.items() for q in qs}
    nodes, nm = [], {}
    for x in base.nodes:
        for ins in itertools.product(*[states_over[c] for c in x.inputs]):
            for q in states_over[x.output]:
                if rng.random() < density:
                    yid = f"{x.id}[{','.join(ins)}>{q}]"
                    nodes.append((yid, ins, q))
                    nm[yid] = x.id
    states = Species.make(list(cm), nodes)
    root_color = base.colors[0]
    return TreeNfa(base, SpeciesMap(states, base, cm, nm), rng.choice(states_over[root_color]))


def random_gcfg(rng: random.Random, base: Species, n_colors: int = 3, n_rules: int = 5) -> GCfgFree:
    """Random grammar over ``base`` whose start lies over ``base.colors[0]``."""
    colors = ["S"] + [f"G{k}" for k in range(1, n_colors)]
    ca = {"S": base.colors[0]}
    for c in colors[1:]:
        ca[c] = rng.choice(base.colors)
    over: Dict[Id, List[Id]] = {}
    for c, b in ca.items():
        over.setdefault(b, []).append(c)
    nodes, rules = [], {}
    for k in range(n_rules):
        out = "S" if k == 0 else rng.choice(colors)
        t = random_tree(rng, base, ca[out], max_depth=2, leaf_prob=0.35)
        ins = []
        for b in _frontier_colors(t):
            if b not in over:
                over[b] = []
            if not over[b]:
                break
            ins.append(rng.choice(over[b]))
        else:
            xid = f"r{k}"
            nodes.append((xid, tuple(ins), out))
            rules[xid] = t
    return GCfgFree(base, Species.make(colors, nodes), "S", ca, rules)


def _frontier_colors(t: OpTree) -> List[Id]:
    if isinstance(t, Leaf):
        return [t.color]
    out: List[Id] = []
    for c in t.children:
        out.extend(_frontier_colors(c))
    return out


def sample_closed_trees(rng: random.Random, s: Species, root: Id, max_nodes: int,
                        k: int) -> List[OpTree]:
    trees = enumerate_trees(s, root, max_nodes)
    return [rng.choice(trees) for _ in range(k)] if trees else []
