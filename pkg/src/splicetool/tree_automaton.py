"""Tree automata as maps of species, and generalized grammars over free operads.

A :class:`TreeNfa` is a species map ``states -> base`` with a root state.
A closed tree over ``base`` is accepted when it lifts to a tree over
``states`` whose output is the root state.
"""
from __future__ import annotations

import itertools
from collections import defaultdict
from dataclasses import dataclass
from typing import Dict, Hashable, List, Mapping, Optional, Set

from .errors import TypingError, ValidationError
from .ids import label, sort_key
from .species import (Leaf, Node, OpTree, SNode, Species, SpeciesMap, check_tree, compose_full,
                      enumerate_trees, frontier, is_closed, size)

Id = Hashable


@dataclass(frozen=True)
class TreeNfa:
    base: Species
    map: SpeciesMap
    root_state: Id

    def __post_init__(self):
        if self.map.target != self.base:
            raise ValidationError("tree automaton map does not land in the base species")
        if not self.states.has_color(self.root_state):
            raise ValidationError(f"unknown root state {label(self.root_state)!r}")

    @property
    def states(self) -> Species:
        return self.map.source

    @property
    def root_color(self) -> Id:
        return self.map.color_map[self.root_state]


def state_sets(a: TreeNfa, t: OpTree) -> Set[Id]:
    """States reachable at the root of ``t`` by a bottom-up pass (leaves take every state)."""
    if isinstance(t, Leaf):
        return set(a.map.over_color(t.color))
    kids = [state_sets(a, c) for c in t.children]
    return {y.output for y in a.map.over_node(t.node)
            if all(q in ks for q, ks in zip(y.inputs, kids))}


def accepts_tree(a: TreeNfa, t: OpTree) -> bool:
    out = check_tree(a.base, t)
    if not is_closed(t):
        raise TypingError("tree automata read closed trees")
    if out != a.root_color:
        raise TypingError(f"tree has color {label(out)!r}, automaton reads {label(a.root_color)!r}")
    return a.root_state in state_sets(a, t)


def lift_tree(a: TreeNfa, t: OpTree) -> Dict[Id, List[OpTree]]:
    """All run trees over ``t``, grouped by root state; open leaves range over their fibers."""
    if isinstance(t, Leaf):
        return {q: [Leaf(q)] for q in a.map.over_color(t.color)}
    kids = [lift_tree(a, c) for c in t.children]
    out: Dict[Id, List[OpTree]] = defaultdict(list)
    for y in a.map.over_node(t.node):
        choices = [kids[k].get(q, []) for k, q in enumerate(y.inputs)]
        for combo in itertools.product(*choices):
            out[y.output].append(Node(y.id, tuple(combo)))
    return dict(out)


def runs_tree(a: TreeNfa, t: OpTree, root: Optional[Id] = None) -> List[OpTree]:
    """Run trees of ``t`` ending in ``root`` (default: the root state)."""
    check_tree(a.base, t)
    return lift_tree(a, t).get(a.root_state if root is None else root, [])


def count_tree_runs(a: TreeNfa, t: OpTree, root: Optional[Id] = None) -> int:
    """Number of runs, by the bottom-up pass with multiplicities."""

    def counts(u: OpTree) -> Dict[Id, int]:
        if isinstance(u, Leaf):
            return {q: 1 for q in a.map.over_color(u.color)}
        kids = [counts(c) for c in u.children]
        out: Dict[Id, int] = defaultdict(int)
        for y in a.map.over_node(u.node):
            n = 1
            for k, q in enumerate(y.inputs):
                n *= kids[k].get(q, 0)
            out[y.output] += n
        return out

    check_tree(a.base, t)
    return counts(t).get(a.root_state if root is None else root, 0)


def enumerate_tree_language(a: TreeNfa, max_nodes: int) -> Set[OpTree]:
    """Images of closed run trees with at most ``max_nodes`` nodes."""
    return {a.map.apply(r) for r in enumerate_trees(a.states, a.root_state, max_nodes)}


# -- generalized grammars over a free operad --------------------------------

@dataclass(frozen=True, eq=False)
class GCfgFree:
    base: Species
    species: Species
    start: Id
    color_assign: Mapping[Id, Id]
    rule_assign: Mapping[Id, OpTree]

    def __post_init__(self):
        object.__setattr__(self, "color_assign", dict(self.color_assign))
        object.__setattr__(self, "rule_assign", dict(self.rule_assign))


def validate_gcfg(g: GCfgFree) -> List[str]:
    errs = []
    if not g.species.has_color(g.start):
        errs.append(f"start color {label(g.start)!r} is not a color of the species")
    for c in g.species.colors:
        if c not in g.color_assign or not g.base.has_color(g.color_assign[c]):
            errs.append(f"color {label(c)!r} has no image in the base species")
    for x in g.species.nodes:
        t = g.rule_assign.get(x.id)
        if t is None:
            errs.append(f"node {label(x.id)!r} has no rule")
            continue
        try:
            ins, out = frontier(g.base, t)
        except (TypingError, KeyError) as exc:
            errs.append(f"node {label(x.id)!r}: {exc}")
            continue
        want = (tuple(g.color_assign.get(c) for c in x.inputs), g.color_assign.get(x.output))
        if (ins, out) != want:
            errs.append(f"node {label(x.id)!r}: rule tree has frontier {ins} -> {out}")
    return errs


def gcfg_yield(g: GCfgFree, t: OpTree) -> OpTree:
    if isinstance(t, Leaf):
        return Leaf(g.color_assign[t.color])
    kids = [gcfg_yield(g, c) for c in t.children]
    return compose_full(g.base, g.rule_assign[t.node], kids)


def enumerate_gcfg(g: GCfgFree, max_nodes: int, color: Optional[Id] = None) -> Set[OpTree]:
    """Closed base trees of size ``<= max_nodes`` derivable from ``color`` (default: start).

    Least fixpoint over (color, tree) pairs, so rules whose tree has no
    nodes (identity rules) are handled without unfolding them.
    """
    derived: Dict[Id, Set[OpTree]] = defaultdict(set)
    rules = [(x, g.rule_assign[x.id], size(g.rule_assign[x.id])) for x in g.species.nodes]
    changed = True
    while changed:
        changed = False
        for x, r, base_size in rules:
            pools = [sorted(derived[c], key=size) for c in x.inputs]
            for combo in itertools.product(*pools):
                total = base_size + sum(size(u) for u in combo)
                if total > max_nodes:
                    continue
                t = compose_full(g.base, r, list(combo))
                if t not in derived[x.output]:
                    derived[x.output].add(t)
                    changed = True
    return set(derived[g.start if color is None else color])


def trim_gcfg(g: GCfgFree) -> GCfgFree:
    productive: Set[Id] = set()
    changed = True
    while changed:
        changed = False
        for x in g.species.nodes:
            if x.output not in productive and all(c in productive for c in x.inputs):
                productive.add(x.output)
                changed = True
    reachable = {g.start}
    changed = True
    while changed:
        changed = False
        for x in g.species.nodes:
            if x.output in reachable and all(c in productive for c in x.inputs):
                for c in x.inputs:
                    if c not in reachable:
                        reachable.add(c)
                        changed = True
    useful = productive & reachable
    nodes = [x for x in g.species.nodes if x.output in useful and all(c in useful for c in x.inputs)]
    keep = useful | {g.start}
    sp = Species.make([c for c in g.species.colors if c in keep], nodes)
    return GCfgFree(g.base, sp, g.start, {c: g.color_assign[c] for c in sp.colors},
                    {x.id: g.rule_assign[x.id] for x in nodes})


def _leaf_states(r: OpTree) -> List[Id]:
    if isinstance(r, Leaf):
        return [r.color]
    out: List[Id] = []
    for c in r.children:
        out.extend(_leaf_states(c))
    return out


def pullback_tree_grammar(g: GCfgFree, a: TreeNfa, trim: bool = True) -> GCfgFree:
    """Grammar over ``a.states`` whose derivations pair derivations of ``g`` with runs."""
    if g.base != a.base:
        raise TypingError("grammar and tree automaton have different base species")
    if g.color_assign[g.start] != a.root_color:
        raise TypingError("start color and root state lie over different base colors")
    colors = [(r, q) for r in g.species.colors for q in a.map.over_color(g.color_assign[r])]
    nodes, ra = [], {}
    for x in g.species.nodes:
        for q, runs in sorted(lift_tree(a, g.rule_assign[x.id]).items(), key=lambda kv: sort_key(kv[0])):
            for rho in runs:
                leaves = _leaf_states(rho)
                xid = (x.id, rho)
                nodes.append(SNode(xid, tuple(zip(x.inputs, leaves)), (x.output, q)))
                ra[xid] = rho
    sp = Species.make(colors, nodes)
    out = GCfgFree(a.states, sp, (g.start, a.root_state), {c: c[1] for c in colors}, ra)
    return trim_gcfg(out) if trim else out


def intersect_gcfg_regular(g: GCfgFree, a: TreeNfa, trim: bool = True) -> GCfgFree:
    """Grammar over ``g.base`` for ``L(g) ∩ L(a)``: the pullback mapped down along ``a.map``."""
    pb = pullback_tree_grammar(g, a, trim)
    return GCfgFree(a.base, pb.species, pb.start,
                    {c: a.map.color_map[q] for c, q in pb.color_assign.items()},
                    {x: a.map.apply(r) for x, r in pb.rule_assign.items()})


def total_gcfg(s: Species, root: Id) -> GCfgFree:
    """The grammar generating every closed tree of color ``root``: each node is its own rule."""
    rules = {x.id: Node(x.id, tuple(Leaf(c) for c in x.inputs)) for x in s.nodes}
    return GCfgFree(s, s, root, {c: c for c in s.colors}, rules)
