"""Colored non-symmetric species and the free operads they generate.

Operations of the free operad are rooted planar trees (:class:`Node`) plus
explicit identities (:class:`Leaf`).  Open inputs of a tree are its leaves,
read left to right.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, Hashable, Iterable, List, Mapping, Sequence, Tuple, Union

from .errors import TypingError, UnknownIdError, ValidationError
from .ids import label, sort_key, sorted_ids

Id = Hashable


@dataclass(frozen=True)
class SNode:
    id: Id
    inputs: Tuple[Id, ...]
    output: Id

    @property
    def arity(self) -> int:
        return len(self.inputs)


@dataclass(frozen=True)
class Species:
    colors: Tuple[Id, ...]
    nodes: Tuple[SNode, ...]
    _node: Dict[Id, SNode] = field(default=None, compare=False, repr=False, hash=False)
    _by_output: Dict[Id, Tuple[SNode, ...]] = field(default=None, compare=False, repr=False,
                                                   hash=False)

    def __post_init__(self):
        colors = tuple(sorted_ids(set(self.colors)))
        if len(colors) != len(tuple(self.colors)):
            raise ValidationError("duplicate color identifiers")
        cs = set(colors)
        nodes = tuple(sorted(self.nodes, key=lambda x: sort_key(x.id)))
        index: Dict[Id, SNode] = {}
        by_out = defaultdict(list)
        for x in nodes:
            if x.id in index:
                raise ValidationError(f"duplicate node identifier {label(x.id)!r}")
            if not isinstance(x.inputs, tuple):
                x = SNode(x.id, tuple(x.inputs), x.output)
            for c in x.inputs + (x.output,):
                if c not in cs:
                    raise ValidationError(f"node {label(x.id)!r} uses undeclared color {label(c)!r}")
            index[x.id] = x
            by_out[x.output].append(x)
        object.__setattr__(self, "colors", colors)
        object.__setattr__(self, "nodes", tuple(index.values()))
        object.__setattr__(self, "_node", index)
        object.__setattr__(self, "_by_output", {c: tuple(by_out[c]) for c in colors})

    @classmethod
    def make(cls, colors: Iterable[Id], nodes: Iterable) -> "Species":
        """Build from colors and ``(id, inputs, output)`` triples."""
        ns = [x if isinstance(x, SNode) else SNode(x[0], tuple(x[1]), x[2]) for x in nodes]
        return cls(tuple(colors), tuple(ns))

    def node(self, x: Id) -> SNode:
        try:
            return self._node[x]
        except KeyError:
            raise UnknownIdError(f"unknown species node {label(x)!r}") from None

    def has_color(self, c: Id) -> bool:
        return c in self._by_output

    def producing(self, c: Id) -> Tuple[SNode, ...]:
        return self._by_output.get(c, ())


@dataclass(frozen=True)
class Leaf:
    color: Id

    def __str__(self) -> str:
        return f"<{label(self.color)}>"


@dataclass(frozen=True)
class Node:
    node: Id
    children: Tuple["OpTree", ...] = ()

    def __post_init__(self):
        if not isinstance(self.children, tuple):
            object.__setattr__(self, "children", tuple(self.children))

    def __str__(self) -> str:
        if not self.children:
            return label(self.node)
        return f"{label(self.node)}({', '.join(str(c) for c in self.children)})"


OpTree = Union[Leaf, Node]


def check_tree(s: Species, t: OpTree) -> Id:
    """Validate ``t`` against ``s`` and return its output color."""
    if isinstance(t, Leaf):
        if not s.has_color(t.color):
            raise UnknownIdError(f"unknown color {label(t.color)!r}")
        return t.color
    x = s.node(t.node)
    if len(t.children) != x.arity:
        raise TypingError(f"node {label(x.id)!r} has arity {x.arity}, got {len(t.children)} children")
    for k, (c, want) in enumerate(zip(t.children, x.inputs)):
        got = check_tree(s, c)
        if got != want:
            raise TypingError(
                f"input {k} of {label(x.id)!r} has color {label(want)!r}, child gives {label(got)!r}")
    return x.output


def output(s: Species, t: OpTree) -> Id:
    return t.color if isinstance(t, Leaf) else s.node(t.node).output


def frontier(s: Species, t: OpTree) -> Tuple[Tuple[Id, ...], Id]:
    """Input colors (the leaves, left to right) and output color of ``t``."""
    out = check_tree(s, t)
    return tuple(_leaves(t)), out


def _leaves(t: OpTree) -> List[Id]:
    if isinstance(t, Leaf):
        return [t.color]
    acc: List[Id] = []
    for c in t.children:
        acc.extend(_leaves(c))
    return acc


def arity(t: OpTree) -> int:
    if isinstance(t, Leaf):
        return 1
    return sum(arity(c) for c in t.children)


def size(t: OpTree) -> int:
    """Number of species nodes in ``t`` (identities have size 0)."""
    if isinstance(t, Leaf):
        return 0
    return 1 + sum(size(c) for c in t.children)


def height(t: OpTree) -> int:
    if isinstance(t, Leaf):
        return 0
    return 1 + max((height(c) for c in t.children), default=0)


def is_closed(t: OpTree) -> bool:
    return arity(t) == 0


def graft(s: Species, parent: OpTree, i: int, child: OpTree) -> OpTree:
    """Partial composition: plug ``child`` into input ``i`` (0-indexed) of ``parent``."""
    ins, _ = frontier(s, parent)
    if not 0 <= i < len(ins):
        raise TypingError(f"input index {i} out of range for arity {len(ins)}")
    c_out = check_tree(s, child)
    if ins[i] != c_out:
        raise TypingError(f"input {i} has color {label(ins[i])!r}, child outputs {label(c_out)!r}")
    return _graft(parent, i, child)


def _graft(t: OpTree, i: int, child: OpTree) -> OpTree:
    if isinstance(t, Leaf):
        return child
    kids = list(t.children)
    for k, c in enumerate(kids):
        a = arity(c)
        if i < a:
            kids[k] = _graft(c, i, child)
            return Node(t.node, tuple(kids))
        i -= a
    raise AssertionError("index exhausted")  # unreachable after the range check


def compose_full(s: Species, parent: OpTree, children: Sequence[OpTree]) -> OpTree:
    """Parallel composition ``parent ∘ (children...)``."""
    ins, _ = frontier(s, parent)
    if len(children) != len(ins):
        raise TypingError(f"expected {len(ins)} children, got {len(children)}")
    out = parent
    for i in range(len(children) - 1, -1, -1):
        out = graft(s, out, i, children[i])
    return out


def enumerate_trees(s: Species, root: Id, max_nodes: int, closed_only: bool = True) -> List[OpTree]:
    """All trees of output color ``root`` with at most ``max_nodes`` nodes.

    Ordered by node count, then by node id at the root, then children left to right.
    """
    if not s.has_color(root):
        raise UnknownIdError(f"unknown color {label(root)!r}")

    @lru_cache(maxsize=None)
    def exact(c: Id, k: int) -> Tuple[OpTree, ...]:
        if k == 0:
            return () if closed_only else (Leaf(c),)
        out: List[OpTree] = []
        for x in s.producing(c):
            for kids in forests(x.inputs, k - 1):
                out.append(Node(x.id, kids))
        return tuple(out)

    @lru_cache(maxsize=None)
    def forests(colors: Tuple[Id, ...], k: int) -> Tuple[Tuple[OpTree, ...], ...]:
        if not colors:
            return ((),) if k == 0 else ()
        out = []
        for j in range(k + 1):
            heads = exact(colors[0], j)
            if not heads:
                continue
            for rest in forests(colors[1:], k - j):
                for h in heads:
                    out.append((h,) + rest)
        return tuple(out)

    result: List[OpTree] = []
    for k in range(max_nodes + 1):
        result.extend(exact(root, k))
    return result


@dataclass(frozen=True)
class SpeciesMap:
    source: Species
    target: Species
    color_map: Mapping[Id, Id]
    node_map: Mapping[Id, Id]

    def __post_init__(self):
        cm = dict(self.color_map)
        nm = dict(self.node_map)
        for c in self.source.colors:
            if c not in cm or not self.target.has_color(cm[c]):
                raise ValidationError(f"color {label(c)!r} has no image in the target species")
        for x in self.source.nodes:
            if x.id not in nm:
                raise ValidationError(f"node {label(x.id)!r} has no image")
            y = self.target.node(nm[x.id])
            if tuple(cm[c] for c in x.inputs) != y.inputs or cm[x.output] != y.output:
                raise ValidationError(f"node {label(x.id)!r} maps to an incompatibly typed node")
        object.__setattr__(self, "color_map", cm)
        object.__setattr__(self, "node_map", nm)

    def apply(self, t: OpTree) -> OpTree:
        """The induced functor of free operads, on one tree."""
        if isinstance(t, Leaf):
            return Leaf(self.color_map[t.color])
        return Node(self.node_map[t.node], tuple(self.apply(c) for c in t.children))

    def over_color(self, c: Id) -> List[Id]:
        return [d for d in self.source.colors if self.color_map[d] == c]

    def over_node(self, x: Id) -> List[SNode]:
        return [y for y in self.source.nodes if self.node_map[y.id] == x]


def identity_map(s: Species) -> SpeciesMap:
    return SpeciesMap(s, s, {c: c for c in s.colors}, {x.id: x.id for x in s.nodes})
