"""Context-free grammars over free categories.

A :class:`Cfg` assigns a gap type to every color (nonterminal) of a species
and a spliced arrow to every node (production), such that the spliced arrow
of ``x : R1..Rn -> R`` has the gap types of ``R1..Rn`` and outer type of
``R``.  Derivations are closed trees of color ``start``; their yields are
paths of the base graph.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from typing import Dict, Hashable, Iterable, List, Mapping, Optional, Sequence, Set, Tuple

from .errors import TypingError, ValidationError
from .graph import Graph, PathArrow, PathFunctor, bouquet
from .ids import label, sorted_ids
from .species import (Leaf, Node, OpTree, SNode, Species, check_tree, compose_full,
                      enumerate_trees)
from .spliced import GapType, SplicedArrow, identity_spliced, map_spliced, splice_full

Id = Hashable


@dataclass(frozen=True, eq=False)
class Cfg:
    base: Graph
    species: Species
    start: Id
    color_assign: Mapping[Id, GapType]
    rule_assign: Mapping[Id, SplicedArrow]

    def __post_init__(self):
        object.__setattr__(self, "color_assign",
                           {c: GapType(*t) for c, t in dict(self.color_assign).items()})
        object.__setattr__(self, "rule_assign", dict(self.rule_assign))

    @property
    def start_type(self) -> GapType:
        return self.color_assign[self.start]

    def rules(self) -> List[Tuple[SNode, SplicedArrow]]:
        return [(x, self.rule_assign[x.id]) for x in self.species.nodes]

    def productions(self) -> List[str]:
        """Rules in ``R -> w0 R1 w1 ... Rn wn`` notation, one string each."""
        out = []
        for x, f in self.rules():
            toks: List[str] = []
            for k, seg in enumerate(f.segments):
                toks.extend(label(e) for e in seg.edges)
                if k < x.arity:
                    toks.append(label(x.inputs[k]))
            out.append(f"{label(x.output)} -> {' '.join(toks) if toks else 'ε'}")
        return out


@dataclass
class ValidationReport:
    errors: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.errors

    def __str__(self) -> str:
        return "valid" if self.ok else "\n".join(self.errors)


def validate_cfg(g: Cfg) -> ValidationReport:
    rep = ValidationReport()
    err = rep.errors.append
    if not g.species.has_color(g.start):
        err(f"start color {label(g.start)!r} is not a color of the species")
    for c in g.species.colors:
        t = g.color_assign.get(c)
        if t is None:
            err(f"color {label(c)!r}: no gap type assigned")
        elif not (g.base.has_node(t.left) and g.base.has_node(t.right)):
            err(f"color {label(c)!r}: gap type {t} uses nodes outside the base graph")
    for x in g.species.nodes:
        f = g.rule_assign.get(x.id)
        if f is None:
            err(f"node {label(x.id)!r}: no spliced arrow assigned")
            continue
        if f.arity != x.arity:
            err(f"node {label(x.id)!r}: arity {x.arity} but spliced arrow has {f.arity} gaps")
            continue
        bad_path = False
        for p in f.segments:
            if not g.base.contains_path(p):
                err(f"node {label(x.id)!r}: segment {p} is not a path of the base graph")
                bad_path = True
        if bad_path:
            continue
        if x.output in g.color_assign and f.outer != g.color_assign[x.output]:
            err(f"node {label(x.id)!r}: outer type {f.outer} differs from "
                f"{label(x.output)!r} ↦ {g.color_assign[x.output]}")
        for k, c in enumerate(x.inputs):
            if c in g.color_assign and f.gap(k) != g.color_assign[c]:
                err(f"node {label(x.id)!r}: gap {k} has type {f.gap(k)}, input color "
                    f"{label(c)!r} ↦ {g.color_assign[c]}")
    extra = set(g.rule_assign) - {x.id for x in g.species.nodes}
    for x in sorted_ids(extra):
        err(f"spliced arrow assigned to unknown node {label(x)!r}")
    return rep


def require_valid(g: Cfg) -> Cfg:
    rep = validate_cfg(g)
    if not rep.ok:
        raise ValidationError(str(rep))
    return g


# -- derivations ------------------------------------------------------------

def yield_of(g: Cfg, t: OpTree) -> SplicedArrow:
    """Image of a derivation under the grammar's functor of operads."""
    check_tree(g.species, t)
    return _yield(g, t)


def _yield(g: Cfg, t: OpTree) -> SplicedArrow:
    if isinstance(t, Leaf):
        return identity_spliced(g.color_assign[t.color])
    return splice_full(g.rule_assign[t.node], [_yield(g, c) for c in t.children])


def yield_path(g: Cfg, t: OpTree) -> PathArrow:
    f = yield_of(g, t)
    if f.arity != 0:
        raise TypingError("derivation is not closed")
    return f.segments[0]


def enumerate_language(g: Cfg, max_len: int, color: Optional[Id] = None) -> Set[PathArrow]:
    """All paths of length ``<= max_len`` derivable from ``color`` (default: start).

    Semi-naive least fixpoint over (color, path) pairs; exact up to the bound.
    """
    derived = _derive_all(g, max_len)
    c = g.start if color is None else color
    a, b = g.color_assign[c]
    return {PathArrow(a, b, u) for u in derived.get(c, ())}


def _derive_all(g: Cfg, max_len: int) -> Dict[Id, Set[Tuple[Id, ...]]]:
    rules = []
    for x, f in g.rules():
        segs = [p.edges for p in f.segments]
        rules.append((x, segs, max_len - sum(len(s) for s in segs)))
    old: Dict[Id, Set[tuple]] = defaultdict(set)
    delta: Dict[Id, Set[tuple]] = defaultdict(set)
    for x, segs, budget in rules:
        if x.arity == 0 and budget >= 0:
            delta[x.output].add(segs[0])
    while any(delta.values()):
        full = {c: old[c] | delta[c] for c in set(old) | set(delta)}
        new: Dict[Id, Set[tuple]] = defaultdict(set)
        for x, segs, budget in rules:
            n = x.arity
            if n == 0 or budget < 0:
                continue
            for p in range(n):
                if not delta.get(x.inputs[p]):
                    continue
                sources = [old] * p + [delta] + [full] * (n - p - 1)
                _combine(x, segs, sources, budget, new[x.output])
        old = defaultdict(set, full)
        delta = defaultdict(set)
        for c, items in new.items():
            fresh = items - old[c]
            if fresh:
                delta[c] = fresh
    return old


def _combine(x: SNode, segs, sources, budget: int, sink: Set[tuple]) -> None:
    n = x.arity

    def rec(k: int, acc: tuple, left: int):
        if k == n:
            sink.add(acc)
            return
        for u in sources[k].get(x.inputs[k], ()):
            if len(u) <= left:
                rec(k + 1, acc + u + segs[k + 1], left - len(u))

    rec(0, segs[0], budget)


def member_bruteforce(g: Cfg, w: PathArrow, max_nodes: int) -> bool:
    """Membership by enumerating closed derivations; independent of the chart parser."""
    for t in enumerate_trees(g.species, g.start, max_nodes, closed_only=True):
        if _yield(g, t).segments[0] == w:
            return True
    return False


# -- classical grammars -----------------------------------------------------

def classical_cfg(productions: Iterable[str] | str, start: Optional[str] = None,
                  alphabet: Optional[Iterable[str]] = None) -> Cfg:
    """Read ``R -> w0 R1 w1 ... Rn wn`` productions over a bouquet.

    Nonterminals are the left-hand sides; every other token is a letter.
    ``ε`` (or ``eps``) stands for the empty word and ``|`` separates
    alternatives.  Nodes are named ``x1, x2, ...`` in reading order.
    """
    if isinstance(productions, str):
        productions = [ln for ln in productions.splitlines() if ln.strip()]
    parsed: List[Tuple[str, List[str]]] = []
    for line in productions:
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "->" not in line:
            raise ValidationError(f"production without '->': {line!r}")
        lhs, rhs = line.split("->", 1)
        lhs = lhs.strip()
        for alt in rhs.split("|"):
            toks = [t for t in alt.split() if t not in ("ε", "eps")]
            parsed.append((lhs, toks))
    if not parsed:
        raise ValidationError("no productions")
    nts = []
    for lhs, _ in parsed:
        if lhs not in nts:
            nts.append(lhs)
    letters = [] if alphabet is None else list(alphabet)
    for _, toks in parsed:
        for t in toks:
            if t not in nts and t not in letters:
                letters.append(t)
    base = bouquet(letters)
    star = base.nodes[0]
    nodes, rule_assign = [], {}
    for k, (lhs, toks) in enumerate(parsed, 1):
        segs, cur, ins = [], [], []
        for t in toks:
            if t in nts:
                segs.append(PathArrow(star, star, tuple(cur)))
                cur = []
                ins.append(t)
            else:
                cur.append(t)
        segs.append(PathArrow(star, star, tuple(cur)))
        xid = f"x{k}"
        nodes.append(SNode(xid, tuple(ins), lhs))
        rule_assign[xid] = SplicedArrow(tuple(segs))
    species = Species.make(nts, nodes)
    return Cfg(base, species, start or nts[0], {c: GapType(star, star) for c in nts}, rule_assign)


# -- closure properties -----------------------------------------------------

def _tag_species(k: int, s: Species) -> Tuple[List[Id], List[SNode]]:
    colors = [(k, c) for c in s.colors]
    nodes = [SNode((k, x.id), tuple((k, c) for c in x.inputs), (k, x.output)) for x in s.nodes]
    return colors, nodes


def _disjoint(gs: Sequence[Cfg]):
    colors, nodes, ca, ra = [], [], {}, {}
    for k, g in enumerate(gs):
        cs, ns = _tag_species(k, g.species)
        colors += cs
        nodes += ns
        ca.update({(k, c): t for c, t in g.color_assign.items()})
        ra.update({(k, x): f for x, f in g.rule_assign.items()})
    return colors, nodes, ca, ra


def union(gs: Sequence[Cfg]) -> Cfg:
    """Fresh start with a unary identity-spliced rule to each old start."""
    if not gs:
        raise ValidationError("union of no grammars")
    base, gap = gs[0].base, gs[0].start_type
    for g in gs[1:]:
        if g.base != base:
            raise TypingError("union needs grammars over the same base graph")
        if g.start_type != gap:
            raise TypingError(f"start gap types differ: {g.start_type} vs {gap}")
    colors, nodes, ca, ra = _disjoint(gs)
    start = "S"
    colors.append(start)
    ca[start] = gap
    for k, g in enumerate(gs):
        xid = ("union", k)
        nodes.append(SNode(xid, ((k, g.start),), start))
        ra[xid] = identity_spliced(gap)
    return Cfg(base, Species.make(colors, nodes), start, ca, ra)


def splice_concat(f: SplicedArrow, gs: Sequence[Cfg], base: Optional[Graph] = None) -> Cfg:
    """Grammar for ``w0 L1 w1 ... Ln wn``.

    ``base`` is only needed when ``gs`` is empty (a constant ``f``).
    """
    if len(gs) != f.arity:
        raise TypingError(f"spliced arrow has {f.arity} gaps, got {len(gs)} grammars")
    if base is None:
        if not gs:
            raise TypingError("spliced concatenation of a constant needs an explicit base graph")
        base = gs[0].base
    for p in f.segments:
        base.check_path(p)
    for k, g in enumerate(gs):
        if g.base != base:
            raise TypingError("spliced concatenation needs grammars over the same base graph")
        if g.start_type != f.gap(k):
            raise TypingError(f"gap {k} has type {f.gap(k)}, grammar {k} starts at {g.start_type}")
    colors, nodes, ca, ra = _disjoint(gs)
    start = "S"
    colors.append(start)
    ca[start] = f.outer
    nodes.append(SNode("x", tuple((k, g.start) for k, g in enumerate(gs)), start))
    ra["x"] = f
    return Cfg(base, Species.make(colors, nodes), start, ca, ra)


def image(g: Cfg, F: PathFunctor) -> Cfg:
    """Functorial image: push gap types and segments through ``F``."""
    if F.source != g.base:
        raise TypingError("functor source is not the grammar's base graph")
    ca = {c: GapType(F.node_map[t.left], F.node_map[t.right]) for c, t in g.color_assign.items()}
    ra = {x: map_spliced(F, f) for x, f in g.rule_assign.items()}
    return Cfg(F.target, g.species, g.start, ca, ra)


# -- translations -----------------------------------------------------------

@dataclass(frozen=True, eq=False)
class Translation:
    source: Cfg
    target: Cfg
    color_map: Mapping[Id, Id]
    node_map: Mapping[Id, OpTree]


def translate_tree(tr: Translation, t: OpTree) -> OpTree:
    check_tree(tr.source.species, t)
    return _translate(tr, t)


def _translate(tr: Translation, t: OpTree) -> OpTree:
    if isinstance(t, Leaf):
        return Leaf(tr.color_map[t.color])
    kids = [_translate(tr, c) for c in t.children]
    return compose_full(tr.target.species, tr.node_map[t.node], kids)


def check_translation(tr: Translation) -> List[str]:
    """Violations of the commuting-triangle and start conditions."""
    errs = []
    if tr.color_map.get(tr.source.start) != tr.target.start:
        errs.append("start color is not preserved")
    for c, t in tr.source.color_assign.items():
        if tr.target.color_assign.get(tr.color_map.get(c)) != t:
            errs.append(f"color {label(c)!r} changes gap type")
    for x, f in tr.source.rule_assign.items():
        try:
            img = yield_of(tr.target, tr.node_map[x])
        except Exception as exc:  # noqa: BLE001 - report, don't raise
            errs.append(f"node {label(x)!r}: {exc}")
            continue
        if img != f:
            errs.append(f"node {label(x)!r}: image yields {img}, expected {f}")
    return errs


def bilinearize(g: Cfg) -> Tuple[Cfg, Translation]:
    """Equivalent grammar with all nodes of arity at most 2.

    Every node ``x : R1..Rn -> R`` with ``n > 0`` is replaced by a constant
    ``x0 : I(x,0)`` and binary nodes ``xi : I(x,i-1), Ri -> I(x,i)`` with
    ``I(x,n) = R``.  The translation sends ``x`` to ``xn ∘0 ... ∘0 x1 ∘0 x0``.
    """
    colors = list(g.species.colors)
    ca = dict(g.color_assign)
    nodes: List[SNode] = []
    ra: Dict[Id, SplicedArrow] = {}
    node_map: Dict[Id, OpTree] = {}
    for x in g.species.nodes:
        f = g.rule_assign[x.id]
        if x.arity == 0:
            nodes.append(x)
            ra[x.id] = f
            node_map[x.id] = Node(x.id, ())
            continue
        a = f.outer.left
        n = x.arity

        def inter(i: int) -> Id:
            return x.output if i == n else ("I", x.id, i)

        for i in range(n):
            colors.append(("I", x.id, i))
            ca[("I", x.id, i)] = GapType(a, g.color_assign[x.inputs[i]].left)
        x0 = ("bin", x.id, 0)
        nodes.append(SNode(x0, (), inter(0)))
        ra[x0] = SplicedArrow((f.segments[0],))
        tree: OpTree = Node(x0, ())
        for i in range(1, n + 1):
            xi = ("bin", x.id, i)
            ri = x.inputs[i - 1]
            ai = g.color_assign[ri].left
            nodes.append(SNode(xi, (inter(i - 1), ri), inter(i)))
            ra[xi] = SplicedArrow((PathArrow(a, a), PathArrow(ai, ai), f.segments[i]))
            tree = Node(xi, (tree, Leaf(ri)))
        node_map[x.id] = tree
    out = Cfg(g.base, Species.make(colors, nodes), g.start, ca, ra)
    tr = Translation(g, out, {c: c for c in g.species.colors}, node_map)
    return out, tr


# -- analysis ---------------------------------------------------------------

@dataclass(frozen=True)
class Analysis:
    nullable: frozenset
    productive: frozenset
    reachable: frozenset
    useful: frozenset


def analyze(g: Cfg) -> Analysis:
    rules = g.rules()
    nullable: Set[Id] = set()
    productive: Set[Id] = set()
    changed = True
    while changed:
        changed = False
        for x, f in rules:
            if x.output not in productive and all(c in productive for c in x.inputs):
                productive.add(x.output)
                changed = True
            if (x.output not in nullable and all(p.is_identity for p in f.segments)
                    and all(c in nullable for c in x.inputs)):
                nullable.add(x.output)
                changed = True
    # reachable through contexts whose other inputs all have closed derivations
    reachable = {g.start}
    changed = True
    while changed:
        changed = False
        for x, _ in rules:
            if x.output in reachable and all(c in productive for c in x.inputs):
                for c in x.inputs:
                    if c not in reachable:
                        reachable.add(c)
                        changed = True
    useful = productive & reachable
    return Analysis(frozenset(nullable), frozenset(productive), frozenset(reachable),
                    frozenset(useful))


def trim(g: Cfg) -> Cfg:
    """Restrict to useful colors; the start color is always kept."""
    useful = analyze(g).useful
    keep = set(useful) | {g.start}
    nodes = [x for x in g.species.nodes
             if x.output in useful and all(c in useful for c in x.inputs)]
    species = Species.make([c for c in g.species.colors if c in keep], nodes)
    return Cfg(g.base, species, g.start,
               {c: t for c, t in g.color_assign.items() if c in keep},
               {x.id: g.rule_assign[x.id] for x in nodes})
