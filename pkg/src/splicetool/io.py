"""JSON readers/writers and DOT export.

Identifiers read from files are strings.  Constructed identifiers (tuples,
corners, brackets) are written through :func:`~splicetool.ids.label`, so a
written file reads back with string identifiers.
"""
from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Dict, Hashable, List, Optional, Union

from .automaton import ClassicalNfa, Nfa
from .errors import ValidationError
from .grammar import Cfg, classical_cfg
from .graph import Graph, GraphHom, bouquet
from .ids import label
from .species import Leaf, Node, OpTree, Species, SpeciesMap
from .spliced import GapType, SplicedArrow
from .tree_automaton import GCfgFree, TreeNfa

Id = Hashable
PathLike = Union[str, Path]


def load_json(path: PathLike) -> Any:
    with open(path, encoding="utf-8") as fh:
        try:
            return json.load(fh)
        except json.JSONDecodeError as exc:
            raise ValidationError(f"{path}: invalid JSON ({exc})") from None


def dump_json(obj: Any, path: Optional[PathLike] = None) -> str:
    text = json.dumps(obj, indent=2, ensure_ascii=False, sort_keys=False) + "\n"
    if path is not None:
        Path(path).write_text(text, encoding="utf-8")
    return text


def _field(d: dict, key: str, where: str):
    if key not in d:
        raise ValidationError(f"{where}: missing field {key!r}")
    return d[key]


# -- graphs and homomorphisms -----------------------------------------------

def graph_from_json(d: Any, where: str = "graph", root: Optional[Path] = None) -> Graph:
    """A graph object, ``{"bouquet": [...]}``, or a file name relative to ``root``."""
    if isinstance(d, str):
        p = Path(d) if root is None else root / d
        return graph_from_json(load_json(p), str(p), p.parent)
    if "bouquet" in d:
        return bouquet(d["bouquet"])
    nodes = _field(d, "nodes", where)
    edges = []
    for k, e in enumerate(_field(d, "edges", where)):
        for f in ("id", "src", "tgt"):
            _field(e, f, f"{where}.edges[{k}]")
        edges.append((e["id"], e["src"], e["tgt"]))
    return Graph.make(nodes, edges)


def graph_to_json(g: Graph) -> dict:
    return {"nodes": [label(n) for n in g.nodes],
            "edges": [{"id": label(e.id), "src": label(e.src), "tgt": label(e.tgt)}
                      for e in g.edges]}


def hom_from_json(d: dict, source: Graph, target: Graph, where: str = "hom") -> GraphHom:
    return GraphHom(source, target, _field(d, "nodeMap", where), _field(d, "edgeMap", where))


def hom_to_json(h: GraphHom) -> dict:
    return {"nodeMap": {label(k): label(v) for k, v in h.node_map.items()},
            "edgeMap": {label(k): label(v) for k, v in h.edge_map.items()}}


# -- species and trees --------------------------------------------------------

def species_from_json(d: dict, where: str = "species") -> Species:
    nodes = []
    for k, x in enumerate(_field(d, "nodes", where)):
        w = f"{where}.nodes[{k}]"
        nodes.append((_field(x, "id", w), tuple(x.get("inputs", [])), _field(x, "output", w)))
    return Species.make(_field(d, "colors", where), nodes)


def species_to_json(s: Species) -> dict:
    return {"colors": [label(c) for c in s.colors],
            "nodes": [{"id": label(x.id), "inputs": [label(c) for c in x.inputs],
                       "output": label(x.output)} for x in s.nodes]}


def tree_from_json(d: Any) -> OpTree:
    """``["x", [children]]`` (children optional) or ``{"leaf": "c"}``; a bare string is a constant."""
    if isinstance(d, str):
        return Node(d, ())
    if isinstance(d, dict):
        return Leaf(d["leaf"])
    if not d or len(d) > 2:
        raise ValidationError(f"malformed tree {d!r}")
    kids = d[1] if len(d) == 2 else []
    return Node(d[0], tuple(tree_from_json(c) for c in kids))


def tree_to_json(t: OpTree) -> Any:
    if isinstance(t, Leaf):
        return {"leaf": label(t.color)}
    return [label(t.node), [tree_to_json(c) for c in t.children]]


# -- grammars -----------------------------------------------------------------

def cfg_from_json(d: dict, root: Optional[Path] = None, where: str = "grammar") -> Cfg:
    """Grammar file; ``{"productions": [...]}`` is read as a classical grammar."""
    if "productions" in d:
        return classical_cfg(d["productions"], d.get("start"), d.get("alphabet"))
    base = graph_from_json(_field(d, "base", where), f"{where}.base", root)
    species = species_from_json(_field(d, "species", where), f"{where}.species")
    cmap = {c: GapType(*t) for c, t in _field(d, "colorMap", where).items()}
    rmap = {}
    for xid, segs in _field(d, "ruleMap", where).items():
        x = species.node(xid)
        if len(segs) != x.arity + 1:
            raise ValidationError(f"{where}.ruleMap.{xid}: expected {x.arity + 1} segments, "
                                  f"got {len(segs)}")
        paths = []
        for k, seg in enumerate(segs):
            c = x.output if k == 0 else x.inputs[k - 1]
            if c not in cmap:
                raise ValidationError(f"{where}.colorMap: no gap type for color {c!r}")
            src = cmap[c].left if k == 0 else cmap[c].right
            paths.append(base.path(src, seg))
        rmap[xid] = SplicedArrow(tuple(paths))
    return Cfg(base, species, _field(d, "start", where), cmap, rmap)


def cfg_to_json(g: Cfg) -> dict:
    return {"base": graph_to_json(g.base), "species": species_to_json(g.species),
            "start": label(g.start),
            "colorMap": {label(c): [label(t.left), label(t.right)]
                         for c, t in g.color_assign.items()},
            "ruleMap": {label(x): [[label(e) for e in p.edges] for p in f.segments]
                        for x, f in g.rule_assign.items()}}


def load_cfg(path: PathLike) -> Cfg:
    p = Path(path)
    return cfg_from_json(load_json(p), p.parent, str(p))


# -- automata -----------------------------------------------------------------

def classical_from_json(d: dict, where: str = "automaton") -> ClassicalNfa:
    return ClassicalNfa(tuple(_field(d, "alphabet", where)), tuple(_field(d, "states", where)),
                        tuple(tuple(t) for t in _field(d, "transitions", where)),
                        tuple(_field(d, "initial", where)), tuple(_field(d, "accepting", where)))


def classical_to_json(c: ClassicalNfa) -> dict:
    return {"alphabet": [label(a) for a in c.alphabet], "states": [label(q) for q in c.states],
            "transitions": [[label(q), label(a), label(r)] for q, a, r in c.transitions],
            "initial": [label(q) for q in c.initial], "accepting": [label(q) for q in c.accepting]}


def nfa_from_json(d: dict, root: Optional[Path] = None, where: str = "automaton") -> Nfa:
    base = graph_from_json(_field(d, "base", where), f"{where}.base", root)
    states = graph_from_json(_field(d, "states", where), f"{where}.states", root)
    hom = hom_from_json(_field(d, "hom", where), states, base, f"{where}.hom")
    return Nfa(base, hom, _field(d, "q0", where), _field(d, "qf", where))


def nfa_to_json(m: Nfa) -> dict:
    return {"base": graph_to_json(m.base), "states": graph_to_json(m.states),
            "hom": hom_to_json(m.hom), "q0": label(m.q0), "qf": label(m.qf)}


def load_automaton(path: PathLike) -> Union[Nfa, ClassicalNfa]:
    p = Path(path)
    d = load_json(p)
    if "transitions" in d:
        return classical_from_json(d, str(p))
    return nfa_from_json(d, p.parent, str(p))


def tree_nfa_from_json(d: dict, where: str = "tree automaton") -> TreeNfa:
    base = species_from_json(_field(d, "base", where), f"{where}.base")
    states = species_from_json(_field(d, "states", where), f"{where}.states")
    m = SpeciesMap(states, base, _field(d, "colorMap", where), _field(d, "nodeMap", where))
    return TreeNfa(base, m, _field(d, "root", where))


def tree_nfa_to_json(a: TreeNfa) -> dict:
    return {"base": species_to_json(a.base), "states": species_to_json(a.states),
            "colorMap": {label(k): label(v) for k, v in a.map.color_map.items()},
            "nodeMap": {label(k): label(v) for k, v in a.map.node_map.items()},
            "root": label(a.root_state)}


def gcfg_from_json(d: dict, where: str = "tree grammar") -> GCfgFree:
    base = species_from_json(_field(d, "base", where), f"{where}.base")
    species = species_from_json(_field(d, "species", where), f"{where}.species")
    rules = {x: tree_from_json(t) for x, t in _field(d, "ruleMap", where).items()}
    return GCfgFree(base, species, _field(d, "start", where), _field(d, "colorMap", where), rules)


def gcfg_to_json(g: GCfgFree) -> dict:
    return {"base": species_to_json(g.base), "species": species_to_json(g.species),
            "start": label(g.start),
            "colorMap": {label(k): label(v) for k, v in g.color_assign.items()},
            "ruleMap": {label(k): tree_to_json(t) for k, t in g.rule_assign.items()}}


# -- DOT ----------------------------------------------------------------------

def _q(s: Any) -> str:
    return json.dumps(label(s), ensure_ascii=False)


def graph_dot(g: Graph, name: str = "G", accepting: Optional[Id] = None,
              initial: Optional[Id] = None, edge_labels: Optional[Dict[Id, Any]] = None) -> str:
    lines = [f"digraph {name} {{", "  rankdir=LR;"]
    for n in g.nodes:
        attrs = ["shape=doublecircle" if n == accepting else "shape=circle"]
        if n == initial:
            attrs.append("style=bold")
        lines.append(f"  {_q(n)} [{', '.join(attrs)}];")
    for e in g.edges:
        lab = e.id if edge_labels is None else edge_labels[e.id]
        lines.append(f"  {_q(e.src)} -> {_q(e.tgt)} [label={_q(lab)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def nfa_dot(m: Nfa) -> str:
    return graph_dot(m.states, "NFA", accepting=m.qf, initial=m.q0,
                     edge_labels=dict(m.hom.edge_map))


def tree_dot(t: OpTree, name: str = "T") -> str:
    lines = [f"digraph {name} {{", "  node [shape=box];"]
    counter = [0]

    def walk(u: OpTree) -> str:
        nid = f"n{counter[0]}"
        counter[0] += 1
        if isinstance(u, Leaf):
            lines.append(f"  {nid} [label={_q(u.color)}, shape=plaintext];")
        else:
            lines.append(f"  {nid} [label={_q(u.node)}];")
            for c in u.children:
                lines.append(f"  {nid} -> {walk(c)};")
        return nid

    walk(t)
    lines.append("}")
    return "\n".join(lines) + "\n"


def trees_dot(ts: List[OpTree]) -> str:
    return "".join(tree_dot(t, f"T{k}") for k, t in enumerate(ts))
