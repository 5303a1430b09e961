"""Intersection of context-free and regular languages of arrows.

:func:`pullback_grammar` builds the grammar over an automaton's state graph
whose derivations pair derivations of ``g`` with runs of ``m``.  Colors are
triples ``(q, R, q')`` and nodes bundle a rule with one run per segment.
:func:`intersect_cfg_regular` pushes that grammar back down to the base.
"""
from __future__ import annotations

import itertools
from math import prod
from typing import Hashable, List, Sequence, Tuple

from .automaton import Nfa
from .errors import TypingError
from .grammar import Cfg, bilinearize, image, trim as trim_cfg
from .graph import PathArrow, count_runs, hom_as_functor, lift_runs
from .species import SNode, Species
from .spliced import GapType, SplicedArrow

Id = Hashable

LIFT_THRESHOLD = 10_000


def lift_spliced(m: Nfa, f: SplicedArrow,
                 boundary: Sequence[Id] | None = None) -> List[Tuple[PathArrow, ...]]:
    """Run tuples ``(a0, ..., an)`` with ``ak`` a run over segment ``k``.

    ``boundary`` optionally pins the ``2(n+1)`` endpoint states, segment by
    segment; ``None`` entries are left free.
    """
    segs = f.segments
    if boundary is None:
        boundary = [None] * (2 * len(segs))
    if len(boundary) != 2 * len(segs):
        raise TypingError(f"expected {2 * len(segs)} boundary states, got {len(boundary)}")
    per_seg = [lift_runs(m.hom, s, boundary[2 * k], boundary[2 * k + 1])
               for k, s in enumerate(segs)]
    return list(itertools.product(*per_seg))


def _run_key(a: PathArrow) -> Tuple[Id, Tuple[Id, ...]]:
    return (a.src, a.edges)


def rule_lift_count(g: Cfg, m: Nfa) -> int:
    """Largest number of run tuples over a single rule of ``g``."""
    return max((prod(count_runs(m.hom, s) for s in f.segments) for _, f in g.rules()), default=0)


def pullback_grammar(g: Cfg, m: Nfa, trim: bool = True,
                     threshold: int = LIFT_THRESHOLD) -> Cfg:
    """The grammar over ``m.states`` generating runs ``q0 -> qf`` whose image ``g`` derives."""
    if g.base != m.base:
        raise TypingError("grammar and automaton have different base graphs")
    if tuple(g.start_type) != (m.src_node, m.tgt_node):
        raise TypingError(f"start gap type {g.start_type} does not match the automaton's "
                          f"endpoints ({m.src_node}, {m.tgt_node})")
    if rule_lift_count(g, m) > threshold:
        g, _ = bilinearize(g)
    hom = m.hom
    colors, ca = [], {}
    for r in g.species.colors:
        a, b = g.color_assign[r]
        for q in hom.over(a):
            for q2 in hom.over(b):
                colors.append((q, r, q2))
                ca[(q, r, q2)] = GapType(q, q2)
    nodes, ra = [], {}
    for x, f in g.rules():
        for alphas in lift_spliced(m, f):
            xid = (x.id, tuple(_run_key(a) for a in alphas))
            ins = tuple((alphas[k].tgt, x.inputs[k], alphas[k + 1].src) for k in range(x.arity))
            out = (alphas[0].src, x.output, alphas[-1].tgt)
            nodes.append(SNode(xid, ins, out))
            ra[xid] = SplicedArrow(tuple(alphas))
    start = (m.q0, g.start, m.qf)
    result = Cfg(m.states, Species.make(colors, nodes), start, ca, ra)
    return trim_cfg(result) if trim else result


def intersect_cfg_regular(g: Cfg, m: Nfa, trim: bool = True,
                          threshold: int = LIFT_THRESHOLD) -> Cfg:
    """Grammar over ``g.base`` for ``L(g) ∩ L(m)``."""
    return image(pullback_grammar(g, m, trim, threshold), hom_as_functor(m.hom))
