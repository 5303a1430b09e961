"""Spliced arrows: ``n+1`` paths separated by ``n`` typed gaps.

Gap ``k`` (0-indexed) sits between segments ``k`` and ``k+1``; its type is
``(tgt of segment k, src of segment k+1)``.  Since every segment carries its
endpoints, gap types and the outer type are read off the segments and can
never disagree with them.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Hashable, NamedTuple, Sequence, Tuple

from .errors import TypingError
from .graph import Graph, PathArrow, PathFunctor, apply_functor, compose_paths, concat_paths
from .ids import label

Id = Hashable


class GapType(NamedTuple):
    left: Id
    right: Id

    def __str__(self) -> str:
        return f"({label(self.left)},{label(self.right)})"


@dataclass(frozen=True)
class SplicedArrow:
    segments: Tuple[PathArrow, ...]

    def __post_init__(self):
        segs = tuple(self.segments)
        if not segs:
            raise TypingError("a spliced arrow has at least one segment")
        object.__setattr__(self, "segments", segs)

    @property
    def arity(self) -> int:
        return len(self.segments) - 1

    @property
    def outer(self) -> GapType:
        return GapType(self.segments[0].src, self.segments[-1].tgt)

    @property
    def gap_types(self) -> Tuple[GapType, ...]:
        s = self.segments
        return tuple(GapType(s[k].tgt, s[k + 1].src) for k in range(len(s) - 1))

    def gap(self, k: int) -> GapType:
        return GapType(self.segments[k].tgt, self.segments[k + 1].src)

    def __str__(self) -> str:
        return " - ".join("ε" if p.is_identity else str(p) for p in self.segments)


def constant(p: PathArrow) -> SplicedArrow:
    return SplicedArrow((p,))


def identity_spliced(gap: GapType) -> SplicedArrow:
    """``id_A - id_B``, the operad unit at ``(A, B)``."""
    return SplicedArrow((PathArrow(gap.left, gap.left), PathArrow(gap.right, gap.right)))


def check_spliced(base: Graph, f: SplicedArrow) -> None:
    for p in f.segments:
        base.check_path(p)


def splice_at(f: SplicedArrow, i: int, g: SplicedArrow) -> SplicedArrow:
    """Splice ``g`` into gap ``i`` of ``f``; boundary segments are composed."""
    if not 0 <= i < f.arity:
        raise TypingError(f"gap index {i} out of range for arity {f.arity}")
    if f.gap(i) != g.outer:
        raise TypingError(f"gap {i} has type {f.gap(i)}, spliced arrow has type {g.outer}")
    w, u = f.segments, g.segments
    if len(u) == 1:
        mid = (concat_paths([w[i], u[0], w[i + 1]]),)
    else:
        mid = (compose_paths(w[i], u[0]),) + u[1:-1] + (compose_paths(u[-1], w[i + 1]),)
    return SplicedArrow(w[:i] + mid + w[i + 2:])


def splice_full(f: SplicedArrow, gs: Sequence[SplicedArrow]) -> SplicedArrow:
    if len(gs) != f.arity:
        raise TypingError(f"expected {f.arity} spliced arrows, got {len(gs)}")
    out = f
    for i in range(len(gs) - 1, -1, -1):
        out = splice_at(out, i, gs[i])
    return out


def splice_apply(f: SplicedArrow, constants: Sequence[PathArrow]) -> PathArrow:
    """The path ``w0 u1 w1 ... un wn``."""
    if len(constants) != f.arity:
        raise TypingError(f"expected {f.arity} paths, got {len(constants)}")
    parts = [f.segments[0]]
    for k, u in enumerate(constants):
        if (u.src, u.tgt) != tuple(f.gap(k)):
            raise TypingError(f"path for gap {k} has type ({label(u.src)},{label(u.tgt)}), "
                              f"gap expects {f.gap(k)}")
        parts += [u, f.segments[k + 1]]
    return concat_paths(parts)


def map_spliced(F: PathFunctor, f: SplicedArrow) -> SplicedArrow:
    return SplicedArrow(tuple(apply_functor(F, p) for p in f.segments))
