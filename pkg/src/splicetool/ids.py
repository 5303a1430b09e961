"""Identifier helpers.

Node, edge, color and species-node identifiers are opaque hashables: plain
strings when read from files, tuples of identifiers when a construction
builds them (pullback pairs, triples, tagged fresh names).  Everything that
needs a deterministic order sorts with :func:`sort_key`, and everything that
is written to disk goes through :func:`label`.
"""
from __future__ import annotations

from typing import Any, Hashable, Iterable, List

Id = Hashable


def sort_key(x: Any):
    if isinstance(x, str):
        return (0, x)
    if isinstance(x, bool):
        return (1, int(x))
    if isinstance(x, int):
        return (1, x)
    if isinstance(x, tuple):
        return (2, tuple(sort_key(y) for y in x))
    return (3, repr(x))


def sorted_ids(xs: Iterable[Any]) -> List[Any]:
    return sorted(xs, key=sort_key)


def label(x: Any) -> str:
    """Flat string form of an identifier.

    Top-level tuples are joined with ``|`` (so a pullback triple prints as
    ``q|R|q'``); nested tuples are parenthesised.  Types that define their own
    ``__str__`` on top of ``tuple`` (corners, oriented colors, brackets) keep it.
    """
    if isinstance(x, str):
        return x
    if isinstance(x, tuple) and type(x).__str__ is tuple.__str__:
        return "|".join(_nested(y) for y in x)
    return str(x)


def _nested(x: Any) -> str:
    if isinstance(x, tuple) and type(x).__str__ is tuple.__str__:
        return "(" + ",".join(_nested(y) for y in x) + ")"
    return label(x)


def fresh(base: str, used) -> str:
    name = base
    while name in used:
        name += "'"
    return name
