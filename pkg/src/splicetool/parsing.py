"""Chart parsing for grammars over free categories.

:func:`recognize` computes, for a path ``w`` of length ``n``, the least
family of sets ``N[i, j]`` such that ``R`` is in ``N[i, j]`` whenever some
rule ``R -> w0 R1 w1 ... Rk wk`` matches ``w[i:j]`` with each ``Rm``
spanning a cell already known to contain it.  Segments match literally.
Spans are filled shortest first; inside one span the rules are iterated to
a fixpoint, which takes care of unit rules and nullable colors.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Dict, Hashable, Iterator, List, Optional, Set, Tuple

from .grammar import Cfg
from .graph import PathArrow
from .ids import label
from .species import Node, OpTree, SNode, height

Id = Hashable
Span = Tuple[int, int]
Item = Tuple[Id, int, int]


@dataclass(frozen=True)
class Chart:
    word: PathArrow
    cells: Dict[Span, frozenset]
    start: Id

    @property
    def n(self) -> int:
        return len(self.word)

    def __getitem__(self, span: Span) -> frozenset:
        return self.cells.get(span, frozenset())

    @property
    def accepts(self) -> bool:
        return self.start in self[0, self.n]


@dataclass(frozen=True)
class AmbiguityCount:
    """Number of parse trees: a natural number, or ``None`` for infinitely many."""
    count: Optional[int]

    @classmethod
    def finite(cls, c: int) -> "AmbiguityCount":
        return cls(c)

    @classmethod
    def infinite(cls) -> "AmbiguityCount":
        return cls(None)

    @property
    def is_infinite(self) -> bool:
        return self.count is None

    def __str__(self) -> str:
        return "Infinite" if self.count is None else f"Finite({self.count})"


INFINITE = AmbiguityCount.infinite()


class _Matcher:
    """Literal segment matching against one word."""

    def __init__(self, g: Cfg, w: PathArrow):
        g.base.check_path(w)
        self.g = g
        self.w = w
        self.edges = w.edges
        self.nodes = g.base.boundary_nodes(w)
        self.n = len(w.edges)
        self.rules = [(x, tuple(f.segments)) for x, f in g.rules()]
        self.by_output: Dict[Id, List[Tuple[SNode, tuple]]] = {}
        for x, segs in self.rules:
            self.by_output.setdefault(x.output, []).append((x, segs))

    def seg_matches(self, seg: PathArrow, pos: int) -> int:
        """End position when ``seg`` matches at ``pos``, else -1."""
        end = pos + len(seg.edges)
        if end > self.n or self.nodes[pos] != seg.src or self.nodes[end] != seg.tgt:
            return -1
        if self.edges[pos:end] != seg.edges:
            return -1
        return end

    def splits(self, x: SNode, segs, i: int, j: int,
               has: Callable[[Id, int, int], bool]) -> Iterator[Tuple[Span, ...]]:
        """Child spans for ``x`` covering ``w[i:j]``, leftmost split first."""
        n = x.arity
        tail = [0] * (n + 2)
        for k in range(n, -1, -1):
            tail[k] = tail[k + 1] + len(segs[k].edges)

        def rec(k: int, pos: int):
            end = self.seg_matches(segs[k], pos)
            if end < 0:
                return
            if k == n:
                if end == j:
                    yield ()
                return
            c = x.inputs[k]
            for b in range(end, j - tail[k + 1] + 1):
                if has(c, end, b):
                    for rest in rec(k + 1, b):
                        yield ((end, b),) + rest

        yield from rec(0, i)


def recognize(g: Cfg, w: PathArrow) -> Chart:
    m = _Matcher(g, w)
    n = m.n
    cells: Dict[Span, Set[Id]] = {}

    def has(c: Id, a: int, b: int) -> bool:
        cell = cells.get((a, b))
        return cell is not None and c in cell

    for length in range(n + 1):
        for i in range(n - length + 1):
            j = i + length
            cell: Set[Id] = set()
            cells[(i, j)] = cell
            gap = (m.nodes[i], m.nodes[j])
            candidates = [(x, segs) for x, segs in m.rules
                          if tuple(g.color_assign[x.output]) == gap]
            changed = True
            while changed:
                changed = False
                for x, segs in candidates:
                    if x.output in cell:
                        continue
                    if next(m.splits(x, segs, i, j, has), None) is not None:
                        cell.add(x.output)
                        changed = True
    return Chart(w, {k: frozenset(v) for k, v in cells.items() if v}, g.start)


def _derivations(m: _Matcher, chart: Chart, item: Item) -> Iterator[Tuple[SNode, Tuple[Item, ...]]]:
    c, i, j = item

    def has(col, a, b):
        return col in chart[a, b]

    for x, segs in m.by_output.get(c, ()):
        for spans in m.splits(x, segs, i, j, has):
            yield x, tuple((x.inputs[k], a, b) for k, (a, b) in enumerate(spans))


def _item_graph(m: _Matcher, chart: Chart, root: Item):
    """Derivation steps of every item reachable from ``root``."""
    steps: Dict[Item, List[Tuple[SNode, Tuple[Item, ...]]]] = {}
    todo = [root]
    while todo:
        it = todo.pop()
        if it in steps:
            continue
        steps[it] = list(_derivations(m, chart, it))
        for _, kids in steps[it]:
            todo.extend(k for k in kids if k not in steps)
    return steps


def parse_count(g: Cfg, w: PathArrow, chart: Optional[Chart] = None) -> AmbiguityCount:
    """Exact number of parse trees of ``w``, or Infinite when a derivable cycle exists."""
    chart = chart or recognize(g, w)
    if not chart.accepts:
        return AmbiguityCount.finite(0)
    m = _Matcher(g, w)
    root = (g.start, 0, chart.n)
    steps = _item_graph(m, chart, root)
    if _has_cycle(steps, root):
        return INFINITE
    memo: Dict[Item, int] = {}

    def count(it: Item) -> int:
        if it not in memo:
            total = 0
            for _, kids in steps[it]:
                prod = 1
                for k in kids:
                    prod *= count(k)
                total += prod
            memo[it] = total
        return memo[it]

    return AmbiguityCount.finite(count(root))


def _has_cycle(steps, root: Item) -> bool:
    WHITE, GRAY, BLACK = 0, 1, 2
    color: Dict[Item, int] = {}
    stack = [(root, iter([k for _, kids in steps[root] for k in kids]))]
    color[root] = GRAY
    while stack:
        it, children = stack[-1]
        nxt = next(children, None)
        if nxt is None:
            color[it] = BLACK
            stack.pop()
            continue
        c = color.get(nxt, WHITE)
        if c == GRAY:
            return True
        if c == WHITE:
            color[nxt] = GRAY
            stack.append((nxt, iter([k for _, kids in steps[nxt] for k in kids])))
    return False


@dataclass(frozen=True)
class ParseResult:
    trees: List[OpTree]
    count: AmbiguityCount

    @property
    def truncated(self) -> bool:
        return self.count.is_infinite or self.count.count > len(self.trees)


def parse_trees(g: Cfg, w: PathArrow, max_trees: int = 100) -> ParseResult:
    """Closed derivations of ``w`` from the start color.

    With finitely many trees, all of them come back when there are at most
    ``max_trees``.  With infinitely many (unit or nullable cycles) the result
    holds ``max_trees`` distinct trees, lowest height first, and is flagged
    truncated.
    """
    chart = recognize(g, w)
    cnt = parse_count(g, w, chart)
    if not chart.accepts or max_trees <= 0:
        return ParseResult([], cnt)
    m = _Matcher(g, w)
    root = (g.start, 0, chart.n)
    steps = _item_graph(m, chart, root)
    if not cnt.is_infinite:
        out: List[OpTree] = []
        for t in _all_trees(steps, root):
            out.append(t)
            if len(out) >= max_trees:
                break
        return ParseResult(out, cnt)
    return ParseResult(_trees_by_height(steps, root, max_trees), cnt)


def _all_trees(steps, it: Item) -> Iterator[OpTree]:
    for x, kids in steps[it]:
        yield from _product(steps, x, kids, 0, ())


def _product(steps, x: SNode, kids, k: int, acc) -> Iterator[OpTree]:
    if k == len(kids):
        yield Node(x.id, acc)
        return
    for t in _all_trees(steps, kids[k]):
        yield from _product(steps, x, kids, k + 1, acc + (t,))


def _trees_by_height(steps, root: Item, max_trees: int) -> List[OpTree]:
    # level[h][item] = trees of height <= h, capped, lowest height first
    prev: Dict[Item, List[OpTree]] = {it: [] for it in steps}
    found: List[OpTree] = []
    seen: Set[OpTree] = set()
    h = 0
    while len(found) < max_trees:
        h += 1
        cur: Dict[Item, List[OpTree]] = {}
        for it, derivs in steps.items():
            acc = list(prev[it])
            have = set(acc)
            for x, kids in derivs:
                for t in _combos(prev, x, kids):
                    if t not in have:
                        have.add(t)
                        acc.append(t)
                        if len(acc) >= max_trees * 4:
                            break
                if len(acc) >= max_trees * 4:
                    break
            acc.sort(key=height)
            cur[it] = acc[:max_trees * 4]
        prev = cur
        for t in prev[root]:
            if t not in seen:
                seen.add(t)
                found.append(t)
                if len(found) >= max_trees:
                    break
    return found


def _combos(prev, x: SNode, kids) -> Iterator[OpTree]:
    def rec(k: int, acc):
        if k == len(kids):
            yield Node(x.id, acc)
            return
        for t in prev[kids[k]]:
            yield from rec(k + 1, acc + (t,))

    yield from rec(0, ())


def min_derivation_cost(g: Cfg, w: PathArrow,
                        cost: Callable[[SNode], int] = lambda x: x.arity + 1) -> Optional[int]:
    """Least total node cost over parse trees of ``w``; ``None`` if ``w`` is not derivable.

    The default cost is the contour length of a tree (arity + 1 per node).
    """
    chart = recognize(g, w)
    if not chart.accepts:
        return None
    m = _Matcher(g, w)
    root = (g.start, 0, chart.n)
    steps = _item_graph(m, chart, root)
    best: Dict[Item, float] = {it: float("inf") for it in steps}
    changed = True
    while changed:
        changed = False
        for it, derivs in steps.items():
            for x, kids in derivs:
                c = cost(x) + sum(best[k] for k in kids)
                if c < best[it]:
                    best[it] = c
                    changed = True
    return int(best[root])


def format_chart(chart: Chart) -> str:
    lines = []
    for (i, j), cs in sorted(chart.cells.items()):
        lines.append(f"N[{i},{j}] = {{{', '.join(sorted(label(c) for c in cs))}}}")
    return "\n".join(lines)
