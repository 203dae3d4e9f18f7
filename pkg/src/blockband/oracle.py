"""Exact bandwidth by branch and bound over left-to-right placements."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from .graph import Graph, Layout, diameter, distances_from, is_connected, make_layout


@dataclass(frozen=True)
class SearchBudget:
    max_vertices: int = 24
    max_nodes: int = 10_000_000
    max_solutions: int = 10**12

    def __post_init__(self):
        if min(self.max_vertices, self.max_nodes, self.max_solutions) <= 0:
            raise ValueError("budget limits must be positive")


@dataclass(frozen=True)
class Infeasible:
    b: int

    def __bool__(self):
        return False


@dataclass(frozen=True)
class BudgetExhausted:
    nodes: int
    partial_count: int = 0

    def __bool__(self):
        return False


class _OutOfNodes(Exception):
    pass


class _Search:
    def __init__(self, g: Graph, b: int, budget: SearchBudget):
        if g.n > budget.max_vertices:
            raise ValueError(f"graph has {g.n} vertices; oracle limit is {budget.max_vertices}")
        if not is_connected(g):
            raise ValueError("oracle expects a connected graph")
        self.g = g
        self.n = g.n
        self.b = b
        self.budget = budget
        self.nodes = 0
        self.dist = [[int(d) for d in distances_from(g, v)] for v in g.vertices()]
        self.nbrs = [g.neighbors(v) for v in g.vertices()]
        self.pos = [-1] * self.n
        self.order: list[int] = []
        self.open = [g.degree(v) for v in g.vertices()]
        self.failed: set = set()

    def _key(self, i: int, mask: int):
        lo = max(0, i - self.b)
        return mask, tuple(v if self.open[v] else -1 for v in self.order[lo:i])

    def _deadlines_ok(self, i: int, deadline: list[float]) -> bool:
        pending = sorted(deadline[v] for v in range(self.n) if self.pos[v] < 0)
        return all(d >= i + j for j, d in enumerate(pending))

    def run(self, on_solution: Callable[[list[int]], bool]) -> None:
        """DFS; ``on_solution`` returns True to stop."""
        self.stop = False
        self._extend(0, 0, [math.inf] * self.n, on_solution)

    def _extend(self, i: int, mask: int, deadline: list[float], on_solution) -> int:
        if i == self.n:
            if on_solution(self.order):
                self.stop = True
            return 1
        self.nodes += 1
        if self.nodes > self.budget.max_nodes:
            raise _OutOfNodes
        key = self._key(i, mask)
        if key in self.failed:
            return 0
        b = self.b
        forced = None
        if i >= b:
            w = self.order[i - b]
            if self.open[w] > 1:
                self.failed.add(key)
                return 0
            if self.open[w] == 1:
                forced = next(u for u in self.nbrs[w] if self.pos[u] < 0)
        cands = [forced] if forced is not None else [v for v in range(self.n) if self.pos[v] < 0]
        found = 0
        for c in cands:
            if deadline[c] < i:
                continue
            self.pos[c] = i
            self.order.append(c)
            for u in self.nbrs[c]:
                self.open[u] -= 1
            dc = self.dist[c]
            nd = [min(deadline[v], i + dc[v] * b) for v in range(self.n)]
            if self._deadlines_ok(i + 1, nd):
                found += self._extend(i + 1, mask | (1 << c), nd, on_solution)
            for u in self.nbrs[c]:
                self.open[u] += 1
            self.order.pop()
            self.pos[c] = -1
            if self.stop:
                return found
        if not found:
            self.failed.add(key)
        return found


def decide_bandwidth(g: Graph, b: int, budget: SearchBudget | None = None):
    """A layout of bandwidth at most ``b``, or Infeasible, or BudgetExhausted."""
    budget = budget or SearchBudget()
    if g.n <= 1:
        return make_layout(range(g.n), g)
    if b < 1:
        return Infeasible(b)
    search = _Search(g, b, budget)
    result: list[list[int]] = []

    def keep(order):
        result.append(list(order))
        return True

    try:
        search.run(keep)
    except _OutOfNodes:
        return BudgetExhausted(search.nodes)
    if not result:
        return Infeasible(b)
    return Layout.from_order(result[0], g)


def density_floor(g: Graph) -> int:
    """max(ceil((n-1)/diam), max ceil(d/2)): the cheap part of the local density."""
    if g.n <= 1:
        return 0
    d = diameter(g)
    return max(-(-(g.n - 1) // d), max(-(-g.degree(v) // 2) for v in g.vertices()))


def exact_bandwidth(g: Graph, budget: SearchBudget | None = None):
    """Exact B(G) and a witness layout, or BudgetExhausted."""
    budget = budget or SearchBudget()
    b = density_floor(g)
    if g.n <= 1:
        return 0, make_layout(range(g.n), g)
    while True:
        res = decide_bandwidth(g, b, budget)
        if isinstance(res, BudgetExhausted):
            return res
        if res:
            return b, res
        b += 1


def enumerate_optimal(g: Graph, b: int, visitor: Callable[[Layout], object] | None = None,
                      budget: SearchBudget | None = None):
    """Visit every layout onto 0..n-1 with bandwidth at most ``b``, one per mirror pair.

    Returns the visit count, or BudgetExhausted carrying the partial count.
    A visitor returning True stops the enumeration early.
    """
    budget = budget or SearchBudget()
    search = _Search(g, b, budget)
    count = 0

    def visit(order):
        nonlocal count
        if order[0] > order[-1]:
            return False
        count += 1
        stop = visitor(Layout.from_order(order, g)) if visitor else False
        return bool(stop) or count >= budget.max_solutions

    try:
        search.run(visit)
    except _OutOfNodes:
        return BudgetExhausted(search.nodes, count)
    return count
