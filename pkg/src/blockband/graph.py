"""Simple undirected graphs on dense integer ids, layouts, and text I/O."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

INF = float("inf")


class GraphFormatError(ValueError):
    """Raised when a graph or layout file cannot be parsed."""


class LayoutError(ValueError):
    """Raised when a layout is not an injection over the vertex set."""


class Graph:
    """Immutable simple graph on vertices ``0 .. n-1``.

    Adjacency lists are sorted tuples. Build one with :meth:`from_edges`.
    """

    __slots__ = ("_adj", "_m")

    def __init__(self, adjacency: Iterable[Iterable[int]]):
        adj = tuple(tuple(sorted(set(nbrs))) for nbrs in adjacency)
        n = len(adj)
        m = 0
        for v, nbrs in enumerate(adj):
            for u in nbrs:
                if u == v:
                    raise ValueError(f"self-loop at vertex {v}")
                if not 0 <= u < n:
                    raise ValueError(f"neighbor {u} of {v} out of range")
                if v not in adj[u]:
                    raise ValueError(f"asymmetric adjacency between {v} and {u}")
            m += len(nbrs)
        self._adj = adj
        self._m = m // 2

    @classmethod
    def _symmetric(cls, nbrs) -> "Graph":
        # caller guarantees a loop-free, symmetric, in-range adjacency
        g = cls.__new__(cls)
        g._adj = tuple(tuple(sorted(x)) for x in nbrs)
        g._m = sum(map(len, g._adj)) // 2
        return g

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        nbrs: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range")
            nbrs[u].add(v)
            nbrs[v].add(u)
        return cls._symmetric(nbrs)

    @property
    def n(self) -> int:
        return len(self._adj)

    @property
    def edge_count(self) -> int:
        return self._m

    def __len__(self) -> int:
        return len(self._adj)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def vertices(self) -> range:
        return range(len(self._adj))

    def edges(self) -> list[tuple[int, int]]:
        """Edges as ``(u, v)`` with ``u < v``, lexicographically sorted."""
        return [(u, v) for u, nbrs in enumerate(self._adj) for v in nbrs if u < v]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._adj[u]

    def with_leaves(self, parents: Iterable[int]) -> "Graph":
        """Return a new graph with one fresh pendant vertex per entry of ``parents``."""
        adj = [list(nbrs) for nbrs in self._adj]
        for parent in parents:
            leaf = len(adj)
            adj.append([parent])
            adj[parent].append(leaf)
        return Graph._symmetric(adj)

    def induced(self, keep: Iterable[int]) -> tuple["Graph", list[int]]:
        """Induced subgraph on ``keep``; returns it with the new-id -> old-id map."""
        old = sorted(set(keep))
        new_id = {v: i for i, v in enumerate(old)}
        adj = [[new_id[u] for u in self._adj[v] if u in new_id] for v in old]
        return Graph._symmetric(adj), old

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._adj == other._adj

    def __hash__(self) -> int:
        return hash(self._adj)

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.edge_count})"


def distances_from(g: Graph, source: int) -> list[float]:
    """BFS hop distances from ``source``; unreachable vertices get ``inf``."""
    if not 0 <= source < g.n:
        raise ValueError(f"vertex {source} out of range")
    dist: list[float] = [INF] * g.n
    dist[source] = 0
    queue = deque([source])
    while queue:
        v = queue.popleft()
        dv = dist[v] + 1
        for u in g.neighbors(v):
            if dist[u] == INF:
                dist[u] = dv
                queue.append(u)
    return dist


def is_connected(g: Graph) -> bool:
    if g.n == 0:
        return True
    return INF not in distances_from(g, 0)


def diameter(g: Graph) -> int:
    """Largest hop distance over all vertex pairs.

    Raises ValueError on a disconnected graph.
    """
    best = 0
    for v in g.vertices():
        dist = distances_from(g, v)
        far = max(dist)
        if far == INF:
            raise ValueError("diameter is undefined for a disconnected graph")
        best = max(best, int(far))
    return best


@dataclass(frozen=True)
class Layout:
    """Injective vertex -> integer position map.

    Positions need not be consecutive. ``bandwidth`` is filled in by
    :func:`make_layout` / :func:`verify_layout` against a specific graph.
    """

    position: tuple[int, ...]
    bandwidth: int = field(default=-1, compare=False)

    def __post_init__(self):
        if len(set(self.position)) != len(self.position):
            raise LayoutError("positions are not pairwise distinct")

    def __len__(self) -> int:
        return len(self.position)

    def __getitem__(self, v: int) -> int:
        return self.position[v]

    def order(self) -> list[int]:
        """Vertices sorted by position."""
        return sorted(range(len(self.position)), key=self.position.__getitem__)

    @classmethod
    def from_order(cls, order: Iterable[int], g: Graph | None = None) -> "Layout":
        order = list(order)
        pos = [0] * len(order)
        for i, v in enumerate(order):
            pos[v] = i
        return make_layout(pos, g)

    @classmethod
    def from_mapping(cls, mapping: Mapping[int, int], n: int, g: Graph | None = None) -> "Layout":
        missing = [v for v in range(n) if v not in mapping]
        if missing:
            raise LayoutError(f"layout is missing vertices {missing[:5]}")
        return make_layout([mapping[v] for v in range(n)], g)


def edge_stretch(g: Graph, position: Sequence[int]) -> int:
    best = 0
    for u, v in g.edges():
        d = abs(position[u] - position[v])
        if d > best:
            best = d
    return best


def make_layout(position: Iterable[int], g: Graph | None = None) -> Layout:
    pos = tuple(position)
    bw = edge_stretch(g, pos) if g is not None else -1
    return Layout(pos, bw)


def verify_layout(g: Graph, f: Layout) -> int:
    """Return B(f), the largest position difference over the edges of ``g``."""
    if len(f.position) != g.n:
        raise LayoutError(f"layout covers {len(f.position)} vertices, graph has {g.n}")
    if len(set(f.position)) != g.n:
        raise LayoutError("positions are not pairwise distinct")
    return edge_stretch(g, f.position)


def condense(f: Layout, g: Graph | None = None) -> Layout:
    """Squash positions order-preservingly onto ``0 .. n-1``."""
    rank = {p: i for i, p in enumerate(sorted(f.position))}
    return make_layout((rank[p] for p in f.position), g)


# -- text I/O ---------------------------------------------------------------

def _data_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line


def parse_graph(text: str) -> Graph:
    """Parse the edge-list format: vertex count, then one ``u v`` pair per line."""
    lines = _data_lines(text)
    try:
        lineno, first = next(lines)
    except StopIteration:
        raise GraphFormatError("empty graph file: missing vertex count") from None
    try:
        n = int(first)
    except ValueError:
        raise GraphFormatError(f"line {lineno}: expected vertex count, got {first!r}") from None
    if n < 0:
        raise GraphFormatError(f"line {lineno}: negative vertex count")
    edges = []
    for lineno, line in lines:
        parts = line.split()
        if len(parts) != 2:
            raise GraphFormatError(f"line {lineno}: expected 'u v', got {line!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphFormatError(f"line {lineno}: non-integer vertex in {line!r}") from None
        if not (0 <= u < n and 0 <= v < n):
            raise GraphFormatError(f"line {lineno}: vertex id out of range 0..{n - 1}")
        if u == v:
            raise GraphFormatError(f"line {lineno}: self-loop at {u}")
        edges.append((u, v))
    return Graph.from_edges(n, edges)


def serialize_graph(g: Graph) -> str:
    out = [str(g.n)]
    out.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(out) + "\n"


def parse_layout(text: str, n: int | None = None) -> Layout:
    mapping: dict[int, int] = {}
    for lineno, line in _data_lines(text):
        parts = line.split()
        if len(parts) != 2:
            raise GraphFormatError(f"line {lineno}: expected 'vertex position', got {line!r}")
        try:
            v, p = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphFormatError(f"line {lineno}: non-integer entry in {line!r}") from None
        if v in mapping:
            raise GraphFormatError(f"line {lineno}: vertex {v} listed twice")
        mapping[v] = p
    if n is None:
        n = max(mapping, default=-1) + 1
    return Layout.from_mapping(mapping, n)


def serialize_layout(f: Layout) -> str:
    return "".join(f"{v} {p}\n" for v, p in enumerate(f.position))
