"""Local density lower bound: exhaustive on small graphs, closed form on block caterpillars."""

from __future__ import annotations

from dataclasses import dataclass

from .graph import Graph, is_connected
from .recognition import CaterpillarStructure

DEFAULT_CAP = 16


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


class TooLargeError(ValueError):
    pass


def _eccentricities_within(adj: list[int], mask: int, limit: int) -> int | None:
    """Diameter of the subgraph induced by ``mask`` if it is connected and at most
    ``limit``; otherwise None."""
    full = mask
    diam = 0
    rest = mask
    while rest:
        low = rest & -rest
        rest ^= low
        seen = low
        frontier = low
        depth = 0
        while seen != full:
            if depth == limit:
                return None
            nxt = 0
            f = frontier
            while f:
                b = f & -f
                f ^= b
                nxt |= adj[b.bit_length() - 1]
            nxt &= full & ~seen
            if not nxt:
                return None
            seen |= nxt
            frontier = nxt
            depth += 1
        if depth > diam:
            diam = depth
    return diam


def local_density_bruteforce(g: Graph, cap: int = DEFAULT_CAP) -> int:
    """Exact local density by enumerating connected induced subgraphs.

    Refuses graphs with more than ``cap`` vertices.
    """
    n = g.n
    if n > cap:
        raise TooLargeError(f"graph has {n} vertices, brute force is capped at {cap}")
    if not is_connected(g):
        raise ValueError("local density is defined here for connected graphs")
    adj = [0] * n
    for v in range(n):
        for u in g.neighbors(v):
            adj[v] |= 1 << u
    best = 0
    for mask in range(1, 1 << n):
        size = mask.bit_count()
        if size < best + 2:
            continue
        # only a diameter below this can beat `best`
        limit = n if best == 0 else _ceil_div(size - 1, best) - 1
        if limit < 1:
            continue
        d = _eccentricities_within(adj, mask, limit)
        if d:
            val = _ceil_div(size - 1, d)
            if val > best:
                best = val
    return best


@dataclass(frozen=True)
class DensityReport:
    beta1: int
    beta2: int
    beta_prime: int
    witness: tuple[int, int]
    beta: int

    def line(self) -> str:
        h, i = self.witness
        return (f"beta={self.beta} beta1={self.beta1} beta2={self.beta2} "
                f"beta_prime={self.beta_prime} witness=({h},{i})")


def window_size(s: CaterpillarStructure, h: int, i: int) -> int:
    """Vertex count of G(h, i): cliques Q_{h-1}..Q_{i+1} plus leaves of Q_h..Q_i."""
    k = s.k
    a, b = max(h - 1, 0), min(i + 1, k + 1)
    clique_part = sum(len(s.clique(j)) for j in range(a, b + 1)) - (b - a)
    skip = {s.anchors[0], s.anchors[-1]}
    members = set()
    for j in range(h, i + 1):
        members.update(s.clique(j))
    leaves = sum(1 for v in members for u in s.leaf_sets.get(v, ()) if u not in skip)
    return clique_part + leaves


def local_density_structured(s: CaterpillarStructure, g: Graph) -> DensityReport:
    """Local density of an anchored block caterpillar in O(n + k^2)."""
    if s.anchors is None:
        raise ValueError("structure must be anchored first")
    if s.n != g.n:
        raise ValueError(f"structure describes {s.n} vertices but graph has {g.n}")
    k = s.k
    skip = {s.anchors[0], s.anchors[-1]}
    sizes = [len(s.clique(j)) for j in range(k + 2)]
    beta1 = max(sizes) - 1
    beta2 = max((_ceil_div(g.degree(v), 2) for v in g.vertices()), default=0)

    def lcount(v: int) -> int:
        return sum(1 for u in s.leaf_sets.get(v, ()) if u not in skip)

    # prefix sums over clique sizes and per-clique leaf counts; the shared
    # vertex v_{j+1} of Q_j and Q_{j+1} is subtracted once per adjacent pair
    csum = [0]
    for z in sizes:
        csum.append(csum[-1] + z)
    lsum = [0]
    for j in range(k + 2):
        lsum.append(lsum[-1] + sum(lcount(v) for v in s.clique(j)))
    shared = [0]
    for j in range(k + 1):
        shared.append(shared[-1] + lcount(s.anchors[j + 1]))

    best, witness = -1, (0, 0)
    for h in range(k + 2):
        for i in range(h, k + 2):
            a, b = max(h - 1, 0), min(i + 1, k + 1)
            count = csum[b + 1] - csum[a] - (b - a)
            count += lsum[i + 1] - lsum[h] - (shared[i] - shared[h])
            val = _ceil_div(count - 1, i - h + 3)
            if val > best:
                best, witness = val, (h, i)
    beta = max(beta1, beta2, best)
    return DensityReport(beta1, beta2, best, witness, beta)
