"""Random and named block caterpillars for tests and demos."""

from __future__ import annotations

import random

from .graph import Graph


def clique_chain(sizes, leaves=None) -> Graph:
    """Cliques of the given sizes glued in a chain, consecutive ones sharing a vertex.

    ``leaves`` maps (clique index, vertex index within the clique) to a pendant count.
    """
    edges = []
    cliques = []
    nxt = 0
    prev_last = None
    for size in sizes:
        members = [] if prev_last is None else [prev_last]
        while len(members) < size:
            members.append(nxt)
            nxt += 1
        cliques.append(members)
        edges += [(a, b) for i, a in enumerate(members) for b in members[i + 1:]]
        prev_last = members[-1]
    for (ci, vi), count in (leaves or {}).items():
        for _ in range(count):
            edges.append((cliques[ci][vi], nxt))
            nxt += 1
    return Graph.from_edges(nxt, edges)


def random_block_caterpillar(rng: random.Random, max_n: int = 14, max_clique: int = 5,
                             leaf_rate: float = 0.5, shuffle: bool = True) -> Graph:
    """A random block caterpillar with at most ``max_n`` vertices."""
    n = 0
    edges = []
    spine: list[list[int]] = []
    target = rng.randint(1, max(1, max_n))
    size = rng.randint(1, max_clique)
    first = list(range(size))
    n = size
    spine.append(first)
    edges += [(a, b) for i, a in enumerate(first) for b in first[i + 1:]]
    while n < target and rng.random() < 0.6:
        size = rng.randint(2, max_clique)
        if n + size - 1 > max_n:
            break
        shared = spine[-1][-1]
        members = [shared] + list(range(n, n + size - 1))
        n += size - 1
        spine.append(members)
        edges += [(a, b) for i, a in enumerate(members) for b in members[i + 1:]]
    core = [v for q in spine for v in q]
    core = sorted(set(core))
    while n < max_n and rng.random() < leaf_rate:
        edges.append((rng.choice(core), n))
        n += 1
    if shuffle:
        perm = list(range(n))
        rng.shuffle(perm)
        edges = [(perm[a], perm[b]) for a, b in edges]
    return Graph.from_edges(n, edges)


def random_spine_caterpillar(rng: random.Random, max_n: int = 300, max_clique: int = 12,
                             max_leaves: int = 12, shuffle: bool = True) -> Graph:
    """Larger block caterpillars: a random clique chain, then per-vertex leaf counts.

    Spine length, clique sizes and leaf counts are drawn so that ``max_n`` is
    never exceeded; every spine vertex gets at most ``max_leaves`` leaves.
    """
    target = rng.randint(2, max_n)
    sizes = [rng.randint(2, max_clique)]
    n = sizes[0]
    while True:
        size = rng.randint(2, max_clique)
        if n + size - 1 > target:
            break
        sizes.append(size)
        n += size - 1
    density = rng.random()
    leaves = {}
    for c, size in enumerate(sizes):
        for v in range(1 if c else 0, size):  # index 0 of a later clique is the shared cutvertex
            if n >= max_n:
                break
            if rng.random() < density:
                count = min(rng.randint(0, max_leaves), max_n - n)
                if count:
                    leaves[(c, v)] = count
                    n += count
    g = clique_chain(sizes, leaves)
    if not shuffle:
        return g
    perm = list(range(g.n))
    rng.shuffle(perm)
    return Graph.from_edges(g.n, [(perm[a], perm[b]) for a, b in g.edges()])


def star(leaves: int) -> Graph:
    return Graph.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def complete(n: int) -> Graph:
    return Graph.from_edges(n, [(a, b) for a in range(n) for b in range(a + 1, n)])


def path(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])
