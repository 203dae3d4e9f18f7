import random

from hypothesis import strategies as st

from blockband.graph import Graph


def relabel(g, perm):
    return Graph.from_edges(g.n, [(perm[u], perm[v]) for u, v in g.edges()])


@st.composite
def block_caterpillars(draw, max_n=14, max_clique=6, max_leaves=5):
    """Chain of cliques with pendant leaves, ids shuffled."""
    sizes = draw(st.lists(st.integers(2, max_clique), min_size=1, max_size=5))
    edges, cliques, n, last = [], [], 0, None
    for size in sizes:
        size = min(size, max_n - n + (last is not None))
        if size < 2 and last is not None:
            break
        members = [] if last is None else [last]
        while len(members) < size:
            members.append(n)
            n += 1
        cliques.append(members)
        edges += [(a, b) for i, a in enumerate(members) for b in members[i + 1:]]
        last = members[-1]
        if n >= max_n:
            break
    core = sorted({v for q in cliques for v in q})
    for v in core:
        for _ in range(draw(st.integers(0, max_leaves))):
            if n >= max_n:
                break
            edges.append((v, n))
            n += 1
    g = Graph.from_edges(n, edges)
    perm = draw(st.permutations(list(range(n))))
    return relabel(g, perm)


def random_caterpillar_corpus(seed, count, max_n=14):
    from blockband.generators import random_block_caterpillar
    rng = random.Random(seed)
    return [random_block_caterpillar(rng, max_n=rng.randint(2, max_n), max_clique=rng.randint(2, 6),
                                     leaf_rate=rng.choice([0.5, 0.8, 0.95]))
            for _ in range(count)]
