"""Block decomposition and block-caterpillar recognition.

A block caterpillar is a block graph whose non-leaf vertices form a chain
of cliques Q_1, ..., Q_k where consecutive cliques share one vertex.
Recognition returns a :class:`CaterpillarStructure` describing that chain;
:func:`anchor_and_augment` then picks the distinguished vertices
v_0, ..., v_{k+2} used by the layout algorithm, adding pendant helper
vertices where the graph has no suitable ones.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field, replace

from .graph import Graph


@dataclass(frozen=True)
class BlockDecomposition:
    blocks: tuple[frozenset[int], ...]
    cutvertices: frozenset[int]
    # cutvertex -> indices of the blocks containing it
    block_adjacency: dict[int, tuple[int, ...]] = field(compare=False)


def block_decomposition(g: Graph) -> BlockDecomposition:
    """Biconnected components of a connected graph (bridges are 2-vertex blocks)."""
    n = g.n
    if n == 0:
        raise ValueError("block decomposition needs a connected graph")
    if n == 1:
        return BlockDecomposition((frozenset([0]),), frozenset(), {})
    disc = [-1] * n
    low = [0] * n
    blocks: list[frozenset[int]] = []
    vstack = [0]
    at = [0] * n  # index of each vertex in vstack
    counter = 1
    disc[0] = 0
    # iterative Tarjan with a vertex stack
    stack = [(0, -1, iter(g.neighbors(0)))]
    while stack:
        v, parent, it = stack[-1]
        for u in it:
            du = disc[u]
            if du == -1:
                disc[u] = low[u] = counter
                counter += 1
                at[u] = len(vstack)
                vstack.append(u)
                stack.append((u, v, iter(g.neighbors(u))))
                break
            if du < low[v]:
                low[v] = du
        else:
            stack.pop()
            if parent >= 0:
                if low[v] < low[parent]:
                    low[parent] = low[v]
                if low[v] >= disc[parent]:
                    cut = at[v]
                    blocks.append(frozenset(vstack[cut:] + [parent]))
                    del vstack[cut:]
    if counter < n:
        raise ValueError("block decomposition needs a connected graph")
    blocks.sort(key=lambda blk: sorted(blk))
    membership: dict[int, list[int]] = {}
    for i, blk in enumerate(blocks):
        for v in blk:
            membership.setdefault(v, []).append(i)
    adjacency = {v: tuple(ids) for v, ids in membership.items() if len(ids) > 1}
    return BlockDecomposition(tuple(blocks), frozenset(adjacency), adjacency)


def _block_is_clique(g: Graph, block: frozenset[int]) -> bool:
    size = len(block)
    return all(sum(1 for u in g.neighbors(v) if u in block) == size - 1 for v in block)


def is_block_graph(g: Graph) -> bool:
    """True iff every block of the connected graph ``g`` is a clique."""
    return all(_block_is_clique(g, blk) for blk in block_decomposition(g).blocks)


class RejectionReason(enum.Enum):
    DISCONNECTED = "Disconnected"
    NOT_BLOCK_GRAPH = "NotBlockGraph"
    SPINE_NOT_PATH = "SpineNotPath"


@dataclass(frozen=True)
class Rejection:
    reason: RejectionReason
    detail: str = ""

    def __bool__(self) -> bool:
        return False

    def __str__(self) -> str:
        return f"{self.reason.value}: {self.detail}" if self.detail else self.reason.value


class NotBlockCaterpillar(ValueError):
    def __init__(self, rejection: Rejection):
        super().__init__(str(rejection))
        self.rejection = rejection


@dataclass(frozen=True)
class CaterpillarStructure:
    """Chain-of-cliques description of a block caterpillar.

    ``spine_cliques`` holds Q_1..Q_k (empty for a star, where ``center`` is
    set instead). ``leaf_sets`` maps every non-leaf vertex to its pendant
    neighbours. ``anchors`` is v_0..v_{k+2} once :func:`anchor_and_augment`
    has run; ``helpers`` lists the pendant vertices it had to add.
    """

    n: int
    n_original: int
    spine_cliques: tuple[tuple[int, ...], ...]
    leaf_sets: dict[int, tuple[int, ...]] = field(compare=False)
    center: int | None = None
    anchors: tuple[int, ...] | None = None
    helpers: tuple[int, ...] = ()

    def __bool__(self) -> bool:
        return True

    @property
    def k(self) -> int:
        return len(self.spine_cliques)

    @property
    def cut_sequence(self) -> tuple[int, ...]:
        """Shared vertices v_2..v_k of consecutive spine cliques."""
        q = self.spine_cliques
        return tuple(next(iter(set(q[i - 1]) & set(q[i]))) for i in range(1, len(q)))

    def l(self, v: int) -> int:
        return len(self.leaf_sets.get(v, ()))

    def clique(self, i: int) -> tuple[int, ...]:
        """Q_i for 0 <= i <= k+1, with the synthetic 2-sets at both ends."""
        if self.anchors is None:
            raise ValueError("structure has no anchors yet")
        k = self.k
        if i == 0:
            return (self.anchors[0], self.anchors[1])
        if i == k + 1:
            return (self.anchors[k + 1], self.anchors[k + 2])
        return self.spine_cliques[i - 1]

    def describe(self) -> str:
        lines = [f"k={self.k}"]
        if self.center is not None:
            lines.append(f"center={self.center} leaves={self.l(self.center)}")
        for i, q in enumerate(self.spine_cliques, start=1):
            counts = " ".join(f"{v}:{self.l(v)}" for v in q)
            lines.append(f"Q{i}=[{' '.join(map(str, q))}] leaves {counts}")
        if self.anchors is not None:
            lines.append("anchors=" + " ".join(map(str, self.anchors)))
        if self.helpers:
            lines.append("helpers=" + " ".join(map(str, self.helpers)))
        return "\n".join(lines)


def _leaf_sets(g: Graph, core: list[int]) -> dict[int, tuple[int, ...]]:
    pendant = [g.degree(v) == 1 for v in g.vertices()]
    return {v: tuple(u for u in g.neighbors(v) if pendant[u]) for v in core}


def recognize_block_caterpillar(g: Graph) -> CaterpillarStructure | Rejection:
    """Recognize a block caterpillar; returns a structure or a falsy Rejection."""
    n = g.n
    try:
        decomposition = block_decomposition(g)
    except ValueError:
        return Rejection(RejectionReason.DISCONNECTED, "graph is empty or disconnected")
    if n <= 2:
        # K_1 and K_2 are treated as stars centred at vertex 0
        leaves = tuple(range(1, n))
        return CaterpillarStructure(n, n, (), {0: leaves}, center=0)
    # blocks partition the edges, so all are cliques iff the clique edge counts add up
    if sum(len(b) * (len(b) - 1) // 2 for b in decomposition.blocks) != g.edge_count:
        bad = next(b for b in decomposition.blocks if not _block_is_clique(g, b))
        return Rejection(RejectionReason.NOT_BLOCK_GRAPH, f"block {sorted(bad)[:6]} is not a clique")
    core = [v for v in g.vertices() if g.degree(v) > 1]
    leaf_sets = _leaf_sets(g, core)
    if len(core) == 1:
        return CaterpillarStructure(n, n, (), leaf_sets, center=core[0])
    # pendant edges are blocks of their own, so the core's blocks are the leaf-free blocks of g
    blocks = [tuple(sorted(blk)) for blk in decomposition.blocks if all(g.degree(v) > 1 for v in blk)]
    if len(blocks) == 1:
        return CaterpillarStructure(n, n, (blocks[0],), leaf_sets)
    membership: dict[int, list[int]] = {}
    for i, blk in enumerate(blocks):
        for v in blk:
            membership.setdefault(v, []).append(i)
    block_adjacency = {v: ids for v, ids in membership.items() if len(ids) > 1}
    for cut, ids in block_adjacency.items():
        if len(ids) != 2:
            return Rejection(RejectionReason.SPINE_NOT_PATH,
                             f"vertex {cut} lies in {len(ids)} core blocks")
    cuts_in_block = [[] for _ in blocks]
    for cut, ids in block_adjacency.items():
        for i in ids:
            cuts_in_block[i].append(cut)
    for i, cuts in enumerate(cuts_in_block):
        if len(cuts) > 2:
            return Rejection(RejectionReason.SPINE_NOT_PATH,
                             f"block {list(blocks[i])[:6]} meets {len(cuts)} cutvertices")
    ends = [i for i, cuts in enumerate(cuts_in_block) if len(cuts) == 1]
    # block-cut tree is a tree; with all degrees <= 2 it is a path with two ends
    start = min(ends, key=lambda i: blocks[i][0])
    order = [start]
    prev_cut = None
    while True:
        cur = order[-1]
        nxt_cut = [c for c in cuts_in_block[cur] if c != prev_cut]
        if not nxt_cut:
            break
        c = nxt_cut[0]
        nxt = [i for i in block_adjacency[c] if i != cur][0]
        order.append(nxt)
        prev_cut = c
    spine = tuple(blocks[i] for i in order)
    return CaterpillarStructure(n, n, spine, leaf_sets)


def _pick(candidates, exclude=()):
    pool = sorted(v for v in candidates if v not in exclude)
    return pool[0] if pool else None


def anchor_and_augment(s: CaterpillarStructure, g: Graph) -> tuple[Graph, CaterpillarStructure]:
    """Choose v_0..v_{k+2}, adding pendant helpers where needed.

    Helpers hang off vertices that are not cutvertices of the graph, which
    leaves the local density unchanged. Returns the (possibly) augmented
    graph and the anchored structure.
    """
    if s.anchors is not None:
        return g, s
    leaf_sets = {v: list(ls) for v, ls in s.leaf_sets.items()}
    new_parents: list[int] = []
    next_id = g.n

    def add_helper(parent: int) -> int:
        nonlocal next_id
        leaf = next_id
        next_id += 1
        new_parents.append(parent)
        leaf_sets[parent].append(leaf)
        return leaf

    k = s.k
    if k == 0:
        c = s.center
        while len(leaf_sets[c]) < 2:
            add_helper(c)
        ls = sorted(leaf_sets[c])
        anchors = (ls[0], c, ls[1])
    elif k == 1:
        q = s.spine_cliques[0]
        bearers = sorted(v for v in q if leaf_sets[v])
        for v in q:
            if len(bearers) >= 2:
                break
            if v not in bearers:
                add_helper(v)
                bearers = sorted(bearers + [v])
        v1, v2 = bearers[0], bearers[1]
        anchors = (min(leaf_sets[v1]), v1, v2, min(leaf_sets[v2]))
    else:
        cuts = s.cut_sequence
        q1, qk = s.spine_cliques[0], s.spine_cliques[-1]
        v1 = _pick([v for v in q1 if leaf_sets[v]], exclude=(cuts[0],))
        if v1 is None:
            v1 = _pick(q1, exclude=(cuts[0],))
            add_helper(v1)
        vk1 = _pick([v for v in qk if leaf_sets[v]], exclude=(cuts[-1],))
        if vk1 is None:
            vk1 = _pick(qk, exclude=(cuts[-1],))
            add_helper(vk1)
        anchors = (min(leaf_sets[v1]), v1) + cuts + (vk1, min(leaf_sets[vk1]))
    g2 = g.with_leaves(new_parents) if new_parents else g
    helpers = tuple(range(g.n, next_id))
    out = replace(
        s,
        n=g2.n,
        leaf_sets={v: tuple(sorted(ls)) for v, ls in leaf_sets.items()},
        anchors=anchors,
        helpers=s.helpers + helpers,
    )
    return g2, out
