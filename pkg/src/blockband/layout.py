"""Optimal layouts of block caterpillars.

The construction works window by window. Anchor v_i is pinned at i*m and
phase i lays out the clique Q_i inside [(i-1)m, (i+2)m], treating
everything hanging off Q_i as leaves of a small clique-star. Vertices placed
by earlier phases that the current clique-star does not own stay where they
are. The free slots around them are filled in a fixed order.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .density import local_density_structured
from .graph import Graph, Layout, condense, make_layout
from .recognition import (CaterpillarStructure, NotBlockCaterpillar, anchor_and_augment,
                          recognize_block_caterpillar)

SMALL_LEAF_MASS = "SmallLeafMass"
MEDIUM_MASS = "MediumMass"
STRADDLE = "Straddle"


class DensityTooLarge(ValueError):
    """The requested width m is below the local density."""


class LayoutInternalError(AssertionError):
    """A step of the construction broke one of its own guarantees."""


def _leaf_parents(g: Graph) -> dict[int, int]:
    """Map each leaf to its parent, skipping isolated edges."""
    out = {}
    for v in g.vertices():
        if g.degree(v) == 1:
            p = g.neighbors(v)[0]
            if g.degree(p) > 1:
                out[v] = p
    return out


def repair_faithful(g: Graph, f: Layout) -> Layout:
    """Reorder leaves so that leaf order follows parent order.

    Non-leaf positions and the set of leaf positions are unchanged, and the
    bandwidth does not grow.
    """
    parent = _leaf_parents(g)
    leaves = sorted(parent, key=lambda u: (f[parent[u]], f[u]))
    slots = sorted(f[u] for u in leaves)
    pos = list(f.position)
    for u, p in zip(leaves, slots):
        pos[u] = p
    return make_layout(pos, g)


def is_faithful(g: Graph, position) -> bool:
    parent = _leaf_parents(g)
    leaves = sorted(parent, key=lambda u: position[u])
    parent_pos = [position[parent[u]] for u in leaves]
    return all(a <= b for a, b in zip(parent_pos, parent_pos[1:]))


@dataclass
class CliqueStarPlan:
    """Bookkeeping for one phase. Counts are in window-local terms.

    ``cap_low`` is the number of slots below the clique-star's centre that
    can hold its leaves. ``carried`` counts leaves of the previous clique
    already sitting just above the centre.
    """

    phase: int
    X: tuple[int, ...]
    Q_prime: tuple[int, ...]
    X_prime: tuple[int, ...]
    l_prime: int
    N: int
    q: int
    cap_low: int
    carried: int
    r: int = -1
    p: int = 0
    p_prime: int = 0
    s: int = 0
    case_tag: str = SMALL_LEAF_MASS


@dataclass
class JustifiedLayout:
    layout: Layout
    m: int
    structure: CaterpillarStructure
    plans: list[CliqueStarPlan] = field(default_factory=list)
    leaf_edge_violations: int = 0

    @property
    def anchor_positions(self) -> tuple[int, ...]:
        return tuple(self.layout[v] for v in self.structure.anchors)

    @property
    def intervals(self) -> list[int]:
        """Number of filled slots in each J_i = {im+1, ..., (i+1)m-1}."""
        m = self.m
        used = set(self.layout.position)
        return [sum(1 for p in range(i * m + 1, (i + 1) * m) if p in used)
                for i in range(self.structure.k + 2)]


class _Board:
    def __init__(self, n: int):
        self.pos: list[int | None] = [None] * n
        self.occ: dict[int, int] = {}

    def put(self, v: int, p: int) -> None:
        if p in self.occ:
            raise LayoutInternalError(f"slot {p} already holds vertex {self.occ[p]}")
        if self.pos[v] is not None:
            raise LayoutInternalError(f"vertex {v} placed twice")
        self.pos[v] = p
        self.occ[p] = v

    def lift(self, v: int) -> None:
        p = self.pos[v]
        if p is not None:
            del self.occ[p]
            self.pos[v] = None

    def free(self, lo: int, hi: int) -> list[int]:
        return [p for p in range(lo, hi) if p not in self.occ]


def _check_edges(g: Graph, board: _Board, vertices, m: int) -> int:
    bad = 0
    for v in vertices:
        pv = board.pos[v]
        for u in g.neighbors(v):
            pu = board.pos[u]
            if pv is None or pu is None or abs(pv - pu) > m:
                bad += 1
    return bad


def _require_density(s: CaterpillarStructure, g: Graph, m: int) -> None:
    beta = local_density_structured(s, g).beta
    if beta > m:
        raise DensityTooLarge(f"local density {beta} exceeds m={m}")


def _star(s: CaterpillarStructure, g: Graph, m: int) -> JustifiedLayout:
    v0, c, v2 = s.anchors
    board = _Board(g.n)
    board.put(v0, 0)
    board.put(c, m)
    board.put(v2, 2 * m)
    rest = [u for u in s.leaf_sets[c] if u not in (v0, v2)]
    slots = list(range(1, m)) + list(range(m + 1, 2 * m))
    if len(rest) > len(slots):
        raise DensityTooLarge(f"star centre of degree {g.degree(c)} needs m >= {-(-g.degree(c) // 2)}")
    for u, p in zip(rest, slots):
        board.put(u, p)
    return JustifiedLayout(make_layout(board.pos, g), m, s)


def _phase(i: int, s: CaterpillarStructure, g: Graph, m: int, board: _Board) -> CliqueStarPlan:
    a = s.anchors
    o = (i - 1) * m
    anchor_set = {a[0], a[-1]}
    vi, vnext, vnext2 = a[i], a[i + 1], a[i + 2]
    Q = s.clique(i)
    Qprev = s.clique(i - 1)

    def own_leaves(v):
        return [u for u in s.leaf_sets.get(v, ()) if u not in anchor_set]

    # T moves; everything else placed so far is frozen
    for u in own_leaves(vi):
        board.lift(u)
    for u in Q:
        if u not in (vi, vnext):
            board.lift(u)

    prev_rest = [u for u in Qprev if u != vi]
    prev_leaves = [u for v in prev_rest for u in own_leaves(v)]
    carried = sorted((u for u in prev_leaves if board.pos[u] is not None and board.pos[u] > o + m),
                     key=lambda u: board.pos[u])
    S = prev_rest + carried
    s_below = sum(1 for u in S if board.pos[u] < o + m)
    s_b = len(carried)

    inner = sorted(v for v in Q if v not in (vi, vnext) and own_leaves(v))
    X = [vi] + inner + [vnext]
    QmX = sorted(v for v in Q if v not in X)
    t = len(X) - 1
    leaf_lists = [sorted(own_leaves(x)) for x in X[:-1]]
    lam = [u for ls in leaf_lists for u in ls]
    Lt = sorted(set(own_leaves(vnext)) | (set(s.clique(i + 1)) - {vnext})) if i < s.k else own_leaves(vnext)
    Lt = sorted(u for u in Lt if u != vnext2)
    counts = [len(S) + len(leaf_lists[0])] + [len(ls) for ls in leaf_lists[1:]]
    l_prime = sum(counts)
    q0 = len(QmX)

    nG = len(S) + len(lam) + len(Q) + len(Lt) + 1
    deg0 = len(S) + len(leaf_lists[0]) + len(Q) - 1
    if deg0 > 2 * m or nG > 3 * m + 1:
        raise LayoutInternalError(
            f"phase {i}: auxiliary clique-star too dense (degree {deg0}, order {nG}, m={m})")

    F0 = board.free(o + 1, o + m)
    F1 = board.free(o + m + 1, o + 2 * m)
    F2 = board.free(o + 2 * m + 1, o + 3 * m)
    cap0 = s_below + len(F0)
    plan = CliqueStarPlan(i, tuple(X), tuple(v for v in Q if v != vnext), tuple(X[:-1]),
                          l_prime, nG - 1, len(Q) - 1, cap0, s_b)

    if s_b + len(lam) <= len(F0):
        plan.case_tag = SMALL_LEAF_MASS
        for u, p in zip(lam, F0):
            board.put(u, p)
        seq = X[1:t] + QmX + Lt
        _fill(board, seq, F1 + F2, i)
        return plan

    for u, p in zip(lam, F0):
        board.put(u, p)
    rest = lam[len(F0):]
    target = cap0 + s_b
    cum, r = 0, -1
    for j, c in enumerate(counts):
        if cum + c >= target:
            r = j
            break
        cum += c
    if r < 0:
        raise LayoutInternalError(f"phase {i}: no split index")
    p = cum
    lr = counts[r]
    K1 = len(F1)
    gap = K1 - (r + q0) - (t - r - 1)
    plan.r, plan.p = r, p
    plan.p_prime = l_prime - p - lr + len(Lt) + 1
    plan.s = gap
    if p + lr <= target + gap:
        plan.case_tag = MEDIUM_MASS
        seq = X[1:r + 1] + QmX + rest[:gap] + X[r + 1:t] + rest[gap:] + Lt
        _fill(board, seq, F1 + F2, i)
        return plan

    plan.case_tag = STRADDLE
    if r == 0 or s_b:
        raise LayoutInternalError(f"phase {i}: straddle with r={r}, carried={s_b}")
    low = F1[:r - 1]
    top = F1[len(F1) - (t - r - 1):] if t - r - 1 else []
    middle = F1[r - 1:len(F1) - (t - r - 1)]
    ml = len(middle) - 1 - q0
    for v, slot in zip(X[1:r], low):
        board.put(v, slot)
    for v, slot in zip(X[r + 1:t], top):
        board.put(v, slot)
    tail = rest[ml:] + Lt
    if len(tail) > len(F2):
        raise LayoutInternalError(f"phase {i}: {len(tail)} vertices for {len(F2)} upper slots")
    for v, slot in zip(tail, F2):
        board.put(v, slot)
    xr = X[r]
    leaves_r = leaf_lists[r]
    lo_leaf = board.pos[leaves_r[0]]
    hi_leaf = board.pos[leaves_r[-1]]
    choices = [slot for slot in middle if slot >= hi_leaf - m]
    if not choices or choices[0] > lo_leaf + m:
        raise LayoutInternalError(f"phase {i}: no slot for x_r between {hi_leaf - m} and {lo_leaf + m}")
    board.put(xr, choices[0])
    others = [slot for slot in middle if slot != choices[0]]
    for v, slot in zip(QmX + rest[:ml], others):
        board.put(v, slot)
    return plan


def _fill(board: _Board, seq, slots, i: int) -> None:
    if len(seq) > len(slots):
        raise LayoutInternalError(f"phase {i}: {len(seq)} vertices for {len(slots)} slots")
    for v, p in zip(seq, slots):
        board.put(v, p)


def _run(s: CaterpillarStructure, g: Graph, m: int, density_checked: bool = False) -> JustifiedLayout:
    if m < 1:
        raise DensityTooLarge("m must be positive")
    if not density_checked:
        _require_density(s, g, m)
    if s.k == 0:
        return _star(s, g, m)
    board = _Board(g.n)
    for j, v in enumerate(s.anchors):
        board.put(v, j * m)
    plans = []
    violations = 0
    for i in range(1, s.k + 1):
        plans.append(_phase(i, s, g, m, board))
        violations += _check_edges(g, board, s.clique(i), m)
    missing = [v for v in g.vertices() if board.pos[v] is None]
    if missing:
        raise LayoutInternalError(f"vertices left unplaced: {missing[:5]}")
    return JustifiedLayout(make_layout(board.pos, g), m, s, plans, violations)


def layout_clique_star(s: CaterpillarStructure, g: Graph, m: int) -> JustifiedLayout:
    """Left-justified m-representation of a star or clique-star (k <= 1)."""
    if s.anchors is None:
        raise ValueError("structure must be anchored first")
    if s.k > 1:
        raise ValueError(f"expected a clique-star, got {s.k} spine cliques")
    return _run(s, g, m)


def layout_block_caterpillar(s: CaterpillarStructure, g: Graph, m: int) -> JustifiedLayout:
    """Left-justified m-representation of an anchored block caterpillar."""
    if s.anchors is None:
        raise ValueError("structure must be anchored first")
    return _run(s, g, m)


def check_left_justified(j: JustifiedLayout, s: CaterpillarStructure, g: Graph) -> list[str]:
    """List every way ``j`` fails to be a left-justified m-representation."""
    m = j.m
    f = j.layout.position
    out = []
    a = s.anchors
    k = s.k
    for i, v in enumerate(a):
        if f[v] != i * m:
            out.append(f"property 0: v_{i} at {f[v]}, expected {i * m}")
    used = set(f)
    for i in range(k + 2):
        lo, hi = i * m + 1, (i + 1) * m
        seen_gap = False
        for p in range(lo, hi):
            if p not in used:
                seen_gap = True
            elif seen_gap:
                out.append(f"property 1: J_{i} has a hole before position {p}")
                break
        full = all(p in used for p in range(lo, hi))
        qi = s.clique(i)
        if not full:
            src = [v for v in qi if v != a[i + 1]]
            nxt = range((i + 1) * m + 1, (i + 2) * m)
            hits = sorted({u for v in src for u in g.neighbors(v) if f[u] in nxt})
            if hits:
                out.append(f"property 2: J_{i} not full but neighbours {hits[:4]} sit in J_{i + 1}")
        leaves_next = [u for u in s.leaf_sets.get(a[i + 1], ()) if u not in (a[0], a[-1])]
        body = [f[v] for v in qi if v != a[i + 1]]
        if leaves_next and body and max(body) > min(f[u] for u in leaves_next):
            out.append(f"property 3: Q_{i} extends past a leaf of v_{i + 1}")
    if not is_faithful(g, f):
        out.append("faithfulness: leaf order disagrees with parent order")
    for u, v in g.edges():
        if abs(f[u] - f[v]) > m:
            out.append(f"bandwidth: edge {u}-{v} stretches {abs(f[u] - f[v])} > {m}")
            break
    return out


@dataclass
class Certified:
    """An optimal layout together with the justified layout it was cut from.

    ``augmented`` is the graph with helper leaves and ``justified.structure``
    its anchored structure, so ``check_left_justified`` can be rerun.
    ``justified`` is None only for K_1.
    """

    layout: Layout
    bandwidth: int
    justified: JustifiedLayout | None
    augmented: Graph


def certified_layout(g: Graph) -> Certified:
    """Like :func:`optimal_layout`, keeping the intermediate justified layout."""
    if g.n == 1:
        return Certified(make_layout([0], g), 0, None, g)
    s = recognize_block_caterpillar(g)
    if not s:
        raise NotBlockCaterpillar(s)
    g2, s2 = anchor_and_augment(s, g)
    beta = local_density_structured(s2, g2).beta
    j = _run(s2, g2, beta, density_checked=True)
    f = condense(make_layout(j.layout.position[:g.n]), g)
    return Certified(f, beta, j, g2)


def optimal_layout(g: Graph) -> tuple[Layout, int]:
    """Bandwidth-optimal layout of a block caterpillar, with its bandwidth.

    Raises NotBlockCaterpillar when recognition fails.
    """
    c = certified_layout(g)
    return c.layout, c.bandwidth
