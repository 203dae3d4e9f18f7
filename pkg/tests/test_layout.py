import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from blockband.density import local_density_structured
from blockband.gadgets import build_Hk
from blockband.generators import clique_chain, complete, path, star
from blockband.graph import Graph, Layout, make_layout, verify_layout
from blockband.layout import (MEDIUM_MASS, SMALL_LEAF_MASS, STRADDLE, DensityTooLarge, JustifiedLayout,
                              check_left_justified, is_faithful, layout_block_caterpillar,
                              layout_clique_star, optimal_layout, repair_faithful)
from blockband.oracle import exact_bandwidth
from blockband.recognition import NotBlockCaterpillar, anchor_and_augment, recognize_block_caterpillar

from conftest import block_caterpillars


def prepared(g):
    s = recognize_block_caterpillar(g)
    g2, s2 = anchor_and_augment(s, g)
    return g2, s2, local_density_structured(s2, g2).beta


def test_double_star_crossed_leaves_repaired():
    # centres 0,1; leaves 2,3 on 0 and 4,5 on 1, interleaved badly
    g = Graph.from_edges(6, [(0, 1), (0, 2), (0, 3), (1, 4), (1, 5)])
    f = make_layout([2, 3, 5, 0, 4, 1], g)
    fixed = repair_faithful(g, f)
    best = min(
        make_layout([2, 3] + [p for p in perm], g).bandwidth
        for perm in itertools.permutations([5, 0, 4, 1])
    )
    assert fixed.bandwidth < f.bandwidth
    assert fixed.bandwidth == best
    assert is_faithful(g, fixed.position)


def test_repair_fixed_point_and_star():
    g = path(4)
    f = Layout.from_order([0, 1, 2, 3], g)
    assert repair_faithful(g, f) == f
    s = star(4)
    f = Layout.from_order([3, 0, 1, 4, 2], s)
    assert repair_faithful(s, f) == f


@settings(max_examples=200, deadline=None)
@given(block_caterpillars(max_n=20), st.randoms(use_true_random=False))
def test_repair_never_worsens(g, rnd):
    perm = list(range(g.n))
    rnd.shuffle(perm)
    f = make_layout(perm, g)
    fixed = repair_faithful(g, f)
    assert fixed.bandwidth <= f.bandwidth
    assert is_faithful(g, fixed.position)
    leaves = {v for v in g.vertices() if g.degree(v) == 1}
    for v in g.vertices():
        if v not in leaves or g.n == 2:
            assert fixed[v] == f[v]
    assert sorted(fixed.position) == sorted(f.position)


def test_star_k16_at_m3():
    g2, s, beta = prepared(star(6))
    assert beta == 3
    j = layout_clique_star(s, g2, 3)
    assert verify_layout(g2, j.layout) == 3
    assert check_left_justified(j, s, g2) == []


def test_H2_clique_star():
    g2, s, beta = prepared(build_Hk(2)[0])
    j = layout_clique_star(s, g2, 3)
    assert check_left_justified(j, s, g2) == []
    assert j.anchor_positions == (0, 3, 6, 9)
    assert optimal_layout(build_Hk(2)[0])[1] == 3


def test_clique_star_refuses_small_m():
    g2, s, beta = prepared(build_Hk(2)[0])
    with pytest.raises(DensityTooLarge):
        layout_clique_star(s, g2, 2)


def test_clique_star_refuses_long_spine():
    g2, s, _ = prepared(clique_chain([3, 3]))
    with pytest.raises(ValueError):
        layout_clique_star(s, g2, 5)


def test_complete_graphs():
    for n in range(1, 9):
        f, b = optimal_layout(complete(n))
        assert b == max(n - 1, 0) and f.bandwidth == b


def test_not_a_block_caterpillar():
    with pytest.raises(NotBlockCaterpillar, match="SpineNotPath"):
        optimal_layout(build_Hk(3)[0])


def test_checker_reports_violations():
    g2, s, beta = prepared(clique_chain([3, 4, 3], {(0, 1): 2, (1, 2): 3, (2, 1): 2}))
    j = layout_block_caterpillar(s, g2, beta + 1)
    assert check_left_justified(j, s, g2) == []
    m = j.m
    pos = list(j.layout.position)
    # move v_1 off its multiple of m
    v1 = s.anchors[1]
    free = next(p for p in range(1, m) if p not in pos)
    moved = list(pos)
    moved[v1] = free
    bad = JustifiedLayout(make_layout(moved, g2), m, s)
    assert any(v.startswith("property 0") for v in check_left_justified(bad, s, g2))
    # open a hole at the start of J_1 by pushing its lowest vertex to the end of the interval
    lowest = min((p for p in pos if m < p < 2 * m), default=None)
    if lowest is not None and (2 * m - 1) not in pos:
        holey = list(pos)
        holey[pos.index(lowest)] = 2 * m - 1
        bad = JustifiedLayout(make_layout(holey, g2), m, s)
        assert any("property 1: J_1" in v for v in check_left_justified(bad, s, g2))


def test_all_three_cases_occur():
    seen = set()
    rng = random.Random(3)
    for _ in range(400):
        sizes = [rng.randint(2, 6) for _ in range(rng.randint(1, 4))]
        leaves = {(c, v): rng.choice([0, 1, 3, 6]) for c, sz in enumerate(sizes) for v in range(sz)}
        g2, s, beta = prepared(clique_chain(sizes, leaves))
        j = layout_block_caterpillar(s, g2, beta)
        assert check_left_justified(j, s, g2) == []
        seen.update(p.case_tag for p in j.plans)
    assert seen == {SMALL_LEAF_MASS, MEDIUM_MASS, STRADDLE}


@settings(max_examples=300, deadline=None)
@given(block_caterpillars(max_n=40, max_clique=8, max_leaves=8), st.integers(0, 3))
def test_layout_is_left_justified(g, extra):
    g2, s, beta = prepared(g)
    j = layout_block_caterpillar(s, g2, beta + extra)
    assert check_left_justified(j, s, g2) == []
    assert j.leaf_edge_violations == 0


@settings(max_examples=120, deadline=None)
@given(block_caterpillars(max_n=12))
def test_optimal_against_oracle(g):
    f, b = optimal_layout(g)
    assert verify_layout(g, f) == b
    assert sorted(f.position) == list(range(g.n))
    assert exact_bandwidth(g)[0] == b


def test_deterministic():
    g = clique_chain([4, 3, 5], {(0, 1): 3, (1, 1): 2, (2, 3): 4})
    assert optimal_layout(g) == optimal_layout(g)
