import random

import pytest
from hypothesis import given, settings

from blockband.density import (TooLargeError, local_density_bruteforce, local_density_structured,
                               window_size)
from blockband.gadgets import build_Hk, build_Tk
from blockband.generators import complete, path, star
from blockband.graph import diameter, is_connected
from blockband.recognition import anchor_and_augment, recognize_block_caterpillar

from conftest import block_caterpillars, random_caterpillar_corpus


def structured(g):
    s = recognize_block_caterpillar(g)
    g2, s2 = anchor_and_augment(s, g)
    return local_density_structured(s2, g2), s2, g2


def test_bruteforce_examples():
    assert local_density_bruteforce(path(9)) == 1
    assert local_density_bruteforce(build_Hk(3)[0]) == 3
    assert local_density_bruteforce(build_Tk(3)[0]) == 3
    assert local_density_bruteforce(complete(1)) == 0


def test_T2_density_is_three_not_two():
    # the hub has degree 5, so its closed neighbourhood alone forces 3
    g, r = build_Tk(2)
    assert g.degree(r["w"]) == 5
    assert local_density_bruteforce(g) == 3


def test_bruteforce_refuses_large():
    with pytest.raises(TooLargeError, match="16"):
        local_density_bruteforce(path(17))


def test_structured_examples():
    assert structured(build_Hk(2)[0])[0].beta == 3
    assert structured(star(5))[0].beta == 3
    rep = structured(complete(6))[0]
    assert rep.beta == rep.beta1 == 5


def test_report_line_and_witness():
    rep, s, _ = structured(build_Hk(2)[0])
    assert rep.line() == "beta=3 beta1=3 beta2=2 beta_prime=2 witness=(0,0)"
    h, i = rep.witness
    assert -(-(window_size(s, h, i) - 1) // (i - h + 3)) == rep.beta_prime


def test_structured_refuses_mismatch():
    rep, s, g2 = structured(build_Hk(2)[0])
    with pytest.raises(ValueError):
        local_density_structured(s, complete(3))


def test_structured_matches_bruteforce_corpus():
    graphs = [g for g in random_caterpillar_corpus(11, 600) if g.n > 1]
    assert len(graphs) >= 500
    for g in graphs:
        assert structured(g)[0].beta == local_density_bruteforce(g), g.edges()


@settings(max_examples=150, deadline=None)
@given(block_caterpillars(max_n=12))
def test_structured_matches_bruteforce(g):
    rep = structured(g)[0]
    assert rep.beta == max(rep.beta1, rep.beta2, rep.beta_prime)
    assert rep.beta == local_density_bruteforce(g)


@settings(max_examples=60, deadline=None)
@given(block_caterpillars(max_n=12))
def test_lower_bounds_and_monotonicity(g):
    beta = local_density_bruteforce(g)
    if g.n > 1:
        assert beta >= -(-(g.n - 1) // diameter(g))
    assert beta >= max(-(-g.degree(v) // 2) for v in g.vertices())
    rng = random.Random(g.n)
    keep = rng.sample(range(g.n), max(1, g.n - 3))
    h, _ = g.induced(keep)
    if is_connected(h):
        assert local_density_bruteforce(h) <= beta
