"""Acceptance checks, one PASS/FAIL line each.

Run under pytest (lines are printed even when output is captured) or
directly with ``python3 tests/test_acceptance.py``.
"""

import random
import sys
import time
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from blockband import gadgets as gd
from blockband.density import local_density_bruteforce, local_density_structured
from blockband.generators import random_spine_caterpillar
from blockband.graph import diameter, make_layout, verify_layout
from blockband.layout import certified_layout, check_left_justified, is_faithful, repair_faithful
from blockband.oracle import Infeasible, SearchBudget, decide_bandwidth, enumerate_optimal, exact_bandwidth
from blockband.recognition import anchor_and_augment, recognize_block_caterpillar
from conftest import random_caterpillar_corpus

# regression constants fixed after the first oracle runs
H3_BANDWIDTH = 4
T2_BANDWIDTH = 3
T3_BANDWIDTH = 4
R4_NEAR_OPTIMAL_COUNT = 92160


def structured_beta(g):
    s = recognize_block_caterpillar(g)
    g2, s2 = anchor_and_augment(s, g)
    return local_density_structured(s2, g2).beta


def criterion_1(count=1000, seed=2024):
    rng = random.Random(seed)
    corpus = [random_spine_caterpillar(rng, max_n=300, max_clique=12, max_leaves=12) for _ in range(count)]
    start = time.perf_counter()
    bad, leaf_edges, largest = [], 0, 0
    for idx, g in enumerate(corpus):
        c = certified_layout(g)
        largest = max(largest, g.n)
        if verify_layout(g, c.layout) != c.bandwidth:
            bad.append(idx)
            continue
        if c.justified is not None:
            s = c.justified.structure
            beta = local_density_structured(s, c.augmented).beta
            if beta != c.bandwidth or check_left_justified(c.justified, s, c.augmented):
                bad.append(idx)
            leaf_edges += c.justified.leaf_edge_violations
    elapsed = time.perf_counter() - start
    ok = not bad and leaf_edges == 0 and elapsed < 10
    return ok, (f"{count} instances, max n={largest}, failures={len(bad)}, "
                f"leaf-edge violations={leaf_edges}, {elapsed:.1f}s")


def criterion_2(count=300, seed=7):
    corpus = random_caterpillar_corpus(seed, count, max_n=14)
    start = time.perf_counter()
    bad = []
    for idx, g in enumerate(corpus):
        if g.n == 1:
            values = (0, 0, 0)
        else:
            values = (exact_bandwidth(g)[0], structured_beta(g), local_density_bruteforce(g))
        if len(set(values)) != 1:
            bad.append((idx, values))
    elapsed = time.perf_counter() - start
    return not bad and elapsed < 60, f"{count} instances, disagreements={bad[:3]}, {elapsed:.1f}s"


def criterion_3():
    g, _ = gd.build_Hk(3)
    start = time.perf_counter()
    beta = local_density_bruteforce(g)
    at3 = decide_bandwidth(g, 3)
    b, _ = exact_bandwidth(g)
    elapsed = time.perf_counter() - start
    ok = beta == 3 and isinstance(at3, Infeasible) and b == H3_BANDWIDTH and elapsed < 30
    return ok, f"H_3: n={g.n}, beta={beta}, width 3 infeasible={isinstance(at3, Infeasible)}, B={b}, {elapsed:.2f}s"


def criterion_4():
    g, _ = gd.build_Tk(2)
    start = time.perf_counter()
    beta = local_density_bruteforce(g)
    at2 = decide_bandwidth(g, 2)
    b, _ = exact_bandwidth(g)
    elapsed = time.perf_counter() - start
    t3 = gd.build_Tk(3)[0]
    ok = beta == 2 and isinstance(at2, Infeasible) and elapsed < 5
    return ok, (f"T_2: n={g.n}, beta={beta} (expected 2; centre degree 5 forces 3), B={b}; "
                f"T_3: beta={local_density_bruteforce(t3)}, B={exact_bandwidth(t3)[0]}")


def criterion_5():
    notes, ok = [], True
    for p in range(4, 9):
        g, r = gd.build_reflector(p)
        width = verify_layout(g, gd.reflector_numbering(p))
        core = gd.reflector_core(p)
        h, _ = g.induced([v for v in g.vertices() if v not in (r["a"], r["z"])])
        good = width == p and core.n == 4 * p + 1 and diameter(core) == 4
        ok &= good
        notes.append(f"p={p}: B(f)={width}, core {core.n}v diam {diameter(core)}")
    return ok, ("; ".join(notes) + f" (core drops all p peripheral vertices; dropping only a,z leaves"
                f" {h.n}v diam {diameter(h)} at p=8)")


def criterion_6():
    b = 4
    g, r = gd.build_near_reflector(b)
    ends = list(r["X"]) + list(r["Z"])
    bad = []
    start = time.perf_counter()
    count = enumerate_optimal(
        g, b, budget=SearchBudget(max_vertices=g.n, max_nodes=10**8),
        visitor=lambda f: bad.append(f) if not gd.check_end_anchoring(f, ends, b, 3 * b) else None)
    elapsed = time.perf_counter() - start
    ok = count == R4_NEAR_OPTIMAL_COUNT and not bad
    return ok, f"R_4': n={g.n}, optimal layouts={count}, unanchored={len(bad)}, {elapsed:.1f}s"


def criterion_7():
    start = time.perf_counter()
    inst = gd.SchedulingInstance(2, 2, (2, 1, 1))
    bug = gd.build_bug(inst)
    f = gd.schedule_to_numbering(bug, gd.parse_schedule("1;2,3"))
    width = verify_layout(bug.graph, f)
    core_n, core_d, bound = gd.reflector_certificate(bug)
    back = gd.numbering_to_schedule(bug, f)
    loads = back.loads(inst)
    elapsed = time.perf_counter() - start
    ok = ((bug.p, bug.b, bug.graph.n) == (37, 44, 573) and width == 44 and bound == 44
          and back.is_valid(inst) and max(loads) <= 2 and elapsed < 5)
    return ok, (f"p={bug.p}, b={bug.b}, n={bug.graph.n}, B(f)={width}, "
                f"core {core_n} vertices diameter {core_d} gives B>={bound}, "
                f"schedule {gd.format_schedule(back)} loads {loads}, {elapsed:.2f}s")


def criterion_8(trials=10_000, seed=11):
    rng = random.Random(seed)
    corpus = random_caterpillar_corpus(seed, 200, max_n=20)
    worse = unfaithful = 0
    for t in range(trials):
        g = corpus[t % len(corpus)]
        perm = list(range(g.n))
        rng.shuffle(perm)
        f = make_layout(perm, g)
        fixed = repair_faithful(g, f)
        worse += fixed.bandwidth > f.bandwidth
        unfaithful += not is_faithful(g, fixed.position)
    leaf_edges = 0
    for g in corpus:
        c = certified_layout(g)
        if c.justified is not None:
            leaf_edges += c.justified.leaf_edge_violations
    ok = worse == 0 and unfaithful == 0 and leaf_edges == 0
    return ok, f"{trials} repairs: worse={worse}, unfaithful={unfaithful}; leaf-edge violations={leaf_edges}"


def report(n, ok, detail):
    line = f"criterion {n}: {'PASS' if ok else 'FAIL'} {detail}"
    capman = getattr(report, "capsys", None)
    if capman is not None:
        with capman.disabled():
            print("\n" + line)
    else:
        print(line)


@pytest.fixture(autouse=True)
def _uncaptured(capsys):
    report.capsys = capsys
    yield
    report.capsys = None


def _check(n, fn):
    ok, detail = fn()
    report(n, ok, detail)
    assert ok, detail


def test_criterion_1_layouts_at_scale():
    _check(1, criterion_1)


def test_criterion_2_oracle_agreement():
    _check(2, criterion_2)


def test_criterion_3_H3():
    _check(3, criterion_3)


@pytest.mark.xfail(strict=True, reason="T_2 has local density 3, not 2; see README")
def test_criterion_4_T2():
    _check(4, criterion_4)


def test_criterion_5_reflector():
    _check(5, criterion_5)


@pytest.mark.slow
def test_criterion_6_near_reflector_anchoring():
    _check(6, criterion_6)


def test_criterion_7_reduction_certificate():
    _check(7, criterion_7)


def test_criterion_8_faithful_repair():
    _check(8, criterion_8)


if __name__ == "__main__":
    results = []
    for n, fn in enumerate((criterion_1, criterion_2, criterion_3, criterion_4,
                            criterion_5, criterion_6, criterion_7, criterion_8), start=1):
        ok, detail = fn()
        report(n, ok, detail)
        results.append(ok)
    sys.exit(0 if all(results) else 1)
