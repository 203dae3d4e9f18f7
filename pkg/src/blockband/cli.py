"""Command-line front end. Reports are ``key=value`` lines on stdout."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import gadgets as gd
from .density import DEFAULT_CAP, TooLargeError, local_density_bruteforce, local_density_structured
from .graph import (GraphFormatError, LayoutError, condense, make_layout, parse_graph, parse_layout,
                    serialize_graph, serialize_layout, verify_layout)
from .layout import DensityTooLarge, layout_block_caterpillar, optimal_layout
from .oracle import BudgetExhausted, SearchBudget, decide_bandwidth, density_floor, enumerate_optimal
from .recognition import NotBlockCaterpillar, anchor_and_augment, recognize_block_caterpillar


class Rejected(Exception):
    """Domain-level refusal: exit status 1."""


def _read_graph(path):
    return parse_graph(Path(path).read_text())


def _emit(**kv):
    for k, v in kv.items():
        print(f"{k}={v}")


def _structure(g):
    s = recognize_block_caterpillar(g)
    if not s:
        raise Rejected(str(s))
    return s


def cmd_recognize(a):
    g = _read_graph(a.graph)
    s = _structure(g)
    print("block_caterpillar=yes")
    for line in s.describe().splitlines():
        print("  " + line)


def cmd_density(a):
    g = _read_graph(a.graph)
    if g.n == 1:
        print("beta=0 beta1=0 beta2=0 beta_prime=0 witness=(0,0)")
    else:
        s = _structure(g)
        g2, s2 = anchor_and_augment(s, g)
        print(local_density_structured(s2, g2).line())
    if a.exact:
        try:
            _emit(beta_exact=local_density_bruteforce(g, a.cap))
        except TooLargeError as e:
            raise Rejected(str(e))


def cmd_layout(a):
    g = _read_graph(a.graph)
    if a.m is None:
        try:
            f, beta = optimal_layout(g)
        except NotBlockCaterpillar as e:
            raise Rejected(str(e))
    else:
        s = _structure(g)
        g2, s2 = anchor_and_augment(s, g)
        try:
            j = layout_block_caterpillar(s2, g2, a.m)
        except DensityTooLarge as e:
            raise Rejected(str(e))
        f = condense(make_layout(j.layout.position[:g.n]), g)
    text = serialize_layout(f)
    if a.output:
        Path(a.output).write_text(text)
    else:
        sys.stdout.write(text)
    _emit(B=f.bandwidth)


def cmd_verify(a):
    g = _read_graph(a.graph)
    try:
        f = parse_layout(Path(a.layout).read_text(), g.n)
        _emit(B=verify_layout(g, f))
    except LayoutError as e:
        raise Rejected(str(e))


def cmd_oracle(a):
    g = _read_graph(a.graph)
    budget = SearchBudget(max_vertices=max(g.n, 1), max_nodes=a.max_nodes)
    b = density_floor(g)
    top = a.max_b if a.max_b is not None else g.n
    while True:
        if b > top:
            raise Rejected(f"no layout with bandwidth <= {top}")
        res = decide_bandwidth(g, b, budget)
        if isinstance(res, BudgetExhausted):
            raise Rejected(f"budget exhausted after {res.nodes} nodes at b={b}")
        if res:
            break
        b += 1
    _emit(bandwidth=b)
    if a.enumerate:
        count = enumerate_optimal(g, b, budget=budget)
        if isinstance(count, BudgetExhausted):
            raise Rejected(f"budget exhausted after {count.nodes} nodes, {count.partial_count} layouts seen")
        _emit(optimal_layouts=count)


def _write_bundle(prefix, g, roles, meta):
    prefix = Path(prefix)
    Path(f"{prefix}.graph").write_text(serialize_graph(g))
    Path(f"{prefix}.roles").write_text(gd.serialize_roles(roles))
    Path(f"{prefix}.meta").write_text(gd.serialize_metadata(meta))
    _emit(graph=f"{prefix}.graph", n=g.n)


GADGETS = {
    "hk": gd.build_Hk,
    "tk": gd.build_Tk,
    "reflector": gd.build_reflector,
    "near-reflector": gd.build_near_reflector,
}


def cmd_gadget(a):
    try:
        g, roles = GADGETS[a.kind](a.param)
    except ValueError as e:
        raise Rejected(str(e))
    meta = {"kind": a.kind, "param": a.param, "n": g.n}
    _write_bundle(a.output or f"{a.kind}{a.param}", g, roles, meta)


def _instance(a):
    try:
        tasks = tuple(int(x) for x in a.tasks.split(","))
        return gd.SchedulingInstance(a.machines, a.deadline, tasks)
    except ValueError as e:
        raise Rejected(f"bad instance: {e}")


def _bug_roles(bug):
    roles = {"C": bug.spine_C}
    for i, verts in enumerate(bug.tasks, start=1):
        roles[f"T{i}"] = verts
        roles[f"P{i}"] = bug.paths[i - 1]
    roles.update(bug.reflector)
    return roles


def cmd_reduce(a):
    bug = gd.build_bug(_instance(a))
    _write_bundle(a.output or "bug", bug.graph, _bug_roles(bug), bug.metadata())
    _emit(b=bug.b, p=bug.p)


def cmd_roundtrip(a):
    inst = _instance(a)
    bug = gd.build_bug(inst)
    try:
        sched = gd.parse_schedule(a.schedule)
        f = gd.schedule_to_numbering(bug, sched)
    except (ValueError, IndexError) as e:
        raise Rejected(f"schedule refused: {e}")
    if a.output:
        Path(a.output).write_text(serialize_layout(f))
    _emit(b=bug.b, n=bug.graph.n, B=f.bandwidth)
    try:
        back = gd.numbering_to_schedule(bug, f)
        ok = back.is_valid(inst)
        _emit(schedule=gd.format_schedule(back), loads=",".join(map(str, back.loads(inst))))
    except gd.ScheduleRejected as e:
        ok = False
        print(f"rejection: {e}", file=sys.stderr)
    ok = ok and f.bandwidth == bug.b
    _emit(result="PASS" if ok else "FAIL")
    if not ok:
        raise Rejected("round trip failed")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="blockband", description="Bandwidth of block caterpillars and related gadgets.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("recognize", help="recognize a block caterpillar")
    p.add_argument("graph")
    p.set_defaults(func=cmd_recognize)

    p = sub.add_parser("density", help="local density of a block caterpillar")
    p.add_argument("graph")
    p.add_argument("--exact", action="store_true", help="cross-check by brute force")
    p.add_argument("--cap", type=int, default=DEFAULT_CAP)
    p.set_defaults(func=cmd_density)

    p = sub.add_parser("layout", help="optimal layout of a block caterpillar")
    p.add_argument("graph")
    p.add_argument("-m", type=int, default=None, help="target width (default: the local density)")
    p.add_argument("-o", "--output", help="layout file to write (default stdout)")
    p.set_defaults(func=cmd_layout)

    p = sub.add_parser("verify", help="bandwidth of a given layout")
    p.add_argument("graph")
    p.add_argument("layout")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("oracle", help="exact bandwidth by branch and bound")
    p.add_argument("graph")
    p.add_argument("--max-b", type=int, default=None)
    p.add_argument("--max-nodes", type=int, default=10_000_000)
    p.add_argument("--enumerate", action="store_true", help="count optimal layouts up to reversal")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("gadget", help="write a named gadget graph")
    p.add_argument("kind", choices=sorted(GADGETS))
    p.add_argument("--param", type=int, required=True)
    p.add_argument("-o", "--output", help="output prefix")
    p.set_defaults(func=cmd_gadget)

    for name, func in (("reduce", cmd_reduce), ("roundtrip", cmd_roundtrip)):
        p = sub.add_parser(name, help="scheduling reduction" if name == "reduce" else "schedule -> layout -> schedule")
        p.add_argument("--machines", type=int, required=True)
        p.add_argument("--deadline", type=int, required=True)
        p.add_argument("--tasks", required=True, help="comma-separated task times")
        if name == "roundtrip":
            p.add_argument("--schedule", required=True, help='machine groups, e.g. "1;2,3"')
        p.add_argument("-o", "--output", help="output prefix (reduce) or layout file (roundtrip)")
        p.set_defaults(func=func)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        args.func(args)
    except Rejected as e:
        print(f"rejected: {e}", file=sys.stderr)
        return 1
    except (GraphFormatError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
