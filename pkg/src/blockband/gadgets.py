"""Named graphs with known bandwidth behaviour, and the scheduling reduction.

Small gadgets: H_k and T_k (bandwidth above local density), the reflector
R_p, and the near-caterpillar R_b'. The reduction builds a bug graph from a
multiprocessor scheduling instance and converts schedules to bandwidth-b
layouts and back.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .graph import Graph, Layout, diameter, make_layout, verify_layout

RoleMap = dict  # role name -> vertex id, or tuple of ids for a group


def _clique(vs):
    return list(combinations(vs, 2))


def _check_size(g: Graph, expected: int, what: str) -> None:
    if g.n != expected:
        raise AssertionError(f"{what}: built {g.n} vertices, expected {expected}")


def build_Hk(k: int) -> tuple[Graph, RoleMap]:
    """Three disjoint K_k joined through a K_4 on x, y, z and a hub w."""
    if k < 2:
        raise ValueError("H_k needs k >= 2")
    X = tuple(range(0, k))
    Y = tuple(range(k, 2 * k))
    Z = tuple(range(2 * k, 3 * k))
    w = 3 * k
    x, y, z = X[0], Y[0], Z[0]
    edges = _clique(X) + _clique(Y) + _clique(Z) + _clique([x, y, z, w])
    g = Graph.from_edges(3 * k + 1, edges)
    _check_size(g, 3 * k + 1, "H_k")
    return g, {"x": x, "y": y, "z": z, "w": w, "X": X, "Y": Y, "Z": Z}


def _spider(sizes) -> tuple[Graph, RoleMap]:
    """w joined to x, y, z; leaf groups X, Y, Z, W of the given sizes."""
    nx, ny, nz, nw = sizes
    x, y, z, w = 0, 1, 2, 3
    nxt = 4
    roles: RoleMap = {"x": x, "y": y, "z": z, "w": w}
    edges = [(w, x), (w, y), (w, z)]
    for name, parent, count in (("X", x, nx), ("Y", y, ny), ("Z", z, nz), ("W", w, nw)):
        group = tuple(range(nxt, nxt + count))
        nxt += count
        edges += [(parent, u) for u in group]
        roles[name] = group
    return Graph.from_edges(nxt, edges), roles


def build_Tk(k: int) -> tuple[Graph, RoleMap]:
    """Diameter-4 tree whose bandwidth exceeds its local density k."""
    if k < 2:
        raise ValueError("T_k needs k >= 2")
    g, roles = _spider((k - 1, k - 1, k - 1, k))
    _check_size(g, 4 * k + 1, "T_k")
    return g, roles


def build_near_reflector(b: int) -> tuple[Graph, RoleMap]:
    """T_b with leaves redistributed to sizes b/2, b, b/2, 2b-3."""
    if b < 4 or b % 2:
        raise ValueError("near-reflector needs an even b >= 4")
    g, roles = _spider((b // 2, b, b // 2, 2 * b - 3))
    _check_size(g, 4 * b + 1, "R_b'")
    return g, roles


def near_reflector_numbering(b: int) -> Layout:
    """Bandwidth-b layout with x, z, w, y at b, b+1, 2b, 3b."""
    g, r = build_near_reflector(b)
    pos = [0] * g.n
    low = list(r["X"]) + list(r["Z"])
    for i, v in enumerate(low):
        pos[v] = i
    pos[r["x"]], pos[r["z"]], pos[r["w"]], pos[r["y"]] = b, b + 1, 2 * b, 3 * b
    W = list(r["W"])
    slots = list(range(b + 2, 2 * b)) + list(range(2 * b + 1, 3 * b))
    for v, s in zip(W, slots):
        pos[v] = s
    for i, v in enumerate(r["Y"]):
        pos[v] = 3 * b + 1 + i
    return make_layout(pos, g)


def build_reflector(p: int) -> tuple[Graph, RoleMap]:
    """The reflector R_p: a bug on 5p+1 vertices whose ends a, z are forced to one side."""
    if p < 4:
        raise ValueError("reflector needs p >= 4")
    names = ["a", "b", "c_0", "w", "x", "y", "z"]
    names += [f"a_{j}" for j in range(1, p - 1)]
    names += [f"y_{j}" for j in range(1, p - 1)]
    names += [f"c_{j}" for j in range(1, p - 1)]
    names += [f"w_{j}" for j in range(1, p + 1)]
    names += [f"w'_{j}" for j in range(1, p + 1)]
    r = {name: i for i, name in enumerate(names)}
    spine = ["a", "b", "c_0", "w", "x", "y", "z"]
    edges = [(r[s], r[t]) for s, t in zip(spine, spine[1:])]
    clique = [r[f"c_{j}"] for j in range(1, p - 1)]
    edges += _clique(clique)
    edges += [(c, r[e]) for c in clique for e in ("c_0", "w")]
    edges += [(r["b"], r[f"a_{j}"]) for j in range(1, p - 1)]
    edges += [(r["x"], r[f"y_{j}"]) for j in range(1, p - 1)]
    for j in range(1, p + 1):
        edges += [(r["w"], r[f"w_{j}"]), (r[f"w_{j}"], r[f"w'_{j}"])]
    g = Graph.from_edges(len(names), edges)
    _check_size(g, 5 * p + 1, "R_p")
    return g, r


def reflector_order(p: int, a_low: bool = False) -> list[str]:
    """Role names in layout order.

    The default is the classic order starting z, a. With ``a_low`` the
    first half is interleaved the other way (a, z, a_1.., b, y, ..) so that
    a takes position 0, which is what the reduction needs.
    """
    js = range(1, p - 1)
    if a_low:
        head = ["a", "z"] + [f"a_{j}" for j in js] + ["b", "y"] + [f"y_{j}" for j in js] + ["c_0", "x"]
    else:
        head = ["z", "a"] + [f"a_{j}" for j in js] + ["y", "b"] + [f"y_{j}" for j in js] + ["x", "c_0"]
    return (head + [f"c_{j}" for j in js] + ["w"]
            + [f"w_{j}" for j in range(1, p + 1)] + [f"w'_{j}" for j in range(1, p + 1)])


def reflector_numbering(p: int, a_low: bool = False) -> Layout:
    g, r = build_reflector(p)
    return Layout.from_order([r[name] for name in reflector_order(p, a_low)], g)


def reflector_peripheral(p: int) -> tuple[str, ...]:
    """Role names of the vertices of maximum eccentricity: a, z and the twins a_j of a."""
    return ("a", "z") + tuple(f"a_{j}" for j in range(1, p - 1))


def reflector_core(p: int) -> Graph:
    """R_p without its peripheral vertices: 4p+1 vertices, diameter 4."""
    g, r = build_reflector(p)
    drop = {r[name] for name in reflector_peripheral(p)}
    return g.induced([v for v in g.vertices() if v not in drop])[0]


def check_end_anchoring(f: Layout, roles, low: int, high: int) -> bool:
    """True iff every vertex in ``roles`` sits below ``low`` or every one sits above ``high``."""
    ps = [f[v] for v in roles]
    return all(q < low for q in ps) or all(q > high for q in ps)


# -- scheduling reduction ---------------------------------------------------

@dataclass(frozen=True)
class SchedulingInstance:
    machines: int
    deadline: int
    tasks: tuple[int, ...]

    def __post_init__(self):
        if self.machines < 1 or self.deadline < 1 or not self.tasks:
            raise ValueError("need at least one machine, a positive deadline and one task")
        if any(t < 1 for t in self.tasks):
            raise ValueError("task times must be positive")


@dataclass(frozen=True)
class Schedule:
    """Machine groups of 0-based task indices."""

    groups: tuple[tuple[int, ...], ...]

    def loads(self, inst: SchedulingInstance) -> list[int]:
        return [sum(inst.tasks[i] for i in grp) for grp in self.groups]

    def problems(self, inst: SchedulingInstance) -> list[str]:
        out = []
        if len(self.groups) != inst.machines:
            out.append(f"{len(self.groups)} groups for {inst.machines} machines")
        seen = sorted(i for grp in self.groups for i in grp)
        if seen != list(range(len(inst.tasks))):
            out.append("groups do not partition the tasks")
            return out
        for j, load in enumerate(self.loads(inst), start=1):
            if load > inst.deadline:
                out.append(f"machine {j} load {load} exceeds deadline {inst.deadline}")
        return out

    def is_valid(self, inst: SchedulingInstance) -> bool:
        return not self.problems(inst)


class ScheduleRejected(ValueError):
    pass


@dataclass
class BugArtifacts:
    instance: SchedulingInstance
    graph: Graph
    p: int
    b: int
    D_prime: int
    lam: int
    spine_C: tuple[int, ...]
    leaves_C: dict[int, tuple[int, ...]]
    tasks: tuple[tuple[int, ...], ...]        # task vertices of each segment
    task_leaves: dict[int, tuple[int, ...]]
    paths: tuple[tuple[int, ...], ...]        # plain spine vertices of each segment
    reflector: RoleMap
    boundaries: tuple[int, ...] = field(default=())

    @property
    def heavy(self) -> int:
        """Spine vertex of C whose degree is 2b."""
        return self.spine_C[1]

    def metadata(self) -> dict[str, str]:
        return {
            "b": str(self.b), "p": str(self.p), "D_prime": str(self.D_prime),
            "lambda": str(self.lam), "n": str(self.graph.n),
            "z": ",".join(map(str, self.boundaries)),
        }


def bug_parameters(inst: SchedulingInstance) -> tuple[int, int, int, int]:
    """(p, b, D', lambda) for an instance."""
    n, D, m = len(inst.tasks), inst.deadline, inst.machines
    p = 2 * n * (D + 4) + 1
    return p, p + 1 + 2 * n, 2 * m * (D + 2) - 4, m * (D + 2)


def build_bug(inst: SchedulingInstance) -> BugArtifacts:
    p, b, Dp, lam = bug_parameters(inst)
    n, D, m = len(inst.tasks), inst.deadline, inst.machines
    edges = []
    nxt = 0

    def fresh(count):
        nonlocal nxt
        out = tuple(range(nxt, nxt + count))
        nxt += count
        return out

    spine = fresh(lam)
    edges += list(zip(spine, spine[1:]))
    leaves_C = {spine[1]: fresh(2 * p + 4 * n)}
    for j in range(1, m):
        leaves_C[spine[1 + j * (D + 2)]] = fresh(2 * p)
    for c, ls in leaves_C.items():
        edges += [(c, u) for u in ls]

    tasks, paths, task_leaves = [], [], {}
    prev = None
    for t in inst.tasks:
        seg_tasks = []
        for _ in range(t):
            (v,) = fresh(1)
            task_leaves[v] = fresh(p - 1)
            edges += [(v, u) for u in task_leaves[v]]
            seg_tasks.append(v)
        path = fresh(Dp)
        chain = seg_tasks + list(path)
        if prev is not None:
            edges.append((prev, chain[0]))
        edges += list(zip(chain, chain[1:]))
        prev = chain[-1]
        tasks.append(tuple(seg_tasks))
        paths.append(path)

    rg, rr = build_reflector(b)
    off = nxt
    nxt += rg.n
    edges += [(u + off, v + off) for u, v in rg.edges()]
    reflector = {name: v + off for name, v in rr.items()}
    edges.append((spine[-1], reflector["a"]))
    edges.append((prev, reflector["z"]))

    g = Graph.from_edges(nxt, edges)
    total = sum(inst.tasks)
    if len(spine) + sum(map(len, leaves_C.values())) != m * (D + 2 + 2 * p) + 4 * n:
        raise AssertionError("caterpillar C has the wrong size")
    if total * p + n * Dp + rg.n + lam + 2 * m * p + 4 * n != g.n:
        raise AssertionError("bug has the wrong size")
    if total == m * D:
        _check_size(g, (lam + 5) * b + 1, "bug")
    bounds = tuple((1 + j * (D + 2)) * b for j in range(m + 1))
    return BugArtifacts(inst, g, p, b, Dp, lam, spine, leaves_C, tuple(tasks), task_leaves,
                        tuple(paths), reflector, bounds)


def pad_instance(inst: SchedulingInstance, sched: Schedule) -> SchedulingInstance:
    """Stretch task times so every machine of ``sched`` is loaded to exactly D."""
    probs = sched.problems(inst)
    if probs:
        raise ScheduleRejected("; ".join(probs))
    times = list(inst.tasks)
    for grp in sched.groups:
        if not grp:
            raise ScheduleRejected("cannot pad a machine with no tasks")
        times[grp[-1]] += inst.deadline - sum(inst.tasks[i] for i in grp)
    return SchedulingInstance(inst.machines, inst.deadline, tuple(times))


def _path_slots(k: int, J: int, Jp: int, lam: int, b: int, p: int) -> list[int]:
    """Positions for the k-th plain path (1-based k), starting in interval Jp, ending in J."""
    L = {i: i * b + p + 2 * k - 1 for i in range(2, lam)}
    U = {i: i * b + p + 2 * k for i in range(2, lam)}
    if J == Jp:
        if J != lam - 1:
            raise AssertionError("both path ends in one interval below the top")
        return [L[i] for i in range(lam - 1, 1, -1)] + [U[i] for i in range(2, lam)]
    seq = [L[i] for i in range(Jp, lam)]
    seq += [U[i] for i in range(lam - 1, Jp - 1, -1)]
    for i in range(Jp - 1, J, -1):
        seq += [U[i], L[i]]
    seq += [U[i] for i in range(J, 1, -1)]
    seq += [L[i] for i in range(2, J + 1)]
    return seq


def schedule_to_numbering(bug: BugArtifacts, sched: Schedule) -> Layout:
    """A bandwidth-b layout built from a valid schedule.

    Machines loaded below the deadline leave some slots empty, so positions
    are a bijection onto 0..(lambda+5)b only when every load equals D.
    """
    inst = bug.instance
    probs = sched.problems(inst)
    if probs:
        raise ScheduleRejected("; ".join(probs))
    b, p, lam, D = bug.b, bug.p, bug.lam, inst.deadline
    pos: dict[int, int] = {}
    for i, c in enumerate(bug.spine_C):
        pos[c] = i * b
    for c, ls in bug.leaves_C.items():
        i = pos[c] // b
        half = len(ls) // 2
        lower = [(i - 1) * b + 1 + j for j in range(half)]
        upper = [i * b + 1 + j for j in range(len(ls) - half)]
        for u, q in zip(ls, lower + upper):
            pos[u] = q
    for q, name in enumerate(reflector_order(b, a_low=True)):
        pos[bug.reflector[name]] = lam * b + q

    interval_of_task = {}
    for j, grp in enumerate(sched.groups):
        i = j * (D + 2) + 2
        for task in sorted(grp):
            for v in bug.tasks[task]:
                pos[v] = i * b + 1
                for s, u in enumerate(bug.task_leaves[v]):
                    pos[u] = i * b + 2 + s
                interval_of_task[v] = i
                i += 1
    n = len(inst.tasks)
    for k in range(1, n + 1):
        path = bug.paths[k - 1]
        start = interval_of_task[bug.tasks[k - 1][-1]]
        if k < n:
            end = interval_of_task[bug.tasks[k][0]]
        else:
            end = lam - 1
        J, Jp = min(start, end), max(start, end)
        slots = _path_slots(k, J, Jp, lam, b, p)
        # slots run from the Jp end to the J end; path[0] touches the segment's last task
        order = slots if start >= end else slots[::-1]
        for v, q in zip(path, order):
            pos[v] = q
    f = Layout.from_mapping(pos, bug.graph.n, bug.graph)
    return f


def numbering_to_schedule(bug: BugArtifacts, f: Layout) -> Schedule:
    """Read a schedule off a bandwidth-b layout of the bug, or raise ScheduleRejected."""
    g = bug.graph
    inst = bug.instance
    bw = verify_layout(g, f)
    if bw != bug.b:
        raise ScheduleRejected(f"layout has bandwidth {bw}, expected {bug.b}")
    lo = min(f.position)
    pos = [q - lo for q in f.position]
    top = max(pos)
    if pos[bug.heavy] > top / 2:
        pos = [top - q for q in pos]
    z = bug.boundaries
    groups: list[list[int]] = [[] for _ in range(inst.machines)]
    for task, verts in enumerate(bug.tasks):
        homes = set()
        for v in verts:
            js = [j for j in range(1, len(z)) if z[j - 1] < pos[v] < z[j]]
            if not js:
                raise ScheduleRejected(f"task {task + 1}: vertex {v} at {pos[v]} lies outside every machine range")
            homes.add(js[0])
        if len(homes) > 1:
            raise ScheduleRejected(f"task {task + 1} straddles a machine boundary")
        groups[homes.pop() - 1].append(task)
    sched = Schedule(tuple(tuple(grp) for grp in groups))
    for j, load in enumerate(sched.loads(inst), start=1):
        if load > inst.deadline:
            raise ScheduleRejected(f"machine {j} load {load} exceeds deadline {inst.deadline}")
    return sched


def reflector_certificate(bug: BugArtifacts) -> tuple[int, int, int]:
    """(vertex count, diameter, implied lower bound) for the reflector core inside the bug."""
    drop = {bug.reflector[name] for name in reflector_peripheral(bug.b)}
    core = [v for v in bug.reflector.values() if v not in drop]
    h, _ = bug.graph.induced(core)
    d = diameter(h)
    return h.n, d, -(-(h.n - 1) // d)


def parse_schedule(text: str) -> Schedule:
    """``"1;2,3"`` -> machine groups with 0-based task indices."""
    groups = []
    for part in text.split(";"):
        part = part.strip()
        groups.append(tuple(int(x) - 1 for x in part.split(",") if x.strip()) if part else ())
    return Schedule(tuple(groups))


def format_schedule(s: Schedule) -> str:
    return ";".join(",".join(str(i + 1) for i in grp) for grp in s.groups)


def serialize_roles(roles: RoleMap) -> str:
    lines = []
    for name, v in roles.items():
        if isinstance(v, tuple):
            lines += [f"{name} {u}" for u in v]
        else:
            lines.append(f"{name} {v}")
    return "\n".join(lines) + "\n"


def parse_roles(text: str) -> RoleMap:
    """Inverse of serialize_roles; capitalised role names are vertex groups."""
    out: dict = {}
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        name, v = line.split()
        if name[0].isupper():
            out[name] = out.get(name, ()) + (int(v),)
        else:
            out[name] = int(v)
    return out


def serialize_metadata(meta: dict) -> str:
    return "".join(f"{k}={v}\n" for k, v in meta.items())
