"""
Scheduling to bandwidth and back
================================

Turn a tiny multiprocessor scheduling instance into a bug graph, convert
a schedule into a layout of width b, and read the schedule back.
"""

from blockband import gadgets as gd
from blockband.graph import make_layout, verify_layout

####################################################################
# The instance
# ------------
# Two machines, deadline 2, tasks of length 2, 1 and 1.

inst = gd.SchedulingInstance(machines=2, deadline=2, tasks=(2, 1, 1))
bug = gd.build_bug(inst)
print(bug.metadata())

####################################################################
# Lower bound from the reflector
# ------------------------------
# The reflector core is dense enough that its own density equals b.

print("core vertices, diameter, bound:", gd.reflector_certificate(bug))

####################################################################
# Schedule to layout
# ------------------

sched = gd.parse_schedule("1;2,3")
f = gd.schedule_to_numbering(bug, sched)
print("B(f) =", verify_layout(bug.graph, f))

####################################################################
# Layout to schedule
# ------------------
# The mirror image reads back to the same schedule.

back = gd.numbering_to_schedule(bug, f)
top = bug.graph.n - 1
mirrored = gd.numbering_to_schedule(bug, make_layout([top - q for q in f.position], bug.graph))
print(gd.format_schedule(back), back.loads(inst), gd.format_schedule(mirrored))

####################################################################
# A layout that is too loose is refused
# -------------------------------------

try:
    gd.numbering_to_schedule(bug, make_layout([2 * q for q in f.position], bug.graph))
except gd.ScheduleRejected as e:
    print("rejected:", e)
