"""
When density is not enough
==========================

Graphs outside the block caterpillar class whose bandwidth beats their
local density, measured with the exact branch-and-bound oracle.
"""

from blockband import gadgets as gd
from blockband.density import local_density_bruteforce
from blockband.oracle import decide_bandwidth, exact_bandwidth
from blockband.recognition import recognize_block_caterpillar

####################################################################
# H_k: three cliques hanging from a K_4
# ------------------------------------
# From k = 3 on, recognition refuses these: the core blocks do not form a path.

for k in (2, 3, 4):
    g, _ = gd.build_Hk(k)
    beta = local_density_bruteforce(g)
    b, _ = exact_bandwidth(g)
    print(f"H_{k}: n={g.n} beta={beta} B={b} recognized={bool(recognize_block_caterpillar(g))}")

####################################################################
# H_3 at width 3
# --------------
# The oracle returns a falsy ``Infeasible`` rather than a layout.

print(decide_bandwidth(gd.build_Hk(3)[0], 3))

####################################################################
# The spider trees T_k
# --------------------
# At k = 2 the centre has degree 5, so density is already 3 and the gap
# closes. The gap opens from k = 3 on.

for k in (2, 3):
    g, _ = gd.build_Tk(k)
    print(f"T_{k}: beta={local_density_bruteforce(g)} B={exact_bandwidth(g)[0]}")
