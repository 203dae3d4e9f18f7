"""
Optimal layouts of block caterpillars
=====================================

Build a chain of cliques with pendant leaves, read off its local density,
and lay it out at exactly that width.
"""

from blockband import (anchor_and_augment, check_left_justified, certified_layout,
                       local_density_structured, recognize_block_caterpillar, verify_layout)
from blockband.generators import clique_chain

####################################################################
# A small block caterpillar
# -------------------------
# Three cliques of sizes 3, 5 and 4 glued at shared vertices. The middle
# clique carries two bunches of leaves, which is what pushes the density up.

g = clique_chain([3, 5, 4], leaves={(0, 1): 2, (1, 2): 6, (1, 3): 4, (2, 2): 3})
s = recognize_block_caterpillar(g)
print(s.describe())

####################################################################
# Local density
# -------------
# The structured computation reports the three components and the pair of
# spine indices that attains the maximum.

g2, s2 = anchor_and_augment(s, g)
print(local_density_structured(s2, g2).line())

####################################################################
# The layout
# ----------
# ``certified_layout`` keeps the intermediate left-justified layout so the
# structural checker can be run on it.

c = certified_layout(g)
print("bandwidth:", c.bandwidth, "verified:", verify_layout(g, c.layout))
print("violations:", check_left_justified(c.justified, c.justified.structure, c.augmented))
print("order:", c.layout.order())

####################################################################
# Which case each phase used
# --------------------------

for plan in c.justified.plans:
    print(f"phase {plan.phase}: {plan.case_tag}, carried leaves {plan.carried}")
