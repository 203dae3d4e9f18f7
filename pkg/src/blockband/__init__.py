"""Bandwidth of block caterpillars: recognition, local density, optimal layouts,
an exact oracle for small graphs, and the gadgets of the hardness reduction."""

from .density import DensityReport, local_density_bruteforce, local_density_structured
from .graph import (Graph, GraphFormatError, Layout, LayoutError, condense, diameter, make_layout,
                    parse_graph, parse_layout, serialize_graph, serialize_layout, verify_layout)
from .layout import (CliqueStarPlan, JustifiedLayout, check_left_justified, layout_block_caterpillar,
                     layout_clique_star, optimal_layout, repair_faithful, certified_layout, Certified)
from .oracle import (BudgetExhausted, Infeasible, SearchBudget, decide_bandwidth, enumerate_optimal,
                     exact_bandwidth)
from .recognition import (BlockDecomposition, CaterpillarStructure, Rejection, RejectionReason,
                          anchor_and_augment, block_decomposition, is_block_graph,
                          recognize_block_caterpillar)

__all__ = [name for name in dir() if not name.startswith("_")]
