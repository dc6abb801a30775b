from .gadgetmap import ConstructionKind, GadgetMap, kernel_pullback
from .sums import linear_sum_digraphs, linear_sum_patterns, linear_sum_with_map
from .gadgets import gadget_f4, gadget_f5
from .f1 import f1_simplify, lift_kernel
from .witnesses import (
    BaseWitness,
    family_path_not_walk,
    family_walk_not_path,
    obstruction_digraph,
    obstruction_instance,
    odd_cycle_witness,
)
