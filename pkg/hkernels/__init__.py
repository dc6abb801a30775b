from .entities import Arc, ColouredMultidigraph, Pattern, new_coloured_digraph, new_pattern
from .canonical import CanonicalCode, canonical_code, canonical_form, is_isomorphic
from .reachability import Semantics, path_reachable, reach_digraph, walk_reachable
from .kernels import KernelReport, KernelStatus, constructive_b2_set, find_independent_H_absorbent, find_kernel
from .util import setup_logging
from .version import __version__
