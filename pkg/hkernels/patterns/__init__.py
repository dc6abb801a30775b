from .transitivity import is_transitive, is_nontransitive_triple, is_induced_subpattern, minimal_nontransitive_family
from .b2 import B2Classification, B2Reason, classify_b2, complement_odd_cycle, in_B2
from .twins import blow_up, contract_true_twins, true_twins
from .obstruction import ObstructionWitness, find_obstruction
from .structural import Panchromatic, structural_panchromatic, walk_panchromatic
from .named import f1_pattern, f4_gadget_patterns, f5_gadget_patterns, separation_pattern
from .catalogue import CatalogueEntry, catalogue_table, three_vertex_catalogue
