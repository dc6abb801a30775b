from .bundle import Bundle, read_bundle, write_bundle
from .runner import NoneInBounds, SearchOutcome, Witness, build_witness, locate_instance, resume, run_search
from .state import Cursor, SearchState, SearchStats, SearchStatus, load_state, save_state
from .targets import Evaluation, SearchMode, SearchPredicate, SearchTarget, Verdict, obstruction_vertex_bound

search_predicate = SearchPredicate
