from .portfolio import PortfolioOutcome, Strategy, arrange, portfolio_run
from .propagation import (ContractViolation, FailPropagator, Propagator, PropStatus,
                          check_step, propagate_fixpoint)
from .search import (EXHAUSTED, Asset, Decision, Exhausted, Incumbent, NoGood,
                     NoGoodPropagator, Restart, Search, SearchResult, SearchStats,
                     Solution, UnsoundNoGood, extract_nogood, luby, search_all,
                     search_restarting)
from .store import Store, assign, bits, remove_value, to_mask

__all__ = [
    "Asset", "ContractViolation", "Decision", "EXHAUSTED", "Exhausted", "FailPropagator",
    "Incumbent", "NoGood", "NoGoodPropagator", "PortfolioOutcome", "PropStatus",
    "Propagator", "Restart", "Search", "SearchResult", "SearchStats", "Solution",
    "Store", "Strategy", "UnsoundNoGood", "arrange", "assign", "bits", "check_step",
    "extract_nogood", "luby", "portfolio_run", "propagate_fixpoint", "remove_value",
    "search_all", "search_restarting", "to_mask",
]
