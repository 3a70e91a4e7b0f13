"""Two-player zero-sum complex matrix games."""
from .domination import (
    DominationClaim,
    EliminationTrace,
    PairMix,
    Single,
    check_elimination_condition,
    dominates_single,
    find_mixed_domination,
    find_pair_domination,
    iterated_eliminate,
)
from .equalizing import equalizing_equilibrium, smallest_equalizing_argument, solve_equalizing_system
from .game import (
    COLUMN,
    ROW,
    ComplexGame,
    EquilibriumCandidate,
    affine_transform,
    best_response_envelope,
    classify,
    payoff,
    pure_equilibria,
    pure_security,
    verify_equilibrium,
)
from .kernels import BACKEND
from .lp import LPError, build_lcp, embed_player, lcp_candidate, minimax, simplex_solve, verify_lcp
from .numerics import DEFAULT_TOL, Tolerances, solve_complex_linear
from .polytope import Pair, StrategyPolytope, Trivial
from .solver import SolveError, solve

__version__ = "0.1.0"
