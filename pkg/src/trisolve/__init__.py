"""Triangular peg solitaire engine: minimal-move search, long sweeps,
position classes and region lower bounds."""

__version__ = "0.1.0"

from .board import (  # noqa: E402
    BoardError,
    BoardGeometry,
    Coord,
    IllegalMoveError,
    Move,
    Position,
    apply_move,
    build_geometry,
    canonicalize,
    complement,
    enumerate_moves,
    legal_jumps,
    parse_position,
)
from .classes import class_signature, feasible_pair, jump_span_basis  # noqa: E402
from .merson import dynamic_full_region_bound, lower_bound, max_packing  # noqa: E402
from .search import (  # noqa: E402
    BudgetExhausted,
    Problem,
    SearchBudget,
    Solution,
    Unsolvable,
    enumerate_problems,
    min_move_distribution,
    min_move_solution,
    reduce_to_one,
    reverse_solution,
)

__all__ = [
    "BoardError",
    "BoardGeometry",
    "BudgetExhausted",
    "Coord",
    "IllegalMoveError",
    "Move",
    "Position",
    "Problem",
    "SearchBudget",
    "Solution",
    "Unsolvable",
    "apply_move",
    "build_geometry",
    "canonicalize",
    "class_signature",
    "complement",
    "dynamic_full_region_bound",
    "enumerate_moves",
    "enumerate_problems",
    "feasible_pair",
    "jump_span_basis",
    "legal_jumps",
    "lower_bound",
    "max_packing",
    "min_move_distribution",
    "min_move_solution",
    "parse_position",
    "reduce_to_one",
    "reverse_solution",
]
