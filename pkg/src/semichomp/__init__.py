"""Chomp on numerical semigroup posets: invariants, exact solving, winner
classification, and the torsion generalization."""

from .semigroup import NumericalSemigroup, new_semigroup, parse_generators
from .posetgame import FinitePoset, grid_poset, pairing_strategy, solve, ten_element_poset
from .statecodec import GameState, apply_move, elements, initial_state, translate
from .decider import (
    WTable,
    Verdict,
    compute_W,
    decide_winner,
    is_winning_first_move,
    smallest_winning_move,
    theoretical_bound,
)
from .families import ClassificationReport, classify, detect_shape, med_strategy

__version__ = "0.1.0"

__all__ = [
    "NumericalSemigroup",
    "new_semigroup",
    "parse_generators",
    "FinitePoset",
    "grid_poset",
    "pairing_strategy",
    "solve",
    "ten_element_poset",
    "GameState",
    "apply_move",
    "elements",
    "initial_state",
    "translate",
    "WTable",
    "Verdict",
    "compute_W",
    "decide_winner",
    "is_winning_first_move",
    "smallest_winning_move",
    "theoretical_bound",
    "ClassificationReport",
    "classify",
    "detect_shape",
    "med_strategy",
    "__version__",
]
