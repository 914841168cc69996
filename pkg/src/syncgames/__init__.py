"""Synchronization games, reset words, and budget-constrained synchronization."""

from .automata import (
    CapacityError,
    Dfa,
    Dwa,
    ParseError,
    Pfa,
    Word,
    apply_letter,
    apply_word,
    format_word,
    full_set,
    image,
    is_singleton,
    iter_states,
    letter_index,
    parse_automaton,
    parse_word,
    serialize_automaton,
    state_set,
    states_of,
    step,
)
from .analysis import (
    AnalysisResult,
    careful_shortest_word,
    is_synchronizing,
    shortest_reset_word,
)
from .game import (
    GamePosition,
    GameValueTable,
    PairGameTable,
    Player,
    StrategyError,
    alice_move,
    bob_move,
    cubic_bound,
    decide_winner,
    optimal_moves,
    short_game_decide,
    short_game_decide_lowmem,
    solve_pair_game,
    verify_bob_cerny_strategy,
)
from .weighted import (
    BudgetInstance,
    BudgetResult,
    CostProfile,
    NotResetError,
    SearchCancelled,
    budget_decide,
    game_on_budget,
    min_sync_cost,
    sync_cost,
    word_cost,
)
from .constructions import (
    CnfFormula,
    cerny,
    duplication,
    eppstein_qsat,
    parse_dimacs,
    pfa_to_dwa,
    psi0,
)

__version__ = "0.1.0"

__all__ = [
    "AnalysisResult",
    "BudgetInstance",
    "BudgetResult",
    "CapacityError",
    "CnfFormula",
    "CostProfile",
    "Dfa",
    "Dwa",
    "GamePosition",
    "GameValueTable",
    "NotResetError",
    "PairGameTable",
    "ParseError",
    "Pfa",
    "Player",
    "SearchCancelled",
    "StrategyError",
    "Word",
    "alice_move",
    "apply_letter",
    "apply_word",
    "bob_move",
    "budget_decide",
    "careful_shortest_word",
    "cerny",
    "cubic_bound",
    "decide_winner",
    "duplication",
    "eppstein_qsat",
    "format_word",
    "full_set",
    "game_on_budget",
    "image",
    "is_singleton",
    "is_synchronizing",
    "iter_states",
    "letter_index",
    "min_sync_cost",
    "optimal_moves",
    "parse_automaton",
    "parse_dimacs",
    "parse_word",
    "pfa_to_dwa",
    "psi0",
    "serialize_automaton",
    "shortest_reset_word",
    "short_game_decide",
    "short_game_decide_lowmem",
    "solve_pair_game",
    "state_set",
    "states_of",
    "step",
    "sync_cost",
    "verify_bob_cerny_strategy",
    "word_cost",
]
