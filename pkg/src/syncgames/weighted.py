"""Cost model for weighted automata and exact budget-constrained solvers.

The cost of applying a word at a state is the sum of the traversed
transition costs; the cost of a reset word is the worst case over all start
states.  ``budget_decide`` searches cost profiles (one position and one
accumulated cost per start state) with Pareto-dominance pruning; costs
saturate at budget+1, which keeps the space finite.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from typing import Callable, NamedTuple, Optional, Sequence, Union

from .automata import CapacityError, Dwa, Word
from .analysis import is_synchronizing, shortest_reset_word

PROFILE_CAP = 16
GAME_BUDGET_CAP = 10
WITNESS_LIMIT = 4096


class NotResetError(ValueError):
    """The word handed to sync_cost does not synchronize the automaton."""

    def __init__(self, q1: int, q2: int, end1: int, end2: int):
        super().__init__(
            f"not a reset word: states {q1} and {q2} end at {end1} != {end2}"
        )
        self.witness = (q1, q2)


class SearchCancelled(Exception):
    """A cooperative cancellation token asked the search to stop."""


@dataclass(frozen=True)
class BudgetInstance:
    """A weighted automaton together with a synchronization budget."""

    dwa: Dwa
    budget: int

    def __post_init__(self):
        if self.budget < 1:
            raise ValueError("the budget must be a positive integer")


class CostProfile(NamedTuple):
    """Where each start state currently sits and what it has paid so far."""

    positions: tuple[int, ...]
    costs: tuple[int, ...]


@dataclass(frozen=True)
class BudgetResult:
    feasible: bool
    witness: Optional[Word] = None


def word_cost(dwa: Dwa, q: int, word: Sequence[int]) -> int:
    """Sum of transition costs along the path labelled ``word`` from ``q``."""
    total = 0
    for a in word:
        if not 0 <= a < dwa.k:
            raise ValueError(f"letter {a} out of range for k={dwa.k}")
        if not 0 <= q < dwa.n:
            raise ValueError(f"state {q} out of range for n={dwa.n}")
        total += dwa.gamma[a][q]
        q = dwa.dfa.delta[a][q]
    return total


def sync_cost(dwa: Dwa, word: Sequence[int]) -> int:
    """Worst-case cost of synchronizing by ``word`` over all start states.

    ``word`` must be a reset word; otherwise a witness pair of states with
    unequal endpoints is reported.
    """
    ends = [q for q in range(dwa.n)]
    for a in word:
        ends = [dwa.dfa.delta[a][q] for q in ends]
    for q in range(1, dwa.n):
        if ends[q] != ends[0]:
            raise NotResetError(0, q, ends[0], ends[q])
    return max(word_cost(dwa, q, word) for q in range(dwa.n))


def budget_decide(
    inst: BudgetInstance,
    max_states: int = PROFILE_CAP,
    witness_limit: int = WITNESS_LIMIT,
    should_stop: Optional[Callable[[], bool]] = None,
) -> BudgetResult:
    """Is there a reset word whose worst-case cost stays within the budget?

    Best-first search over cost profiles.  A profile is pruned when another
    reached profile has the same position vector and componentwise smaller
    or equal costs; both prunings are sound because the goal predicate (all
    positions equal, all costs within budget) is monotone in the costs.
    Witness words longer than ``witness_limit`` are dropped from the result
    (the decision itself is unaffected).
    """
    dwa, budget = inst.dwa, inst.budget
    n = dwa.n
    if n > max_states:
        raise CapacityError(f"n={n} exceeds the profile search cap ({max_states})")
    if not is_synchronizing(dwa.dfa):
        return BudgetResult(False)
    saturated = budget + 1

    start = CostProfile(tuple(range(n)), (0,) * n)
    if n == 1:
        return BudgetResult(True, ())

    # Pareto antichain of cost vectors per position vector.
    frontier: dict[tuple[int, ...], list[tuple[int, ...]]] = {start.positions: [start.costs]}
    parents: dict[CostProfile, tuple[CostProfile, int]] = {}
    heap: list[tuple[int, int, int, CostProfile]] = [(0, 0, 0, start)]
    ticket = 0

    def dominated(positions: tuple[int, ...], costs: tuple[int, ...]) -> bool:
        for other in frontier.get(positions, ()):
            if all(o <= c for o, c in zip(other, costs)):
                return True
        return False

    def register(positions: tuple[int, ...], costs: tuple[int, ...]) -> None:
        kept = [o for o in frontier.get(positions, ()) if not all(c <= x for c, x in zip(costs, o))]
        kept.append(costs)
        frontier[positions] = kept

    while heap:
        if should_stop is not None and should_stop():
            raise SearchCancelled("budget search cancelled")
        _, length, _, profile = heapq.heappop(heap)
        if profile.costs not in frontier.get(profile.positions, ()):
            # A dominating profile arrived after this one was pushed.
            continue
        for a in range(dwa.k):
            drow, grow = dwa.dfa.delta[a], dwa.gamma[a]
            positions = tuple(drow[q] for q in profile.positions)
            costs = tuple(
                min(c + grow[q], saturated) for q, c in zip(profile.positions, profile.costs)
            )
            worst = max(costs)
            if len(set(positions)) == 1 and worst <= budget:
                word = _witness_word(parents, profile) + (a,)
                return BudgetResult(True, word if len(word) <= witness_limit else None)
            if dominated(positions, costs):
                continue
            register(positions, costs)
            child = CostProfile(positions, costs)
            parents[child] = (profile, a)
            ticket += 1
            heapq.heappush(heap, (worst, length + 1, ticket, child))
    return BudgetResult(False)


def _witness_word(parents, profile: CostProfile) -> Word:
    letters = []
    while profile in parents:
        profile, a = parents[profile]
        letters.append(a)
    letters.reverse()
    return tuple(letters)


def min_sync_cost(dwa: Dwa, max_states: int = PROFILE_CAP) -> Union[int, float]:
    """Least budget within which the automaton synchronizes; inf when it
    does not synchronize at all.  Binary search over budget_decide."""
    if dwa.n > max_states:
        raise CapacityError(f"n={dwa.n} exceeds the profile search cap ({max_states})")
    base = shortest_reset_word(dwa.dfa, max_states=max_states)
    if not base.synchronizing:
        return math.inf
    if base.min_length == 0:
        return 0
    lo = base.min_length  # every cost is at least 1
    hi = sync_cost(dwa, base.shortest_word)
    while lo < hi:
        mid = (lo + hi) // 2
        if budget_decide(BudgetInstance(dwa, mid), max_states=max_states).feasible:
            hi = mid
        else:
            lo = mid + 1
    return lo


def game_on_budget(
    dwa: Dwa,
    budget: int,
    max_states: int = GAME_BUDGET_CAP,
    should_stop: Optional[Callable[[], bool]] = None,
) -> bool:
    """Can the synchronizer win the coin game while the joint letter
    sequence stays within budget at every start state?

    Minimax over (cost profile, mover) nodes; both players' letters are
    charged.  A node where some accumulated cost already exceeds the budget
    is lost for the synchronizer (costs never decrease), which also rules
    out revisiting a node: below saturation every move strictly increases
    the total cost, so the explored graph is acyclic and plain memoization
    is sound.
    """
    n = dwa.n
    if n > max_states:
        raise CapacityError(f"n={n} exceeds the game-on-budget cap ({max_states})")
    if budget < 0:
        raise ValueError("the budget must be non-negative")

    start = CostProfile(tuple(range(n)), (0,) * n)
    memo: dict[tuple[CostProfile, bool], bool] = {}

    def solve(profile: CostProfile, alice: bool) -> bool:
        if should_stop is not None and should_stop():
            raise SearchCancelled("budget game search cancelled")
        costs = profile.costs
        if max(costs) > budget:
            return False
        if len(set(profile.positions)) == 1:
            return True
        key = (profile, alice)
        if key in memo:
            return memo[key]
        results = []
        for a in range(dwa.k):
            drow, grow = dwa.dfa.delta[a], dwa.gamma[a]
            positions = tuple(drow[q] for q in profile.positions)
            nxt_costs = tuple(c + grow[q] for q, c in zip(profile.positions, costs))
            results.append(solve(CostProfile(positions, nxt_costs), not alice))
            if alice and results[-1]:
                break
            if not alice and not results[-1]:
                break
        value = any(results) if alice else all(results)
        memo[key] = value
        return value

    return solve(start, True)
