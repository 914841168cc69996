"""Solvers and strategies for the two-player synchronization game.

Rules: coins start on every state; Alice and Bob alternate picking letters
(Alice first); all coins slide along the chosen letter's edges and coins
arriving at the same state merge.  Alice wins the moment a single coin
remains (checked after either player's half-move); Bob wins by keeping two
or more coins alive forever.

Three solvers with different cost/precision trade-offs:

* ``decide_winner`` marks the pair game (positions with two coins plus a
  sink for merged pairs) in O(n^2 k); Alice wins the full game iff she wins
  from every two-coin position.
* ``optimal_moves`` runs backward induction over the full power-set game
  and yields the exact number of Alice moves needed against optimal play.
* ``short_game_decide`` answers "can Alice force a win within the next
  ``moves`` letters"; ``moves`` counts both players' half-moves, i.e. the
  length of the joint letter sequence.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from math import comb
from typing import Optional, Union

from .automata import CapacityError, Dfa, full_set, is_singleton, states_of, step

FULL_GAME_CAP = 20

INFINITE = math.inf


class Player(Enum):
    ALICE = "ALICE"
    BOB = "BOB"


class StrategyError(Exception):
    """A winning strategy was requested from a position where none exists."""


@dataclass(frozen=True)
class GamePosition:
    """Coin-occupied states (bitmask) plus whose turn it is."""

    coins: int
    mover: Player

    def __post_init__(self):
        if self.coins == 0:
            raise ValueError("a position must hold at least one coin")

    @property
    def terminal(self) -> bool:
        return is_singleton(self.coins)


def cubic_bound(n: int) -> int:
    """Upper bound on Alice's moves in any game she wins: C(n,2)(n-2)+1."""
    return comb(n, 2) * (n - 2) + 1 if n > 2 else 1


def _value_sweep(num_nodes, succ, terminal, k):
    """Backward induction for an alternating reachability game.

    Nodes are 0..num_nodes-1; ``succ[a][i]`` is the successor of node i
    under letter a (the mover flips implicitly).  Alice pays 1 per move and
    minimizes; Bob pays nothing and maximizes.  Returns two arrays of values
    indexed by node, one per side to move; None means the side at that node
    never reaches a terminal (Bob wins from there).
    """
    va: list = [None] * num_nodes
    vb: list = [None] * num_nodes
    preds: list[list[int]] = [[] for _ in range(num_nodes)]
    for row in succ:
        for i in range(num_nodes):
            if not terminal[i]:
                preds[row[i]].append(i)
    cnt = [k] * num_nodes

    buckets: list[list[tuple[int, bool]]] = [[]]
    for i in range(num_nodes):
        if terminal[i]:
            va[i] = vb[i] = 0
            buckets[0].append((i, True))
            buckets[0].append((i, False))

    v = 0
    while v < len(buckets):
        for node, alice_side in buckets[v]:
            if alice_side:
                # (node, Alice) settled: Bob predecessors lose one open option.
                for i in preds[node]:
                    if vb[i] is None and not terminal[i]:
                        cnt[i] -= 1
                        if cnt[i] == 0:
                            vb[i] = v
                            buckets[v].append((i, False))
            else:
                # (node, Bob) settled at v: Alice predecessors win in v+1.
                for i in preds[node]:
                    if va[i] is None and not terminal[i]:
                        va[i] = v + 1
                        if v + 1 == len(buckets):
                            buckets.append([])
                        buckets[v + 1].append((i, True))
        v += 1
    return va, vb


# ---------------------------------------------------------------------------
# Pair game (Theorem-style O(n^2 k) winner decision)


class PairGameTable:
    """Marking and exact values for all two-coin positions.

    Node (pair, ALICE) is marked iff some letter leads to a marked node;
    (pair, BOB) iff all letters do; merged pairs feed the always-marked
    sink.  Values count Alice's moves to force the merge of that pair.
    """

    def __init__(self, dfa: Dfa):
        self.dfa = dfa
        n = dfa.n
        self.n = n
        self.num_pairs = n * (n - 1) // 2
        sink = self.num_pairs
        succ = []
        for row in dfa.delta:
            succ_a = []
            for p in range(n):
                for q in range(p + 1, n):
                    tp, tq = row[p], row[q]
                    succ_a.append(sink if tp == tq else self._pid(tp, tq))
            succ_a.append(sink)
            succ.append(succ_a)
        terminal = [False] * self.num_pairs + [True]
        self._va, self._vb = _value_sweep(self.num_pairs + 1, succ, terminal, dfa.k)
        self._succ = succ

    def _pid(self, p: int, q: int) -> int:
        if p > q:
            p, q = q, p
        return p * self.n - p * (p + 1) // 2 + (q - p - 1)

    def marked(self, p: int, q: int, mover: Player) -> bool:
        values = self._va if mover is Player.ALICE else self._vb
        return values[self._pid(p, q)] is not None

    def value(self, p: int, q: int, mover: Player) -> Union[int, float]:
        values = self._va if mover is Player.ALICE else self._vb
        v = values[self._pid(p, q)]
        return INFINITE if v is None else v

    def strategy(self, p: int, q: int) -> int:
        """Alice's letter at a marked pair: least letter whose successor has
        the least value (guarantees strict progress toward the sink)."""
        i = self._pid(p, q)
        if self._va[i] is None:
            raise StrategyError(f"Alice cannot win the pair game from {{{p}, {q}}}")
        best_letter, best = 0, INFINITE
        for a in range(self.dfa.k):
            j = self._succ[a][i]
            v = 0 if j == self.num_pairs else self._vb[j]
            if v is not None and v < best:
                best, best_letter = v, a
        return best_letter

    @property
    def winner(self) -> Player:
        if all(v is not None for v in self._va[: self.num_pairs]):
            return Player.ALICE
        return Player.BOB


@lru_cache(maxsize=128)
def solve_pair_game(dfa: Dfa) -> PairGameTable:
    return PairGameTable(dfa)


def decide_winner(dfa: Dfa) -> Player:
    """Who wins the synchronization game under optimal play."""
    return solve_pair_game(dfa).winner


# ---------------------------------------------------------------------------
# Full power-set game


class GameValueTable:
    """Exact Alice-move counts for every position of the full game.

    ``value`` is the number of moves Alice still needs against optimal Bob
    (infinity when Bob can survive forever); ``best_move`` realizes it, ties
    broken by least letter index.
    """

    def __init__(self, dfa: Dfa):
        n = dfa.n
        self.dfa = dfa
        size = 1 << n
        img = []
        for row in dfa.delta:
            bit = [1 << row[q] for q in range(n)]
            img_a = [0] * size
            for m in range(1, size):
                low = m & -m
                img_a[m] = img_a[m ^ low] | bit[low.bit_length() - 1]
            img.append(img_a)
        self.img = img
        terminal = bytearray(size)
        for q in range(n):
            terminal[1 << q] = 1
        # Node 0 (empty set) is unreachable; make it terminal so the sweep
        # never builds predecessor entries for it.
        terminal[0] = 1
        self._va, self._vb = _value_sweep(size, img, terminal, dfa.k)

    def value(self, coins: int, mover: Player) -> Union[int, float]:
        if coins == 0:
            raise ValueError("a position must hold at least one coin")
        values = self._va if mover is Player.ALICE else self._vb
        v = values[coins]
        return INFINITE if v is None else v

    @property
    def start_value(self) -> Union[int, float]:
        return self.value(full_set(self.dfa.n), Player.ALICE)

    def best_move(self, coins: int, mover: Player) -> Optional[int]:
        """Value-optimal letter, or None at a terminal position."""
        if is_singleton(coins):
            return None
        if mover is Player.ALICE:
            succ_vals = [self._vb[img_a[coins]] for img_a in self.img]
            finite = [(v, a) for a, v in enumerate(succ_vals) if v is not None]
            if not finite:
                return 0
            return min(finite)[1]
        succ_vals = [self._va[img_a[coins]] for img_a in self.img]
        for a, v in enumerate(succ_vals):
            if v is None:
                return a
        return max((v, -a) for a, v in enumerate(succ_vals))[1] * -1


@lru_cache(maxsize=32)
def _solve_full_game(dfa: Dfa) -> GameValueTable:
    return GameValueTable(dfa)


def optimal_moves(dfa: Dfa, max_states: int = FULL_GAME_CAP) -> GameValueTable:
    """Backward induction over all 2^n - 1 coin sets (times the mover bit)."""
    if dfa.n > max_states:
        raise CapacityError(f"n={dfa.n} exceeds the full-game cap ({max_states})")
    return _solve_full_game(dfa)


# ---------------------------------------------------------------------------
# Win-within-l decision
#
# ``moves`` counts letters of the joint play (both players' half-moves).
# The natural recursion is
#     win(P, side, m) = True                       if |P| = 1,
#                       False                      if m = 0,
#                       OR_a  win(P.a, other, m-1) if side is Alice,
#                       AND_a win(P.a, other, m-1) if side is Bob,
# evaluated here without Python recursion so that large move budgets cannot
# overflow the interpreter stack.


def short_game_decide(dfa: Dfa, moves: int, max_states: int = FULL_GAME_CAP) -> bool:
    """Can Alice force a win within the next ``moves`` half-moves?

    Memoized on (coin set, remaining moves, side).
    """
    return _short_game(dfa, moves, max_states, memo={})


def short_game_decide_lowmem(dfa: Dfa, moves: int, max_states: int = FULL_GAME_CAP) -> bool:
    """Same decision by plain depth-first unfolding: no memo table, auxiliary
    storage proportional to the remaining-move depth."""
    return _short_game(dfa, moves, max_states, memo=None)


def _short_game(dfa: Dfa, moves: int, max_states: int, memo: Optional[dict]) -> bool:
    if moves < 0:
        raise ValueError("the move budget must be non-negative")
    if dfa.n > max_states:
        raise CapacityError(f"n={dfa.n} exceeds the full-game cap ({max_states})")
    # When Alice can win at all she can do it within cubic_bound(n) of her
    # own moves, hence within twice that many letters; beyond this budget the
    # question reduces to the winner.
    if moves >= 2 * cubic_bound(dfa.n):
        return decide_winner(dfa) is Player.ALICE

    k = dfa.k
    root = (full_set(dfa.n), moves, True)

    def settled(mask: int, m: int) -> Optional[bool]:
        if is_singleton(mask):
            return True
        if m == 0:
            return False
        return None

    # Frame: [mask, m, alice_side, next_letter]; an OR node short-circuits on
    # the first True child, an AND node on the first False.
    stack = [[root[0], moves, True, 0]]
    result: Optional[bool] = settled(root[0], moves)
    if result is not None:
        return result
    while stack:
        mask, m, alice_side, next_a = stack[-1]
        if result is not None:
            # A child just finished.
            if alice_side == result:
                # OR node saw True / AND node saw False: decided.
                stack.pop()
                if memo is not None:
                    memo[(mask, m, alice_side)] = result
                continue
            result = None
        if next_a == k:
            result = not alice_side
            stack.pop()
            if memo is not None:
                memo[(mask, m, alice_side)] = result
            continue
        stack[-1][3] += 1
        child_mask = step(dfa, mask, next_a)
        child = (child_mask, m - 1, not alice_side)
        value = settled(child_mask, m - 1)
        if value is None and memo is not None:
            value = memo.get(child)
        if value is not None:
            result = value
        else:
            stack.append([child_mask, m - 1, not alice_side, 0])
    assert result is not None
    return result


# ---------------------------------------------------------------------------
# Playable strategies


def alice_move(
    dfa: Dfa,
    pos: GamePosition,
    max_states: int = FULL_GAME_CAP,
    use_pair_strategy: Optional[bool] = None,
) -> int:
    """A winning letter for Alice (requires that she wins the game at all).

    Within the full-solver cap this is the exact value-optimal move; beyond
    it (or when ``use_pair_strategy`` forces it) Alice fixes the coin pair
    with the least pair-game value and plays as if no other coins existed,
    which still wins: each round either merges the pair or strictly lowers
    its value, and merges can happen at most n-1 times.
    """
    if pos.mover is not Player.ALICE:
        raise ValueError("it is not Alice's turn")
    if pos.terminal:
        raise ValueError("the game is already over")
    if use_pair_strategy is None:
        use_pair_strategy = dfa.n > max_states
    if not use_pair_strategy:
        table = optimal_moves(dfa, max_states)
        if table.value(pos.coins, Player.ALICE) == INFINITE:
            raise StrategyError("Alice cannot force a win from this position")
        move = table.best_move(pos.coins, Player.ALICE)
        assert move is not None
        return move
    # The pair strategy is sound when every pair is Alice-winnable, i.e. when
    # she wins the game outright (only then does it certify every position).
    if decide_winner(dfa) is not Player.ALICE:
        raise StrategyError("Alice has no winning strategy on this automaton")
    table = solve_pair_game(dfa)
    coins = states_of(pos.coins)
    _, p, q = min(
        (table.value(p, q, Player.ALICE), p, q)
        for i, p in enumerate(coins)
        for q in coins[i + 1 :]
    )
    return table.strategy(p, q)


def bob_move(
    dfa: Dfa,
    pos: GamePosition,
    max_states: int = FULL_GAME_CAP,
    use_pair_strategy: Optional[bool] = None,
) -> int:
    """Bob's reply: keep an unkillable pair alive if one exists, otherwise
    delay Alice as long as possible.  Ties go to the least letter index."""
    if pos.mover is not Player.BOB:
        raise ValueError("it is not Bob's turn")
    if pos.terminal:
        raise ValueError("the game is already over")
    if use_pair_strategy is None:
        use_pair_strategy = dfa.n > max_states
    if not use_pair_strategy:
        move = optimal_moves(dfa, max_states).best_move(pos.coins, Player.BOB)
        assert move is not None
        return move

    table = solve_pair_game(dfa)
    coins = states_of(pos.coins)
    for i, p in enumerate(coins):
        for q in coins[i + 1 :]:
            if not table.marked(p, q, Player.BOB):
                for a in range(dfa.k):
                    row = dfa.delta[a]
                    tp, tq = row[p], row[q]
                    if tp != tq and not table.marked(tp, tq, Player.ALICE):
                        return a
    # Bob is lost; heuristic delay: maximize the smallest pair value Alice
    # will face after his move.
    best_letter, best_score = 0, -INFINITE
    for a in range(dfa.k):
        succ = step(dfa, pos.coins, a)
        if is_singleton(succ):
            score = -1.0
        else:
            ss = states_of(succ)
            score = min(
                table.value(p, q, Player.ALICE) for i, p in enumerate(ss) for q in ss[i + 1 :]
            )
        if score > best_score:
            best_score, best_letter = score, a
    return best_letter


def verify_bob_cerny_strategy(n: int) -> bool:
    """Check the scripted survival strategy for Bob on the n-state cyclic
    one-bump automaton (letters: a bumps 0 to 1 and fixes the rest, b is the
    cyclic shift).

    Bob watches the coins that start on states n-1 and 1 and answers with
    ``a`` except when they sit on {n-2, 0} or {0, 2}, where he answers ``b``.
    Every Alice reply is explored; True means the tracked coins never land
    on one state before the configuration space (pair, mover) is exhausted.
    """
    if n <= 3:
        raise ValueError("the scripted strategy is defined for n > 3")

    def act(q: int, a: int) -> int:
        if a == 0:
            return 1 if q == 0 else q
        return (q + 1) % n

    start = (frozenset({n - 1, 1}), Player.ALICE)
    seen = {start}
    frontier = [start]
    while frontier:
        pair, mover = frontier.pop()
        if mover is Player.ALICE:
            letters = range(2)
        else:
            letters = [1] if pair in ({n - 2, 0}, {0, 2}) else [0]
        for a in letters:
            nxt = frozenset(act(q, a) for q in pair)
            if len(nxt) == 1:
                return False
            node = (nxt, Player.BOB if mover is Player.ALICE else Player.ALICE)
            if node not in seen:
                seen.add(node)
                frontier.append(node)
    return True
