import math
from random import Random

import pytest

from syncgames import (
    BudgetInstance,
    CapacityError,
    Dfa,
    Dwa,
    NotResetError,
    Player,
    SearchCancelled,
    apply_word,
    budget_decide,
    cerny,
    cubic_bound,
    decide_winner,
    game_on_budget,
    min_sync_cost,
    parse_word,
    shortest_reset_word,
    sync_cost,
    word_cost,
)

from oracles import brute_budget_feasible, brute_min_sync_cost, random_dwa

BBB = (1, 1, 1)


def cheap_word(dwa):
    return parse_word("aababaa", dwa.dfa.alphabet)


# ---------------------------------------------------------------------------
# costs


def test_word_cost_examples(costly_loop_dwa):
    assert word_cost(costly_loop_dwa, 3, BBB) == 48
    assert word_cost(costly_loop_dwa, 0, BBB) == 3
    assert word_cost(costly_loop_dwa, 2, ()) == 0


def test_word_cost_additivity():
    rng = Random(107)
    for _ in range(40):
        dwa = random_dwa(rng, rng.randint(1, 5), 2)
        q = rng.randrange(dwa.n)
        u = tuple(rng.randrange(2) for _ in range(rng.randrange(5)))
        v = tuple(rng.randrange(2) for _ in range(rng.randrange(5)))
        assert word_cost(dwa, q, u + v) == word_cost(dwa, q, u) + word_cost(
            dwa, apply_word(dwa.dfa, q, u), v
        )


def test_sync_cost_examples(costly_loop_dwa):
    assert sync_cost(costly_loop_dwa, BBB) == 48
    assert sync_cost(costly_loop_dwa, cheap_word(costly_loop_dwa)) == 7


def test_sync_cost_rejects_non_reset_word(costly_loop_dwa):
    with pytest.raises(NotResetError) as exc:
        sync_cost(costly_loop_dwa, (0,))
    q1, q2 = exc.value.witness
    assert apply_word(costly_loop_dwa.dfa, q1, (0,)) != apply_word(costly_loop_dwa.dfa, q2, (0,))


def test_sync_cost_one_state_empty_word():
    dwa = Dwa(Dfa(("a",), ((0,),)), ((5,),))
    assert sync_cost(dwa, ()) == 0


def test_sync_cost_at_least_length():
    rng = Random(109)
    for _ in range(30):
        dwa = random_dwa(rng, rng.randint(1, 5), 2)
        result = shortest_reset_word(dwa.dfa)
        if result.synchronizing:
            assert sync_cost(dwa, result.shortest_word) >= result.min_length


# ---------------------------------------------------------------------------
# budget decision


def test_budget_seven_is_feasible(costly_loop_dwa):
    result = budget_decide(BudgetInstance(costly_loop_dwa, 7))
    assert result.feasible
    assert sync_cost(costly_loop_dwa, result.witness) <= 7


def test_budget_two_is_infeasible(costly_loop_dwa):
    assert not budget_decide(BudgetInstance(costly_loop_dwa, 2)).feasible
    assert not brute_budget_feasible(costly_loop_dwa, 2)


def test_budget_forty_eight_is_feasible(costly_loop_dwa):
    result = budget_decide(BudgetInstance(costly_loop_dwa, 48))
    assert result.feasible
    assert sync_cost(costly_loop_dwa, result.witness) <= 48


def test_budget_matches_word_enumeration():
    rng = Random(113)
    for _ in range(50):
        dwa = random_dwa(rng, rng.randint(2, 5), 2)
        budget = rng.randint(1, 12)
        got = budget_decide(BudgetInstance(dwa, budget)).feasible
        assert got == brute_budget_feasible(dwa, budget)


def test_budget_monotone():
    rng = Random(127)
    for _ in range(20):
        dwa = random_dwa(rng, rng.randint(2, 4), 2)
        answers = [budget_decide(BudgetInstance(dwa, b)).feasible for b in range(1, 13)]
        assert answers == sorted(answers)


def test_budget_witness_limit_keeps_decision(costly_loop_dwa):
    result = budget_decide(BudgetInstance(costly_loop_dwa, 7), witness_limit=2)
    assert result.feasible and result.witness is None


def test_budget_cap_and_validation(costly_loop_dwa):
    wide = Dwa(Dfa(("a",), (tuple(0 for _ in range(17)),)), ((1,) * 17,))
    with pytest.raises(CapacityError):
        budget_decide(BudgetInstance(wide, 5))
    with pytest.raises(ValueError):
        BudgetInstance(costly_loop_dwa, 0)


def test_budget_on_non_synchronizing():
    dwa = Dwa(Dfa(("a", "b"), ((1, 0), (0, 1))), ((1, 1), (1, 1)))
    assert not budget_decide(BudgetInstance(dwa, 100)).feasible


def test_budget_cancellation(costly_loop_dwa):
    with pytest.raises(SearchCancelled):
        budget_decide(BudgetInstance(costly_loop_dwa, 7), should_stop=lambda: True)


# ---------------------------------------------------------------------------
# minimum cost


def test_min_sync_cost_of_costly_loop(costly_loop_dwa):
    assert min_sync_cost(costly_loop_dwa) == 7
    assert brute_min_sync_cost(costly_loop_dwa, 7) == 7


def test_min_sync_cost_unit_weights_equals_reset_length():
    rng = Random(131)
    for _ in range(25):
        n = rng.randint(1, 5)
        dfa = random_dwa(rng, n, 2).dfa
        dwa = Dwa(dfa, tuple(tuple(1 for _ in range(n)) for _ in range(2)))
        expected = shortest_reset_word(dfa)
        got = min_sync_cost(dwa)
        if expected.synchronizing:
            assert got == expected.min_length
        else:
            assert got == math.inf


def test_min_sync_cost_non_synchronizing_is_infinite():
    dwa = Dwa(Dfa(("a", "b"), ((1, 0), (0, 1))), ((1, 1), (1, 1)))
    assert min_sync_cost(dwa) == math.inf


# ---------------------------------------------------------------------------
# game on budget


def test_game_on_budget_zero():
    one = Dwa(Dfa(("a",), ((0,),)), ((1,),))
    assert game_on_budget(one, 0) is True
    two = Dwa(Dfa(("a", "b"), ((0, 0), (1, 1))), ((1, 1), (1, 1)))
    assert game_on_budget(two, 0) is False


def test_game_on_budget_flip_point(costly_loop_dwa):
    # pinned by scanning: the engine needs budget 37 to absorb Bob's detours
    assert game_on_budget(costly_loop_dwa, 36) is False
    assert game_on_budget(costly_loop_dwa, 37) is True


def test_game_on_budget_agrees_with_winner_at_large_budget(costly_loop_dwa):
    assert decide_winner(costly_loop_dwa.dfa) is Player.ALICE
    assert game_on_budget(costly_loop_dwa, 64) is True


def test_game_on_budget_unit_costs_agree_with_winner():
    rng = Random(137)
    for _ in range(25):
        n = rng.randint(1, 4)
        dfa = random_dwa(rng, n, 2).dfa
        dwa = Dwa(dfa, tuple(tuple(1 for _ in range(n)) for _ in range(2)))
        # with unit costs a winning game fits in 2*bound - 1 letters
        budget = 2 * cubic_bound(n)
        assert game_on_budget(dwa, budget) == (decide_winner(dfa) is Player.ALICE)


def test_game_on_budget_monotone():
    rng = Random(139)
    for _ in range(15):
        dwa = random_dwa(rng, rng.randint(1, 4), 2, max_cost=3)
        answers = [game_on_budget(dwa, b) for b in range(0, 16, 3)]
        assert answers == sorted(answers)


def test_game_on_budget_bob_win_stays_false():
    c5 = cerny(5)
    dwa = Dwa(c5, tuple(tuple(1 for _ in range(5)) for _ in range(2)))
    assert game_on_budget(dwa, 40) is False


def test_game_on_budget_cap():
    wide = Dwa(Dfa(("a",), (tuple(0 for _ in range(11)),)), ((1,) * 11,))
    with pytest.raises(CapacityError):
        game_on_budget(wide, 5)


def test_game_on_budget_cancellation(costly_loop_dwa):
    with pytest.raises(SearchCancelled):
        game_on_budget(costly_loop_dwa, 37, should_stop=lambda: True)
