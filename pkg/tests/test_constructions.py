import itertools
from random import Random

import pytest

from syncgames import (
    CapacityError,
    CnfFormula,
    ParseError,
    Pfa,
    Player,
    budget_decide,
    careful_shortest_word,
    cerny,
    decide_winner,
    duplication,
    eppstein_qsat,
    is_synchronizing,
    optimal_moves,
    parse_dimacs,
    pfa_to_dwa,
    psi0,
    shortest_reset_word,
    short_game_decide,
)

from oracles import qsat_game_winner, random_pfa, random_synchronizing_dfa


# ---------------------------------------------------------------------------
# cerny


def test_cerny2_table():
    c2 = cerny(2)
    assert c2.delta[0] == (1, 1)  # a bumps 0, fixes the rest
    assert c2.delta[1] == (1, 0)  # b cycles


def test_cerny_rejects_small_n():
    with pytest.raises(ValueError):
        cerny(1)


@pytest.mark.parametrize("n", range(2, 7))
def test_cerny_series_properties(n):
    dfa = cerny(n)
    assert is_synchronizing(dfa)
    assert shortest_reset_word(dfa).min_length == (n - 1) ** 2


def test_cerny5_is_bob_win():
    assert decide_winner(cerny(5)) is Player.BOB


# ---------------------------------------------------------------------------
# duplication


def test_duplication_transition_shape():
    base = cerny(3)
    dup = duplication(base, b=1, q0=0)
    n = base.n
    for a in range(base.k):
        for q in range(n):
            # level 0 mirrors the base automaton one level up
            assert dup.delta[a][q] == n + base.delta[a][q]
            # level 1: b drops back down, anything else resets to (q0, 1)
            assert dup.delta[a][n + q] == (q if a == 1 else n + 0)


def test_duplication_pad_odd_adds_reset_state():
    dup = duplication(cerny(4), pad_odd=True)
    assert dup.n == 9
    for a in range(dup.k):
        assert dup.delta[a][8] == 4 + 0


def test_duplication_needs_two_letters(identity_dfa):
    with pytest.raises(ValueError):
        duplication(identity_dfa)


def test_duplication_validates_parameters():
    with pytest.raises(ValueError):
        duplication(cerny(3), b=5)
    with pytest.raises(ValueError):
        duplication(cerny(3), q0=7)


@pytest.mark.parametrize("n", range(2, 7))
def test_cerny_duplication_resets_in_two(n):
    assert shortest_reset_word(duplication(cerny(n))).min_length == 2


def test_random_duplication_resets_in_at_most_two():
    rng = Random(89)
    for _ in range(25):
        base = random_synchronizing_dfa(rng, rng.randint(2, 6), 2)
        result = shortest_reset_word(duplication(base))
        assert result.min_length <= 2
        # length 1 only when some non-b letter maps everything onto q0
        collapses = any(
            a != 1 and all(base.delta[a][q] == 0 for q in range(base.n))
            for a in range(base.k)
        )
        assert result.min_length == (1 if collapses else 2)


def test_duplication_stretches_the_game():
    base = cerny(3)
    dup = duplication(base)
    assert optimal_moves(dup).start_value == shortest_reset_word(base).min_length + 1


# ---------------------------------------------------------------------------
# CNF formulas


def test_cnf_rejects_degenerate_clause():
    with pytest.raises(ValueError, match="degenerate"):
        CnfFormula(2, (frozenset({1, -1}),))


def test_cnf_rejects_out_of_range_literal():
    with pytest.raises(ValueError):
        CnfFormula(2, (frozenset({3}),))
    with pytest.raises(ValueError):
        CnfFormula(2, (frozenset({0}),))


def test_parse_dimacs_demo_file():
    text = (
        "c demo\n"
        "p cnf 3 4\n"
        "1 2 3 0\n"
        "-1 2 3 0\n"
        "1 -2 3 0\n"
        "-2 -3 0\n"
    )
    assert parse_dimacs(text) == psi0()


def test_parse_dimacs_errors():
    with pytest.raises(ParseError, match="header"):
        parse_dimacs("1 2 0\n")
    with pytest.raises(ParseError, match="declares"):
        parse_dimacs("p cnf 2 3\n1 0\n")
    with pytest.raises(ParseError, match="literal"):
        parse_dimacs("p cnf 2 1\n1 x 0\n")


# ---------------------------------------------------------------------------
# the CNF game gadget


def test_psi0_gadget_size():
    gadget = eppstein_qsat(psi0())
    assert gadget.n == 17  # (3 + 1) * 4 rows + sink
    assert short_game_decide(gadget, 3) is True


def test_gadget_rows_die_iff_clause_satisfied():
    rng = Random(97)
    for _ in range(40):
        nv = rng.randint(1, 3)
        formula = _random_formula(rng, nv, rng.randint(1, 4))
        gadget = eppstein_qsat(formula)
        width = nv + 1
        z = len(formula.clauses) * width
        for bits in itertools.product((True, False), repeat=nv):
            assignment = {j + 1: bits[j] for j in range(nv)}
            word = tuple(0 if bits[j] else 1 for j in range(nv))
            for i, clause in enumerate(formula.clauses):
                end = i * width
                for a in word:
                    end = gadget.delta[a][end]
                satisfied = any(assignment[abs(l)] == (l > 0) for l in clause)
                assert (end == z) == satisfied


def test_single_positive_clause_is_a_one_move_win():
    gadget = eppstein_qsat(CnfFormula(1, (frozenset({1}),)))
    table = optimal_moves(gadget)
    assert table.start_value == 1
    assert table.best_move((1 << gadget.n) - 1, Player.ALICE) == 0  # letter a


def _random_formula(rng: Random, num_vars: int, num_clauses: int) -> CnfFormula:
    clauses = []
    for _ in range(num_clauses):
        size = rng.randint(1, min(3, num_vars))
        variables = rng.sample(range(1, num_vars + 1), size)
        clauses.append(frozenset(v if rng.random() < 0.5 else -v for v in variables))
    return CnfFormula(num_vars, tuple(clauses))


def test_reduction_agrees_with_assignment_game_exhaustive_one_var():
    clauses = [frozenset({1}), frozenset({-1})]
    formulas = [CnfFormula(1, (c,)) for c in clauses]
    formulas += [CnfFormula(1, (c1, c2)) for c1 in clauses for c2 in clauses]
    for formula in formulas:
        gadget = eppstein_qsat(formula)
        assert qsat_game_winner(formula) == short_game_decide(gadget, formula.num_vars)


def test_reduction_agrees_with_assignment_game_sampled():
    rng = Random(101)
    for _ in range(150):
        nv = rng.randint(1, 3)
        formula = _random_formula(rng, nv, rng.randint(1, 4))
        gadget = eppstein_qsat(formula)
        assert qsat_game_winner(formula) == short_game_decide(gadget, nv)


def test_gadget_rejects_empty_inputs():
    with pytest.raises(ValueError):
        eppstein_qsat(CnfFormula(0, ()))
    with pytest.raises(ValueError):
        eppstein_qsat(CnfFormula(2, ()))


# ---------------------------------------------------------------------------
# partial -> weighted reduction


def test_reduction_on_four_state_pfa(partial_cycle_pfa, costly_loop_dwa):
    inst = pfa_to_dwa(partial_cycle_pfa)
    assert inst.budget == 15
    assert inst.dwa == costly_loop_dwa
    assert inst.dwa.gamma[1][3] == 16
    assert inst.dwa.dfa.delta[1][3] == 3  # completed as a self-loop


def test_reduction_of_total_pfa_is_unit_cost():
    pfa = Pfa(("a", "b"), ((1, 1), (0, 1)))
    inst = pfa_to_dwa(pfa)
    assert all(c == 1 for row in inst.dwa.gamma for c in row)
    assert inst.budget == 3


def test_reduction_cap():
    n = 63
    pfa = Pfa(("a",), (tuple(0 for _ in range(n)),))
    with pytest.raises(CapacityError):
        pfa_to_dwa(pfa)


def test_reduction_round_trip():
    rng = Random(103)
    for _ in range(60):
        pfa = random_pfa(rng, rng.randint(2, 6), 2)
        careful = careful_shortest_word(pfa)
        feasible = budget_decide(pfa_to_dwa(pfa)).feasible
        assert careful.synchronizing == feasible
