import json
from random import Random

import pytest

from syncgames import (
    Dfa,
    Dwa,
    ParseError,
    Pfa,
    apply_letter,
    apply_word,
    cerny,
    format_word,
    full_set,
    image,
    parse_automaton,
    parse_word,
    serialize_automaton,
    state_set,
    states_of,
)

from oracles import random_dfa


def test_apply_letter_on_cerny4():
    c4 = cerny(4)
    assert apply_letter(c4, 0, 1) == 1  # b is the cyclic shift
    assert apply_letter(c4, 2, 0) == 2  # a fixes states >= 1
    assert apply_letter(c4, 0, 0) == 1


def test_apply_letter_identity(identity_dfa):
    assert apply_letter(identity_dfa, 3, 0) == 3


def test_apply_letter_rejects_out_of_range():
    c4 = cerny(4)
    with pytest.raises(ValueError):
        apply_letter(c4, 4, 0)
    with pytest.raises(ValueError):
        apply_letter(c4, 0, 2)


def test_apply_word_folds_left_to_right():
    c4 = cerny(4)
    assert apply_word(c4, 0, (1, 1, 1)) == 3
    assert apply_word(c4, 2, ()) == 2


def test_apply_word_on_costly_loop(costly_loop_dwa):
    assert apply_word(costly_loop_dwa.dfa, 3, (1,)) == 3  # b loops at 3


def test_image_shrinks_cerny4():
    c4 = cerny(4)
    assert states_of(image(c4, full_set(4), (0,))) == [1, 2, 3]


def test_image_of_singleton_stays_singleton():
    c4 = cerny(4)
    rng = Random(3)
    for _ in range(20):
        q = rng.randrange(4)
        word = tuple(rng.randrange(2) for _ in range(rng.randrange(6)))
        img = image(c4, 1 << q, word)
        assert img == 1 << apply_word(c4, q, word)


def test_image_rejects_empty_set():
    with pytest.raises(ValueError):
        image(cerny(3), 0, (0,))


def test_image_action_composition():
    rng = Random(5)
    for _ in range(50):
        dfa = random_dfa(rng, rng.randint(1, 6), rng.randint(1, 3))
        p = state_set([q for q in range(dfa.n) if rng.random() < 0.7] or [0], dfa.n)
        u = tuple(rng.randrange(dfa.k) for _ in range(rng.randrange(4)))
        v = tuple(rng.randrange(dfa.k) for _ in range(rng.randrange(4)))
        assert image(dfa, p, u + v) == image(dfa, image(dfa, p, u), v)
        assert bin(image(dfa, p, u)).count("1") <= bin(p).count("1")


# ---------------------------------------------------------------------------
# Interchange format


def test_parse_weighted_document(costly_loop_dwa):
    doc = serialize_automaton(costly_loop_dwa)
    parsed = parse_automaton(doc)
    assert isinstance(parsed, Dwa)
    assert parsed.n == 4 and parsed.k == 2
    assert parsed.gamma[1][3] == 16


def test_parse_infers_pfa_from_null():
    doc = json.dumps({"n": 2, "alphabet": ["a"], "delta": {"a": [1, None]}})
    parsed = parse_automaton(doc)
    assert isinstance(parsed, Pfa)
    assert parsed.delta[0][1] is None


def test_parse_rejects_nonpositive_cost():
    doc = json.dumps(
        {"n": 1, "alphabet": ["a"], "delta": {"a": [0]}, "gamma": {"a": [0]}}
    )
    with pytest.raises(ParseError, match="gamma"):
        parse_automaton(doc)


def test_parse_rejects_state_out_of_range():
    doc = json.dumps({"n": 2, "alphabet": ["a"], "delta": {"a": [0, 2]}})
    with pytest.raises(ParseError, match=r"delta\['a'\]\[1\]"):
        parse_automaton(doc)


def test_parse_rejects_wrong_arity():
    doc = json.dumps({"n": 3, "alphabet": ["a"], "delta": {"a": [0, 1]}})
    with pytest.raises(ParseError, match="expected 3 entries"):
        parse_automaton(doc)


def test_parse_rejects_missing_letter():
    doc = json.dumps({"n": 1, "alphabet": ["a", "b"], "delta": {"a": [0]}})
    with pytest.raises(ParseError, match="missing entries"):
        parse_automaton(doc)


def test_parse_rejects_null_in_weighted():
    doc = json.dumps(
        {"n": 2, "alphabet": ["a"], "delta": {"a": [0, None]}, "gamma": {"a": [1, 1]}}
    )
    with pytest.raises(ParseError, match="complete"):
        parse_automaton(doc)


def test_parse_rejects_malformed_json():
    with pytest.raises(ParseError, match="JSON"):
        parse_automaton(b"{not json")


def test_parse_ignores_unknown_top_level_keys():
    doc = json.dumps({"n": 1, "alphabet": ["a"], "delta": {"a": [0]}, "budget": 15})
    assert isinstance(parse_automaton(doc), Dfa)


def test_round_trip_dfa_pfa_dwa(costly_loop_dwa, partial_cycle_pfa):
    for automaton in (cerny(4), partial_cycle_pfa, costly_loop_dwa):
        assert parse_automaton(serialize_automaton(automaton)) == automaton


def test_round_trip_is_canonical(costly_loop_dwa):
    doc = serialize_automaton(costly_loop_dwa)
    assert serialize_automaton(parse_automaton(doc)) == doc


def test_round_trip_huge_costs():
    big = 2**63 - 1
    dwa = Dwa(Dfa(("a",), ((0,),)), ((big,),))
    assert parse_automaton(serialize_automaton(dwa)).gamma[0][0] == big


def test_word_formatting_round_trip():
    alphabet = ("a", "b")
    assert parse_word("abba", alphabet) == (0, 1, 1, 0)
    assert parse_word("a b b a", alphabet) == (0, 1, 1, 0)
    assert format_word((0, 1, 1, 0), alphabet) == "abba"
    multi = ("up", "down")
    assert parse_word("up down", multi) == (0, 1)
    assert format_word((0, 1), multi) == "up down"
    with pytest.raises(ValueError):
        parse_word("c", alphabet)


def test_type_invariants():
    with pytest.raises(ValueError):
        Dfa(("a",), ((2, 0),))  # target out of range
    with pytest.raises(ValueError):
        Dfa((), ())
    with pytest.raises(ValueError):
        Dwa(Dfa(("a",), ((0,),)), ((0,),))  # cost below 1
    with pytest.raises(ValueError):
        Dwa(Dfa(("a",), ((0,),)), ((1, 1),))  # arity mismatch
