import pytest

from syncgames import Dfa, Dwa, Pfa


@pytest.fixture
def costly_loop_dwa() -> Dwa:
    """4-state weighted automaton whose shortest reset word (bbb) is far more
    expensive than the 7-letter word that dodges the priced-16 loop."""
    dfa = Dfa(("a", "b"), ((1, 1, 2, 0), (1, 2, 3, 3)))
    return Dwa(dfa, ((1, 1, 1, 1), (1, 1, 1, 16)))


@pytest.fixture
def partial_cycle_pfa() -> Pfa:
    """The partial precursor of costly_loop_dwa: b is undefined at state 3."""
    return Pfa(("a", "b"), ((1, 1, 2, 0), (1, 2, 3, None)))


@pytest.fixture
def identity_dfa() -> Dfa:
    return Dfa(("a",), ((0, 1, 2, 3),))
