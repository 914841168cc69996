"""Synchronizability checks and exact shortest reset words.

``is_synchronizing`` is polynomial (pair-merging criterion) and is used as a
preflight before the exponential subset searches.  ``shortest_reset_word``
runs a breadth-first search on the power automaton from the full state set;
``careful_shortest_word`` does the same for partial automata, where a subset
has no successor under a letter that is undefined at any of its members.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Optional, Union

from .automata import CapacityError, Dfa, Pfa, Word, full_set, is_singleton, iter_states

SUBSET_CAP = 64


@dataclass(frozen=True)
class AnalysisResult:
    synchronizing: bool
    shortest_word: Optional[Word] = None
    min_length: Optional[int] = None

    @classmethod
    def found(cls, word: Word) -> "AnalysisResult":
        return cls(True, word, len(word))

    @classmethod
    def negative(cls) -> "AnalysisResult":
        return cls(False)


def is_synchronizing(dfa: Dfa) -> bool:
    """True iff some word maps the whole state set to one state.

    Uses the classical pair criterion: the automaton is synchronizing iff
    every pair of states can reach a pair that merges under one letter.
    Runs in O(n^2 k) without any subset enumeration.
    """
    n = dfa.n
    if n == 1:
        return True
    num_pairs = n * (n - 1) // 2

    def pid(p: int, q: int) -> int:
        if p > q:
            p, q = q, p
        return p * n - p * (p + 1) // 2 + (q - p - 1)

    # Reverse edges of the pair graph, plus the set of one-step mergeable pairs.
    preds: list[list[int]] = [[] for _ in range(num_pairs)]
    merge_now = []
    for p in range(n):
        for q in range(p + 1, n):
            src = pid(p, q)
            merges = False
            for row in dfa.delta:
                tp, tq = row[p], row[q]
                if tp == tq:
                    merges = True
                else:
                    preds[pid(tp, tq)].append(src)
            if merges:
                merge_now.append(src)

    seen = [False] * num_pairs
    queue = deque()
    for src in merge_now:
        if not seen[src]:
            seen[src] = True
            queue.append(src)
    while queue:
        cur = queue.popleft()
        for prev in preds[cur]:
            if not seen[prev]:
                seen[prev] = True
                queue.append(prev)
    return all(seen)


def shortest_reset_word(dfa: Dfa, max_states: int = SUBSET_CAP) -> AnalysisResult:
    """Minimum-length reset word via BFS on the power automaton.

    Letters are tried in alphabet order and the search stops at the first
    singleton discovered, so among minimum-length reset words the reported
    one has the least letter sequence.
    """
    n = dfa.n
    if n > max_states:
        raise CapacityError(f"n={n} exceeds the subset enumeration cap ({max_states})")
    start = full_set(n)
    if is_singleton(start):
        return AnalysisResult.found(())
    if not is_synchronizing(dfa):
        return AnalysisResult.negative()

    rows = dfa.delta
    parent: dict[int, tuple[int, int]] = {}
    seen = {start}
    queue = deque([start])
    while queue:
        mask = queue.popleft()
        for a in range(dfa.k):
            row = rows[a]
            succ = 0
            m = mask
            while m:
                low = m & -m
                succ |= 1 << row[low.bit_length() - 1]
                m ^= low
            if succ in seen:
                continue
            seen.add(succ)
            parent[succ] = (mask, a)
            if is_singleton(succ):
                return AnalysisResult.found(_walk_back(parent, start, succ))
            queue.append(succ)
    # Unreachable: the pair criterion guarantees a singleton is reachable.
    raise AssertionError("subset BFS exhausted on a synchronizing automaton")


def careful_shortest_word(pfa: Pfa, max_states: int = SUBSET_CAP) -> AnalysisResult:
    """Minimum-length careful reset word for a partial automaton.

    A word is careful when every letter of it is defined at every state the
    run has reached so far; the subset successor is undefined as soon as one
    member state has an undefined transition.  Any returned word has length
    at most 2^n - n - 1.
    """
    n = pfa.n
    if n > max_states:
        raise CapacityError(f"n={n} exceeds the subset enumeration cap ({max_states})")
    start = full_set(n)
    if is_singleton(start):
        return AnalysisResult.found(())

    parent: dict[int, tuple[int, int]] = {}
    seen = {start}
    queue = deque([start])
    while queue:
        mask = queue.popleft()
        for a in range(pfa.k):
            row = pfa.delta[a]
            succ = 0
            for q in iter_states(mask):
                t = row[q]
                if t is None:
                    succ = -1
                    break
                succ |= 1 << t
            if succ < 0 or succ in seen:
                continue
            seen.add(succ)
            parent[succ] = (mask, a)
            if is_singleton(succ):
                word = _walk_back(parent, start, succ)
                assert len(word) <= 2**n - n - 1
                return AnalysisResult.found(word)
            queue.append(succ)
    return AnalysisResult.negative()


def analyze(automaton: Union[Dfa, Pfa], max_states: int = SUBSET_CAP) -> AnalysisResult:
    """Dispatch: exact reset word for a Dfa, careful reset word for a Pfa."""
    if isinstance(automaton, Pfa):
        return careful_shortest_word(automaton, max_states)
    return shortest_reset_word(automaton, max_states)


def _walk_back(parent: dict[int, tuple[int, int]], start: int, end: int) -> Word:
    letters = []
    cur = end
    while cur != start:
        cur, a = parent[cur]
        letters.append(a)
    letters.reverse()
    return tuple(letters)
