"""Core automaton types, letter/word actions, and the interchange file format.

States are dense integers ``0..n-1``; letters are integer indices into the
automaton's alphabet of display names.  State sets are plain int bitmasks
(bit ``q`` set means state ``q`` is a member), which keeps subset
enumeration cheap for the solvers built on top.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence, Union

Word = tuple[int, ...]


class ParseError(ValueError):
    """Raised for malformed interchange documents; message carries the location."""

    def __init__(self, message: str, location: str = ""):
        super().__init__(f"{location}: {message}" if location else message)
        self.location = location


class CapacityError(Exception):
    """An input exceeds the documented size cap of an exact solver."""


@dataclass(frozen=True)
class Dfa:
    """Complete deterministic finite automaton.

    ``delta[a][q]`` is the successor of state ``q`` under letter ``a``.
    Instances are immutable (and hashable), so they are safe to share
    between threads and to use as cache keys.
    """

    alphabet: tuple[str, ...]
    delta: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        _check_alphabet(self.alphabet)
        if len(self.delta) != len(self.alphabet):
            raise ValueError("delta must have one row per letter")
        if not self.delta or not self.delta[0]:
            raise ValueError("automaton needs at least one state")
        n = len(self.delta[0])
        for a, row in enumerate(self.delta):
            if len(row) != n:
                raise ValueError(f"delta row {a} has length {len(row)}, expected {n}")
            for q, t in enumerate(row):
                if not isinstance(t, int) or not 0 <= t < n:
                    raise ValueError(f"delta[{a}][{q}] = {t!r} is not a state < {n}")

    @property
    def n(self) -> int:
        return len(self.delta[0])

    @property
    def k(self) -> int:
        return len(self.alphabet)


@dataclass(frozen=True)
class Pfa:
    """Partial automaton: ``delta`` entries may be None (undefined transition)."""

    alphabet: tuple[str, ...]
    delta: tuple[tuple[Union[int, None], ...], ...]

    def __post_init__(self):
        _check_alphabet(self.alphabet)
        if len(self.delta) != len(self.alphabet):
            raise ValueError("delta must have one row per letter")
        if not self.delta or not self.delta[0]:
            raise ValueError("automaton needs at least one state")
        n = len(self.delta[0])
        for a, row in enumerate(self.delta):
            if len(row) != n:
                raise ValueError(f"delta row {a} has length {len(row)}, expected {n}")
            for q, t in enumerate(row):
                if t is not None and (not isinstance(t, int) or not 0 <= t < n):
                    raise ValueError(f"delta[{a}][{q}] = {t!r} is not a state < {n}")

    @property
    def n(self) -> int:
        return len(self.delta[0])

    @property
    def k(self) -> int:
        return len(self.alphabet)

    def is_total(self) -> bool:
        return all(t is not None for row in self.delta for t in row)

    def to_dfa(self) -> Dfa:
        if not self.is_total():
            raise ValueError("partial automaton has undefined transitions")
        return Dfa(self.alphabet, tuple(tuple(row) for row in self.delta))  # type: ignore[arg-type]


@dataclass(frozen=True)
class Dwa:
    """Weighted automaton: a Dfa plus a positive integer cost per transition.

    ``gamma`` has exactly the shape of ``dfa.delta``.
    """

    dfa: Dfa
    gamma: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.gamma) != self.dfa.k:
            raise ValueError("gamma must have one row per letter")
        for a, row in enumerate(self.gamma):
            if len(row) != self.dfa.n:
                raise ValueError(f"gamma row {a} has length {len(row)}, expected {self.dfa.n}")
            for q, c in enumerate(row):
                if not isinstance(c, int) or c < 1:
                    raise ValueError(f"gamma[{a}][{q}] = {c!r} is not a positive integer")

    @property
    def n(self) -> int:
        return self.dfa.n

    @property
    def k(self) -> int:
        return self.dfa.k


Automaton = Union[Dfa, Pfa, Dwa]


def _check_alphabet(alphabet: Sequence[str]) -> None:
    if not alphabet:
        raise ValueError("alphabet must not be empty")
    if len(set(alphabet)) != len(alphabet):
        raise ValueError("alphabet names must be unique")
    for name in alphabet:
        if not isinstance(name, str) or not name:
            raise ValueError(f"bad letter name {name!r}")


# ---------------------------------------------------------------------------
# State sets as bitmasks


def full_set(n: int) -> int:
    """Bitmask with all ``n`` states present."""
    return (1 << n) - 1


def state_set(states: Iterable[int], n: int) -> int:
    mask = 0
    for q in states:
        if not 0 <= q < n:
            raise ValueError(f"state {q} out of range for n={n}")
        mask |= 1 << q
    return mask


def states_of(mask: int) -> list[int]:
    """Member states of a bitmask, ascending."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def iter_states(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def is_singleton(mask: int) -> bool:
    return mask != 0 and mask & (mask - 1) == 0


# ---------------------------------------------------------------------------
# Actions


def apply_letter(dfa: Dfa, q: int, a: int) -> int:
    """Successor of state ``q`` under letter ``a``."""
    if not 0 <= q < dfa.n:
        raise ValueError(f"state {q} out of range for n={dfa.n}")
    if not 0 <= a < dfa.k:
        raise ValueError(f"letter {a} out of range for k={dfa.k}")
    return dfa.delta[a][q]


def apply_word(dfa: Dfa, q: int, word: Sequence[int]) -> int:
    """Left-to-right fold of apply_letter; the empty word returns ``q``."""
    for a in word:
        q = apply_letter(dfa, q, a)
    return q


def step(dfa: Dfa, mask: int, a: int) -> int:
    """Image of a non-empty state set under a single letter."""
    if mask == 0:
        raise ValueError("state set must be non-empty")
    if not 0 <= a < dfa.k:
        raise ValueError(f"letter {a} out of range for k={dfa.k}")
    row = dfa.delta[a]
    out = 0
    while mask:
        low = mask & -mask
        out |= 1 << row[low.bit_length() - 1]
        mask ^= low
    return out


def image(dfa: Dfa, mask: int, word: Sequence[int]) -> int:
    """Image of a non-empty state set under a word. |image| never grows."""
    if mask == 0:
        raise ValueError("state set must be non-empty")
    for a in word:
        mask = step(dfa, mask, a)
    return mask


def letter_index(automaton: Automaton, name: str) -> int:
    alphabet = automaton.dfa.alphabet if isinstance(automaton, Dwa) else automaton.alphabet
    try:
        return alphabet.index(name)
    except ValueError:
        raise ValueError(f"unknown letter {name!r}; alphabet is {list(alphabet)}") from None


def format_word(word: Sequence[int], alphabet: Sequence[str]) -> str:
    names = [alphabet[a] for a in word]
    if all(len(s) == 1 for s in alphabet):
        return "".join(names)
    return " ".join(names)


def parse_word(text: str, alphabet: Sequence[str]) -> Word:
    """Inverse of format_word: a concatenated string for one-char alphabets,
    otherwise whitespace/comma separated letter names."""
    text = text.strip()
    if not text:
        return ()
    by_name = {name: i for i, name in enumerate(alphabet)}
    tokens = text.replace(",", " ").split()
    if len(tokens) == 1 and tokens[0] not in by_name and all(len(s) == 1 for s in alphabet):
        tokens = list(tokens[0])
    word = []
    for tok in tokens:
        if tok not in by_name:
            raise ValueError(f"unknown letter {tok!r}; alphabet is {list(alphabet)}")
        word.append(by_name[tok])
    return tuple(word)


# ---------------------------------------------------------------------------
# Interchange format
#
# {"n": int, "alphabet": ["a", ...], "delta": {"a": [t0, ..., t_{n-1}], ...},
#  "gamma": {"a": [c0, ...], ...}?}
#
# A null delta entry marks an undefined PFA transition.  A gamma table makes
# the document a Dwa (nulls are then rejected).  Unknown top-level keys are
# ignored so documents may carry side-channel data such as a budget.


def parse_automaton(text: Union[bytes, str]) -> Automaton:
    """Parse an interchange document; the kind is inferred from the fields."""
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"not valid JSON: {exc}", "document") from None
    if not isinstance(doc, dict):
        raise ParseError("top level must be an object", "document")

    n = doc.get("n")
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise ParseError(f"expected a positive integer, got {n!r}", "n")
    alphabet = doc.get("alphabet")
    if not isinstance(alphabet, list) or not alphabet:
        raise ParseError("expected a non-empty array of letter names", "alphabet")
    try:
        _check_alphabet(alphabet)
    except ValueError as exc:
        raise ParseError(str(exc), "alphabet") from None

    delta = _parse_table(doc.get("delta"), "delta", alphabet, n, allow_null=True)
    has_null = any(t is None for row in delta for t in row)

    if "gamma" in doc:
        if has_null:
            raise ParseError("weighted automata must be complete (no null transitions)", "delta")
        gamma = _parse_table(doc.get("gamma"), "gamma", alphabet, n, allow_null=False, is_cost=True)
        dfa = Dfa(tuple(alphabet), tuple(tuple(row) for row in delta))  # type: ignore[arg-type]
        return Dwa(dfa, tuple(tuple(row) for row in gamma))  # type: ignore[arg-type]
    if has_null:
        return Pfa(tuple(alphabet), tuple(tuple(row) for row in delta))
    return Dfa(tuple(alphabet), tuple(tuple(row) for row in delta))  # type: ignore[arg-type]


def _parse_table(table, key: str, alphabet: list, n: int, allow_null: bool, is_cost: bool = False):
    if not isinstance(table, dict):
        raise ParseError("expected an object keyed by letter name", key)
    missing = [name for name in alphabet if name not in table]
    if missing:
        raise ParseError(f"missing entries for letters {missing}", key)
    extra = [name for name in table if name not in alphabet]
    if extra:
        raise ParseError(f"entries for unknown letters {extra}", key)
    rows = []
    for name in alphabet:
        row = table[name]
        loc = f"{key}[{name!r}]"
        if not isinstance(row, list):
            raise ParseError("expected an array", loc)
        if len(row) != n:
            raise ParseError(f"expected {n} entries, got {len(row)}", loc)
        for q, t in enumerate(row):
            if t is None:
                if not allow_null:
                    raise ParseError("null not allowed here", f"{loc}[{q}]")
                continue
            if not isinstance(t, int) or isinstance(t, bool):
                raise ParseError(f"expected an integer, got {t!r}", f"{loc}[{q}]")
            if is_cost:
                if t < 1:
                    raise ParseError(f"cost must be a positive integer, got {t}", f"{loc}[{q}]")
            elif not 0 <= t < n:
                raise ParseError(f"state {t} out of range (n={n})", f"{loc}[{q}]")
        rows.append(row)
    return rows


def serialize_automaton(automaton: Automaton) -> bytes:
    """Canonical interchange document; parse(serialize(x)) == x."""
    if isinstance(automaton, Dwa):
        base, gamma = automaton.dfa, automaton.gamma
    else:
        base, gamma = automaton, None
    doc: dict = {
        "n": base.n,
        "alphabet": list(base.alphabet),
        "delta": {name: list(base.delta[a]) for a, name in enumerate(base.alphabet)},
    }
    if gamma is not None:
        doc["gamma"] = {name: list(gamma[a]) for a, name in enumerate(base.alphabet)}
    return (json.dumps(doc, indent=2) + "\n").encode("utf-8")
