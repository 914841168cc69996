"""Generators for the automaton families and reductions the engine works on:
the cyclic one-bump series with quadratic reset length, the duplication
construction, the CNF-game gadget, and the partial-to-weighted reduction.
"""

from __future__ import annotations

from dataclasses import dataclass

from .automata import CapacityError, Dfa, Dwa, ParseError, Pfa
from .weighted import BudgetInstance

PFA_TO_DWA_CAP = 62


def cerny(n: int) -> Dfa:
    """The classic n-state two-letter slowly synchronizing automaton.

    States are residues mod n; letter ``a`` sends 0 to 1 and fixes the rest,
    letter ``b`` is the cyclic shift.  Its shortest reset word has length
    (n-1)^2.
    """
    if n < 2:
        raise ValueError("cerny(n) needs n >= 2")
    row_a = tuple(1 if m == 0 else m for m in range(n))
    row_b = tuple((m + 1) % n for m in range(n))
    return Dfa(("a", "b"), (row_a, row_b))


def duplication(dfa: Dfa, b: int = 1, q0: int = 0, pad_odd: bool = False) -> Dfa:
    """Two-level copy of ``dfa`` that stretches the game to its reset length.

    States are (q, 0) and (q, 1), numbered q and n+q.  Every letter sends
    (q, 0) to (q.letter, 1); from level 1 the distinguished letter ``b``
    drops back to (q, 0) and every other letter resets to (q0, 1).  With
    ``pad_odd`` an extra state is appended that every letter sends to
    (q0, 1), giving an odd state count.
    """
    if dfa.k < 2:
        raise ValueError("duplication needs at least two letters")
    if not 0 <= b < dfa.k:
        raise ValueError(f"letter {b} out of range for k={dfa.k}")
    if not 0 <= q0 < dfa.n:
        raise ValueError(f"state {q0} out of range for n={dfa.n}")
    n = dfa.n
    total = 2 * n + (1 if pad_odd else 0)
    rows = []
    for a in range(dfa.k):
        row = [0] * total
        for q in range(n):
            row[q] = n + dfa.delta[a][q]
            row[n + q] = q if a == b else n + q0
        if pad_odd:
            row[2 * n] = n + q0
        rows.append(tuple(row))
    return Dfa(dfa.alphabet, tuple(rows))


# ---------------------------------------------------------------------------
# CNF formulas and the game gadget


@dataclass(frozen=True)
class CnfFormula:
    """CNF with 1-based variables; a literal is +v or -v (DIMACS style)."""

    num_vars: int
    clauses: tuple[frozenset[int], ...]

    def __post_init__(self):
        if self.num_vars < 0:
            raise ValueError("num_vars must be non-negative")
        for i, clause in enumerate(self.clauses):
            for lit in clause:
                if lit == 0 or abs(lit) > self.num_vars:
                    raise ValueError(f"clause {i}: literal {lit} out of range")
            for lit in clause:
                if -lit in clause:
                    raise ValueError(
                        f"clause {i}: contains both {lit} and {-lit} (degenerate)"
                    )

    def evaluate(self, assignment: dict[int, bool]) -> bool:
        """Truth value under a full assignment {var: value}."""
        return all(
            any(assignment[abs(lit)] == (lit > 0) for lit in clause) for clause in self.clauses
        )


def psi0() -> CnfFormula:
    """Built-in 3-variable demo formula on which the first player wins."""
    return CnfFormula(
        3,
        (
            frozenset({1, 2, 3}),
            frozenset({-1, 2, 3}),
            frozenset({1, -2, 3}),
            frozenset({-2, -3}),
        ),
    )


def parse_dimacs(text: str) -> CnfFormula:
    """DIMACS CNF: `p cnf <vars> <clauses>` header, zero-terminated clauses."""
    num_vars = None
    declared = None
    clauses: list[frozenset[int]] = []
    current: list[int] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("c") or line.startswith("%"):
            continue
        if line.startswith("p"):
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise ParseError("expected 'p cnf <vars> <clauses>'", f"line {lineno}")
            num_vars, declared = int(parts[2]), int(parts[3])
            continue
        if num_vars is None:
            raise ParseError("clause before the 'p cnf' header", f"line {lineno}")
        for tok in line.split():
            try:
                lit = int(tok)
            except ValueError:
                raise ParseError(f"bad literal {tok!r}", f"line {lineno}") from None
            if lit == 0:
                clauses.append(frozenset(current))
                current = []
            else:
                current.append(lit)
    if num_vars is None:
        raise ParseError("missing 'p cnf' header", "document")
    if current:
        clauses.append(frozenset(current))
    if declared is not None and declared != len(clauses):
        raise ParseError(
            f"header declares {declared} clauses, found {len(clauses)}", "document"
        )
    return CnfFormula(num_vars, tuple(clauses))


def eppstein_qsat(formula: CnfFormula) -> Dfa:
    """The two-letter gadget on which the synchronization game mirrors the
    alternating-assignment game on the formula.

    One row of n+1 states per clause plus a sink.  In row i, letter ``a`` at
    column j kills the row (jumps to the sink) iff x_j occurs in clause i,
    letter ``b`` iff the negated literal occurs; otherwise the row advances
    one column.  Column n+1 and the sink go to the sink under both letters.
    So spelling an assignment (a = true, b = false) kills row i exactly when
    it satisfies clause i; the first player wins within num_vars half-moves
    iff she wins the assignment game.
    """
    n, m = formula.num_vars, len(formula.clauses)
    if n < 1:
        raise ValueError("the gadget needs at least one variable")
    if m < 1:
        raise ValueError("the gadget needs at least one clause")
    width = n + 1
    z = m * width
    rows = []
    for polarity in (1, -1):
        row = [0] * (z + 1)
        for i, clause in enumerate(formula.clauses):
            for j in range(1, n + 1):
                state = i * width + (j - 1)
                row[state] = z if polarity * j in clause else state + 1
            row[i * width + n] = z
        row[z] = z
        rows.append(tuple(row))
    return Dfa(("a", "b"), tuple(rows))


def pfa_to_dwa(pfa: Pfa) -> BudgetInstance:
    """Complete a partial automaton into a weighted one: undefined moves
    become self-loops priced 2^n, defined moves cost 1, budget 2^n - 1.

    Any word within budget can never afford an expensive loop, so the
    weighted automaton synchronizes within budget iff the partial one is
    carefully synchronizing.
    """
    n = pfa.n
    if n > PFA_TO_DWA_CAP:
        raise CapacityError(f"n={n} exceeds the reduction cap ({PFA_TO_DWA_CAP})")
    expensive = 2**n
    delta_rows = []
    gamma_rows = []
    for row in pfa.delta:
        delta_rows.append(tuple(q if t is None else t for q, t in enumerate(row)))
        gamma_rows.append(tuple(expensive if t is None else 1 for t in row))
    dfa = Dfa(pfa.alphabet, tuple(delta_rows))
    return BudgetInstance(Dwa(dfa, tuple(gamma_rows)), expensive - 1)
