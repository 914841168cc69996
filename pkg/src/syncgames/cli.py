"""Command-line front door: batch analysis, game solving, generators, service.

Decision-style results use exit codes so shell pipelines can branch without
parsing: 0 means yes/ALICE/feasible, 3 means no/BOB/infeasible, 2 means "not
synchronizing" from analyze, 1 means any error.  Every command accepts a
global --json flag that emits the same fields machine-readably.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .automata import (
    CapacityError,
    Dfa,
    Dwa,
    ParseError,
    Pfa,
    format_word,
    parse_automaton,
    parse_word,
    serialize_automaton,
)
from .analysis import careful_shortest_word, shortest_reset_word
from .constructions import cerny, duplication, eppstein_qsat, parse_dimacs, pfa_to_dwa, psi0
from .game import Player, decide_winner, optimal_moves, short_game_decide
from .weighted import BudgetInstance, NotResetError, budget_decide, min_sync_cost, sync_cost

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_NOT_SYNCHRONIZING = 2
EXIT_NEGATIVE = 3


class CliError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # usage problems are ordinary errors (exit 1)
        raise CliError(message)


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text(encoding="utf-8")


def _load_automaton(path: str):
    return parse_automaton(_read_text(path))


def _alphabet(automaton) -> tuple[str, ...]:
    return automaton.dfa.alphabet if isinstance(automaton, Dwa) else automaton.alphabet


def _emit(report: dict, lines: list[str], as_json: bool) -> None:
    if as_json:
        print(json.dumps(report, indent=2))
    else:
        for line in lines:
            print(line)


def cmd_analyze(args) -> int:
    automaton = _load_automaton(args.file)
    as_json = args.json

    if args.weighted:
        if not isinstance(automaton, Dwa):
            raise CliError("--weighted needs a weighted automaton (gamma table)")
        if args.word is not None:
            word = parse_word(args.word, _alphabet(automaton))
            cost = sync_cost(automaton, word)
            _emit(
                {"kind": "dwa", "word": args.word, "cost": cost},
                [f"cost of synchronizing by {args.word}: {cost}"],
                as_json,
            )
            return EXIT_OK
        best = min_sync_cost(automaton)
        feasible = best != float("inf")
        _emit(
            {"kind": "dwa", "min_sync_cost": best if feasible else None},
            [f"minimum synchronization cost: {best if feasible else 'none (not synchronizing)'}"],
            as_json,
        )
        return EXIT_OK if feasible else EXIT_NOT_SYNCHRONIZING

    if isinstance(automaton, Pfa):
        result = careful_shortest_word(automaton)
        word = format_word(result.shortest_word, automaton.alphabet) if result.synchronizing else None
        _emit(
            {
                "kind": "pfa",
                "carefully_synchronizing": result.synchronizing,
                "min_length": result.min_length,
                "word": word,
            },
            [
                f"carefully synchronizing: {'yes' if result.synchronizing else 'no'}",
            ]
            + ([f"shortest careful reset word: {word} (length {result.min_length})"] if word is not None else []),
            as_json,
        )
        return EXIT_OK if result.synchronizing else EXIT_NOT_SYNCHRONIZING

    dfa = automaton.dfa if isinstance(automaton, Dwa) else automaton
    result = shortest_reset_word(dfa)
    word = format_word(result.shortest_word, dfa.alphabet) if result.synchronizing else None
    kind = "dwa" if isinstance(automaton, Dwa) else "dfa"
    _emit(
        {
            "kind": kind,
            "synchronizing": result.synchronizing,
            "min_length": result.min_length,
            "word": word,
        },
        [f"synchronizing: {'yes' if result.synchronizing else 'no'}"]
        + ([f"shortest reset word: {word} (length {result.min_length})"] if word is not None else []),
        as_json,
    )
    return EXIT_OK if result.synchronizing else EXIT_NOT_SYNCHRONIZING


def cmd_game(args) -> int:
    automaton = _load_automaton(args.file)
    dfa = automaton.dfa if isinstance(automaton, Dwa) else automaton
    if isinstance(dfa, Pfa):
        raise CliError("the game needs a complete automaton")

    winner = decide_winner(dfa)
    report: dict = {"winner": winner.value}
    lines = [f"winner: {winner.value}"]

    if args.optimal:
        value = optimal_moves(dfa).start_value
        report["optimal_moves"] = None if value == float("inf") else int(value)
        lines.append(
            "optimal Alice moves: none (Bob wins)"
            if value == float("inf")
            else f"optimal Alice moves: {int(value)}"
        )
    if args.short is not None:
        wins = short_game_decide(dfa, args.short)
        report["win_within"] = {"moves": args.short, "value": wins}
        lines.append(f"win within {args.short} half-moves: {'yes' if wins else 'no'}")

    _emit(report, lines, args.json)
    if args.short is not None:
        return EXIT_OK if report["win_within"]["value"] else EXIT_NEGATIVE
    return EXIT_OK if winner is Player.ALICE else EXIT_NEGATIVE


def cmd_budget(args) -> int:
    automaton = _load_automaton(args.file)
    if not isinstance(automaton, Dwa):
        raise CliError("budget needs a weighted automaton (gamma table)")
    result = budget_decide(BudgetInstance(automaton, args.budget))
    report: dict = {"feasible": result.feasible, "budget": args.budget}
    lines = [f"within budget {args.budget}: {'yes' if result.feasible else 'no'}"]
    if result.feasible and result.witness is not None:
        word = format_word(result.witness, _alphabet(automaton))
        cost = sync_cost(automaton, result.witness)
        report["witness"] = word
        report["witness_cost"] = cost
        lines.append(f"witness: {word} (cost {cost})")
    _emit(report, lines, args.json)
    return EXIT_OK if result.feasible else EXIT_NEGATIVE


def cmd_generate(args) -> int:
    if args.kind == "cerny":
        automaton = cerny(_as_int(args.params, "cerny expects one integer parameter"))
        sys.stdout.write(serialize_automaton(automaton).decode())
        return EXIT_OK
    if args.kind == "duplication":
        if not args.params:
            raise CliError("duplication expects a base automaton (file or cerny size)")
        base_arg = args.params[0]
        base = cerny(int(base_arg)) if base_arg.isdigit() else _load_automaton(base_arg)
        if isinstance(base, Dwa):
            base = base.dfa
        if not isinstance(base, Dfa):
            raise CliError("duplication needs a complete automaton")
        automaton = duplication(base, b=args.letter, q0=args.q0, pad_odd=args.pad_odd)
        sys.stdout.write(serialize_automaton(automaton).decode())
        return EXIT_OK
    if args.kind == "qsat":
        if not args.params:
            raise CliError("qsat expects a DIMACS file (or 'psi0')")
        src = args.params[0]
        formula = psi0() if src == "psi0" else parse_dimacs(_read_text(src))
        sys.stdout.write(serialize_automaton(eppstein_qsat(formula)).decode())
        return EXIT_OK
    if args.kind == "pfa2dwa":
        if not args.params:
            raise CliError("pfa2dwa expects a partial automaton file")
        automaton = _load_automaton(args.params[0])
        if not isinstance(automaton, Pfa):
            raise CliError("pfa2dwa expects a partial automaton (null transitions)")
        inst = pfa_to_dwa(automaton)
        doc = json.loads(serialize_automaton(inst.dwa))
        doc["budget"] = inst.budget  # parsers ignore unknown keys
        sys.stdout.write(json.dumps(doc, indent=2) + "\n")
        return EXIT_OK
    raise CliError(f"unknown generator {args.kind!r}")


def _as_int(params: list[str], message: str) -> int:
    if len(params) != 1:
        raise CliError(message)
    try:
        return int(params[0])
    except ValueError:
        raise CliError(message) from None


def cmd_serve(args) -> int:
    from .service import GameService, create_server

    logging.basicConfig(level=logging.INFO, format="%(asctime)s %(name)s %(message)s")
    service = GameService(ttl_seconds=args.session_ttl, transcript_path=args.transcripts)
    static = args.frontend
    if static is not None and not Path(static).is_dir():
        raise CliError(f"frontend directory {static!r} does not exist")
    try:
        server = create_server(service, host=args.host, port=args.port, static_dir=static)
    except OSError as exc:
        raise CliError(f"cannot bind {args.host}:{args.port}: {exc}") from exc
    logging.getLogger("syncgames.service").info(
        "listening on http://%s:%d", args.host, server.server_address[1]
    )
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.server_close()
    return EXIT_OK


def build_parser() -> _Parser:
    parser = _Parser(prog="syncgames", description=__doc__)
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit machine-readable JSON")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", parents=[common], help="reset-word analysis of a document")
    p.add_argument("file", help="interchange document path, or - for stdin")
    p.add_argument("--weighted", action="store_true", help="cost analysis (weighted input)")
    p.add_argument("--word", help="word whose synchronization cost to report")
    p.set_defaults(fn=cmd_analyze)

    p = sub.add_parser("game", parents=[common], help="solve the synchronization game")
    p.add_argument("file")
    p.add_argument("--optimal", action="store_true", help="exact optimal Alice-move count")
    p.add_argument("--short", type=int, metavar="MOVES",
                   help="decide a win within MOVES half-moves (letters played)")
    p.set_defaults(fn=cmd_game)

    p = sub.add_parser("budget", parents=[common], help="synchronize within a budget")
    p.add_argument("file")
    p.add_argument("budget", type=int)
    p.set_defaults(fn=cmd_budget)

    p = sub.add_parser("generate", parents=[common], help="emit a generated document")
    p.add_argument("kind", choices=["cerny", "duplication", "qsat", "pfa2dwa"])
    p.add_argument("params", nargs="*", help="generator parameters")
    p.add_argument("--letter", type=int, default=1, help="distinguished letter for duplication")
    p.add_argument("--q0", type=int, default=0, help="anchor state for duplication")
    p.add_argument("--pad-odd", action="store_true", help="append the odd padding state")
    p.set_defaults(fn=cmd_generate)

    p = sub.add_parser("serve", parents=[common], help="run the game service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8080)
    p.add_argument("--session-ttl", type=float, default=1800.0,
                   help="idle session eviction timeout in seconds")
    p.add_argument("--transcripts", help="append finished games to this JSONL file")
    p.add_argument("--frontend", help="directory of static playground files to serve")
    p.set_defaults(fn=cmd_serve)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.fn(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except (ParseError, NotResetError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except CapacityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
