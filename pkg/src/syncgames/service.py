"""HTTP JSON service for playing the synchronization game against the engine.

Endpoints:

  POST /sessions                 {automaton, human_role, strategy_mode?}
  POST /sessions/{id}/moves      {letter}
  GET  /sessions/{id}
  GET  /sessions
  GET  /builtin

Every game-state response carries {"position": {"coins": [...], "mover": ...},
"status": ...}; errors are {"code": ..., "message": ...}.  The engine answers
the human's move inside the same request (games are turn-based and engine
moves are fast at this scale); when the human plays Bob, the engine's opening
move is applied while the session is created.

Sessions are in-memory only, evicted after an idle timeout; finished or
evicted games can optionally be appended to a line-delimited JSON transcript
file.  Each session serializes its own mutations; engine tables are immutable
and shared.
"""

from __future__ import annotations

import json
import logging
import re
import secrets
import threading
import time
from dataclasses import dataclass, field
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path
from typing import Optional

from .automata import (
    CapacityError,
    Dfa,
    Dwa,
    ParseError,
    Pfa,
    full_set,
    image,
    is_singleton,
    states_of,
    step,
)
from .constructions import cerny, duplication, eppstein_qsat, psi0
from .game import (
    FULL_GAME_CAP,
    GamePosition,
    Player,
    StrategyError,
    alice_move,
    bob_move,
    decide_winner,
    optimal_moves,
    solve_pair_game,
)

log = logging.getLogger("syncgames.service")

DEFAULT_TTL_SECONDS = 30 * 60
EXACT_AUTO_CAP = 16

IN_PROGRESS = "IN_PROGRESS"
ALICE_WON = "ALICE_WON"
ABANDONED = "ABANDONED"


class ServiceError(Exception):
    def __init__(self, code: str, message: str, status: int = 400):
        super().__init__(message)
        self.code = code
        self.status = status


@dataclass
class GameSession:
    id: str
    dfa: Dfa
    human_role: Player
    strategy_mode: str
    prediction: Player
    position: GamePosition
    history: list = field(default_factory=list)
    status: str = IN_PROGRESS
    created: float = 0.0
    last_active: float = 0.0
    lock: threading.Lock = field(default_factory=threading.Lock)

    @property
    def engine_role(self) -> Player:
        return Player.BOB if self.human_role is Player.ALICE else Player.ALICE


def builtin_catalog() -> list[dict]:
    """Named generators offered to clients, each with its full document."""
    entries = []
    for n in range(2, 9):
        entries.append(("cerny:%d" % n, cerny(n), "cyclic one-bump automaton, %d states" % n))
    for n in range(2, 6):
        entries.append(
            ("duplication:%d" % n, duplication(cerny(n)), "two-level stretch of cerny:%d" % n)
        )
    entries.append(("qsat:psi0", eppstein_qsat(psi0()), "CNF game gadget for the demo formula"))
    return [
        {
            "name": name,
            "n": dfa.n,
            "alphabet": list(dfa.alphabet),
            "description": text,
            "automaton": _automaton_doc(dfa),
        }
        for name, dfa, text in entries
    ]


def _automaton_doc(dfa: Dfa) -> dict:
    return {
        "n": dfa.n,
        "alphabet": list(dfa.alphabet),
        "delta": {name: list(dfa.delta[a]) for a, name in enumerate(dfa.alphabet)},
    }


class GameService:
    """Session store plus engine glue; transport-independent."""

    def __init__(
        self,
        ttl_seconds: float = DEFAULT_TTL_SECONDS,
        transcript_path: Optional[str] = None,
        exact_cap: int = EXACT_AUTO_CAP,
        clock=time.monotonic,
    ):
        self.ttl = ttl_seconds
        self.transcript_path = transcript_path
        self.exact_cap = exact_cap
        self.clock = clock
        self._sessions: dict[str, GameSession] = {}
        self._lock = threading.Lock()

    # -- session lifecycle

    def create_session(self, doc, human_role: str, strategy_mode: Optional[str] = None) -> dict:
        dfa = self._coerce_dfa(doc)
        role = self._coerce_role(human_role)
        mode = self._pick_mode(dfa, strategy_mode)
        try:
            prediction = decide_winner(dfa)
        except Exception as exc:  # defensive: solver errors surface as 400s
            raise ServiceError("engine_error", str(exc)) from exc
        if mode == "EXACT":
            optimal_moves(dfa)  # build (and cache) the table up front
        else:
            solve_pair_game(dfa)

        now = self.clock()
        session = GameSession(
            id=secrets.token_hex(8),
            dfa=dfa,
            human_role=role,
            strategy_mode=mode,
            prediction=prediction,
            position=GamePosition(full_set(dfa.n), Player.ALICE),
            created=now,
            last_active=now,
        )
        if is_singleton(session.position.coins):
            session.status = ALICE_WON
        with self._lock:
            self._sessions[session.id] = session
        log.info("session %s created: n=%d human=%s mode=%s prediction=%s",
                 session.id, dfa.n, role.value, mode, prediction.value)

        with session.lock:
            if session.status == IN_PROGRESS and session.position.mover is session.engine_role:
                self._engine_half_move(session)
            self._audit(session)
        return self.session_state(session.id)

    def session_state(self, session_id: str) -> dict:
        session = self._get(session_id)
        with session.lock:
            return self._state_payload(session, full=True)

    def list_sessions(self) -> list[dict]:
        self._evict_expired()
        with self._lock:
            sessions = list(self._sessions.values())
        out = []
        for s in sorted(sessions, key=lambda s: s.created):
            with s.lock:
                out.append(
                    {
                        "id": s.id,
                        "n": s.dfa.n,
                        "status": s.status,
                        "human_role": s.human_role.value,
                        "prediction": s.prediction.value,
                        "moves_played": len(s.history),
                    }
                )
        return out

    def play_move(self, session_id: str, letter) -> dict:
        session = self._get(session_id)
        with session.lock:
            if session.status != IN_PROGRESS:
                raise ServiceError("finished", "the session is over", status=409)
            if session.position.mover is not session.human_role:
                raise ServiceError("out_of_turn", "it is not your turn", status=409)
            a = self._coerce_letter(session.dfa, letter)
            exchange = [self._apply(session, session.human_role, a)]
            if session.status == IN_PROGRESS and session.position.mover is session.engine_role:
                exchange.append(self._engine_half_move(session))
            self._audit(session)
            session.last_active = self.clock()
            payload = self._state_payload(session, full=False)
            payload["moves"] = exchange
            if session.status != IN_PROGRESS:
                self._persist(session)
                log.info("session %s finished: %s after %d half-moves",
                         session.id, session.status, len(session.history))
            return payload

    # -- internals

    def _get(self, session_id: str) -> GameSession:
        self._evict_expired()
        with self._lock:
            session = self._sessions.get(session_id)
        if session is None:
            raise ServiceError("not_found", f"no session {session_id}", status=404)
        return session

    def _evict_expired(self) -> None:
        if self.ttl <= 0:
            return
        now = self.clock()
        with self._lock:
            stale = [s for s in self._sessions.values() if now - s.last_active > self.ttl]
            for s in stale:
                del self._sessions[s.id]
        for s in stale:
            if s.status == IN_PROGRESS:
                s.status = ABANDONED
            self._persist(s)
            log.info("session %s evicted after idle timeout", s.id)

    def _coerce_dfa(self, doc) -> Dfa:
        from .automata import parse_automaton

        try:
            if isinstance(doc, (bytes, str)):
                automaton = parse_automaton(doc)
            elif isinstance(doc, dict):
                automaton = parse_automaton(json.dumps(doc))
            else:
                raise ParseError("automaton must be an interchange document")
        except ParseError as exc:
            raise ServiceError("parse_error", str(exc)) from exc
        if isinstance(automaton, Dwa):
            automaton = automaton.dfa
        if isinstance(automaton, Pfa):
            raise ServiceError("parse_error", "the game needs a complete automaton")
        return automaton

    @staticmethod
    def _coerce_role(role) -> Player:
        try:
            return Player(role)
        except ValueError:
            raise ServiceError("bad_request", f"human_role must be ALICE or BOB, got {role!r}") from None

    def _pick_mode(self, dfa: Dfa, requested: Optional[str]) -> str:
        if requested is None:
            return "EXACT" if dfa.n <= self.exact_cap else "PAIR"
        if requested not in ("EXACT", "PAIR"):
            raise ServiceError("bad_request", f"strategy_mode must be EXACT or PAIR, got {requested!r}")
        if requested == "EXACT" and dfa.n > FULL_GAME_CAP:
            raise ServiceError(
                "capacity_error", f"EXACT mode supports up to {FULL_GAME_CAP} states, got {dfa.n}"
            )
        return requested

    @staticmethod
    def _coerce_letter(dfa: Dfa, letter) -> int:
        if isinstance(letter, int) and not isinstance(letter, bool):
            if 0 <= letter < dfa.k:
                return letter
            raise ServiceError("invalid_letter", f"letter index {letter} out of range")
        if isinstance(letter, str) and letter in dfa.alphabet:
            return dfa.alphabet.index(letter)
        raise ServiceError(
            "invalid_letter", f"unknown letter {letter!r}; alphabet is {list(dfa.alphabet)}"
        )

    def _apply(self, session: GameSession, mover: Player, a: int) -> dict:
        coins = step(session.dfa, session.position.coins, a)
        other = Player.BOB if mover is Player.ALICE else Player.ALICE
        session.position = GamePosition(coins, other)
        entry = {
            "mover": mover.value,
            "letter": session.dfa.alphabet[a],
            "coins": states_of(coins),
        }
        session.history.append(entry)
        if is_singleton(coins):
            session.status = ALICE_WON
        return entry

    def _engine_half_move(self, session: GameSession) -> dict:
        a = self._engine_letter(session)
        return self._apply(session, session.engine_role, a)

    def _engine_letter(self, session: GameSession) -> int:
        pos = session.position
        use_pairs = session.strategy_mode == "PAIR"
        if session.engine_role is Player.ALICE:
            try:
                return alice_move(session.dfa, pos, use_pair_strategy=use_pairs)
            except StrategyError:
                # Alice cannot force a win; play best effort (merge greedily).
                best = min(
                    (len(states_of(step(session.dfa, pos.coins, a))), a)
                    for a in range(session.dfa.k)
                )
                return best[1]
        return bob_move(session.dfa, pos, use_pair_strategy=use_pairs)

    def _audit(self, session: GameSession) -> None:
        """History replayed from the full set must land on the live position."""
        coins = full_set(session.dfa.n)
        letters = [session.dfa.alphabet.index(e["letter"]) for e in session.history]
        if letters:
            coins = image(session.dfa, coins, letters)
        if coins != session.position.coins:
            raise ServiceError("audit_failure", "history does not replay to the position", 500)

    def _state_payload(self, session: GameSession, full: bool) -> dict:
        payload = {
            "id": session.id,
            "status": session.status,
            "position": {
                "coins": states_of(session.position.coins),
                "mover": session.position.mover.value,
            },
            "human_role": session.human_role.value,
            "prediction": session.prediction.value,
            "strategy_mode": session.strategy_mode,
            "to_move": session.position.mover.value if session.status == IN_PROGRESS else None,
        }
        if full:
            payload["history"] = list(session.history)
            payload["automaton"] = _automaton_doc(session.dfa)
        return payload

    def _persist(self, session: GameSession) -> None:
        if not self.transcript_path:
            return
        record = {
            "id": session.id,
            "status": session.status,
            "human_role": session.human_role.value,
            "prediction": session.prediction.value,
            "automaton": _automaton_doc(session.dfa),
            "history": session.history,
        }
        with open(self.transcript_path, "a", encoding="utf-8") as fh:
            fh.write(json.dumps(record) + "\n")


# ---------------------------------------------------------------------------
# HTTP layer

_SESSION_RE = re.compile(r"^/sessions/([0-9a-f]+)$")
_MOVES_RE = re.compile(r"^/sessions/([0-9a-f]+)/moves$")

_CONTENT_TYPES = {
    ".html": "text/html; charset=utf-8",
    ".js": "text/javascript; charset=utf-8",
    ".css": "text/css; charset=utf-8",
    ".map": "application/json",
    ".svg": "image/svg+xml",
    ".json": "application/json",
}


def make_handler(service: GameService, static_dir: Optional[str] = None):
    static_root = Path(static_dir).resolve() if static_dir else None

    class Handler(BaseHTTPRequestHandler):
        protocol_version = "HTTP/1.1"

        def log_message(self, fmt, *args):  # route through logging, not stderr prints
            log.debug("%s %s", self.address_string(), fmt % args)

        def _send_json(self, payload, status: int = 200) -> None:
            body = json.dumps(payload).encode("utf-8")
            self.send_response(status)
            self.send_header("Content-Type", "application/json")
            self.send_header("Content-Length", str(len(body)))
            self.send_header("Access-Control-Allow-Origin", "*")
            self.end_headers()
            self.wfile.write(body)

        def _read_body(self) -> dict:
            length = int(self.headers.get("Content-Length") or 0)
            raw = self.rfile.read(length) if length else b""
            if not raw:
                return {}
            try:
                body = json.loads(raw)
            except json.JSONDecodeError as exc:
                raise ServiceError("bad_request", f"request body is not JSON: {exc}")
            if not isinstance(body, dict):
                raise ServiceError("bad_request", "request body must be a JSON object")
            return body

        def _dispatch(self, fn) -> None:
            try:
                payload, status = fn()
            except ServiceError as exc:
                payload, status = {"code": exc.code, "message": str(exc)}, exc.status
            except (ParseError, ValueError) as exc:
                payload, status = {"code": "parse_error", "message": str(exc)}, 400
            except CapacityError as exc:
                payload, status = {"code": "capacity_error", "message": str(exc)}, 400
            self._send_json(payload, status)

        def do_OPTIONS(self):
            self.send_response(204)
            self.send_header("Access-Control-Allow-Origin", "*")
            self.send_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS")
            self.send_header("Access-Control-Allow-Headers", "Content-Type")
            self.send_header("Content-Length", "0")
            self.end_headers()

        def do_GET(self):
            path = self.path.split("?", 1)[0]
            if path == "/sessions":
                return self._dispatch(lambda: (service.list_sessions(), 200))
            m = _SESSION_RE.match(path)
            if m:
                return self._dispatch(lambda: (service.session_state(m.group(1)), 200))
            if path == "/builtin":
                return self._dispatch(lambda: (builtin_catalog(), 200))
            if static_root is not None:
                return self._serve_static(path)
            self._send_json({"code": "not_found", "message": f"no route {path}"}, 404)

        def do_POST(self):
            path = self.path.split("?", 1)[0]
            if path == "/sessions":
                def create():
                    body = self._read_body()
                    if "automaton" not in body:
                        raise ServiceError("bad_request", "missing 'automaton'")
                    state = service.create_session(
                        body["automaton"],
                        body.get("human_role", "ALICE"),
                        body.get("strategy_mode"),
                    )
                    return state, 201

                return self._dispatch(create)
            m = _MOVES_RE.match(path)
            if m:
                def move():
                    body = self._read_body()
                    if "letter" not in body:
                        raise ServiceError("bad_request", "missing 'letter'")
                    return service.play_move(m.group(1), body["letter"]), 200

                return self._dispatch(move)
            self._send_json({"code": "not_found", "message": f"no route {path}"}, 404)

        def _serve_static(self, path: str) -> None:
            rel = "index.html" if path == "/" else path.lstrip("/")
            target = (static_root / rel).resolve()
            if not str(target).startswith(str(static_root)) or not target.is_file():
                self._send_json({"code": "not_found", "message": f"no route {path}"}, 404)
                return
            body = target.read_bytes()
            self.send_response(200)
            ctype = _CONTENT_TYPES.get(target.suffix, "application/octet-stream")
            self.send_header("Content-Type", ctype)
            self.send_header("Content-Length", str(len(body)))
            self.end_headers()
            self.wfile.write(body)

    return Handler


def create_server(
    service: GameService,
    host: str = "127.0.0.1",
    port: int = 8080,
    static_dir: Optional[str] = None,
) -> ThreadingHTTPServer:
    handler = make_handler(service, static_dir)
    return ThreadingHTTPServer((host, port), handler)
