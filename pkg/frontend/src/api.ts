/** Typed client for the game service; the server owns all game semantics. */

export interface AutomatonDoc {
  n: number;
  alphabet: string[];
  delta: Record<string, number[]>;
}

export interface BuiltinEntry {
  name: string;
  n: number;
  alphabet: string[];
  description: string;
  automaton: AutomatonDoc;
}

export interface Position {
  coins: number[];
  mover: "ALICE" | "BOB";
}

export interface MoveEntry {
  mover: "ALICE" | "BOB";
  letter: string;
  coins: number[];
}

export type Status = "IN_PROGRESS" | "ALICE_WON" | "ABANDONED";

export interface SessionState {
  id: string;
  status: Status;
  position: Position;
  human_role: "ALICE" | "BOB";
  prediction: "ALICE" | "BOB";
  strategy_mode: string;
  to_move: "ALICE" | "BOB" | null;
  history?: MoveEntry[];
  automaton?: AutomatonDoc;
  moves?: MoveEntry[];
}

export class ApiError extends Error {
  constructor(readonly code: string, message: string, readonly status: number) {
    super(message);
  }
}

async function request<T>(url: string, init?: RequestInit): Promise<T> {
  const response = await fetch(url, init);
  const body = await response.json();
  if (!response.ok) {
    throw new ApiError(body.code ?? "error", body.message ?? "request failed", response.status);
  }
  return body as T;
}

export class GameClient {
  constructor(readonly baseUrl: string = "") {}

  listBuiltins(): Promise<BuiltinEntry[]> {
    return request(`${this.baseUrl}/builtin`);
  }

  createSession(
    automaton: AutomatonDoc | string,
    humanRole: "ALICE" | "BOB",
  ): Promise<SessionState> {
    return request(`${this.baseUrl}/sessions`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ automaton, human_role: humanRole }),
    });
  }

  playMove(sessionId: string, letter: string): Promise<SessionState> {
    return request(`${this.baseUrl}/sessions/${sessionId}/moves`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ letter }),
    });
  }

  getSession(sessionId: string): Promise<SessionState> {
    return request(`${this.baseUrl}/sessions/${sessionId}`);
  }
}
