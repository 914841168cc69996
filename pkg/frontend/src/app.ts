/** Playground wiring: pick an automaton and a side, then trade letters with
 * the engine.  The client renders server truth only; every coin set shown
 * comes verbatim from a service response.
 */

import { ApiError, GameClient } from "./api.js";
import type { AutomatonDoc, BuiltinEntry, MoveEntry, SessionState } from "./api.js";
import { Board, letterColor } from "./board.js";

export interface AppOptions {
  /** Delay between the two half-moves of an exchange, in milliseconds. */
  animationMs?: number;
}

const sleep = (ms: number) => new Promise<void>((resolve) => setTimeout(resolve, ms));

export class App {
  readonly client: GameClient;
  private readonly animationMs: number;
  private builtins: BuiltinEntry[] = [];
  private board: Board | null = null;
  private sessionId: string | null = null;
  private automaton: AutomatonDoc | null = null;
  private state: SessionState | null = null;
  private queue: Promise<void> = Promise.resolve();

  private readonly builtinSelect: HTMLSelectElement;
  private readonly roleSelect: HTMLSelectElement;
  private readonly startButton: HTMLButtonElement;
  private readonly uploadText: HTMLTextAreaElement;
  private readonly uploadButton: HTMLButtonElement;
  private readonly boardHost: HTMLElement;
  private readonly buttonBar: HTMLElement;
  private readonly statusBanner: HTMLElement;
  private readonly predictionBadge: HTMLElement;
  private readonly errorBanner: HTMLElement;
  private readonly moveLog: HTMLOListElement;

  constructor(readonly root: HTMLElement, baseUrl = "", options: AppOptions = {}) {
    this.client = new GameClient(baseUrl);
    this.animationMs = options.animationMs ?? 250;
    root.innerHTML = `
      <header class="controls">
        <label>automaton
          <select class="builtin-select"></select>
        </label>
        <label>play as
          <select class="role-select">
            <option value="BOB">Bob (desynchronizer)</option>
            <option value="ALICE">Alice (synchronizer)</option>
          </select>
        </label>
        <button class="start-button">start game</button>
        <details class="upload">
          <summary>or paste a document</summary>
          <textarea class="upload-text" rows="6" spellcheck="false"
            placeholder='{"n": 2, "alphabet": ["a"], "delta": {"a": [1, 1]}}'></textarea>
          <button class="upload-button">start from document</button>
        </details>
      </header>
      <div class="error-banner hidden" role="alert">
        <span class="error-text"></span><button class="error-dismiss">dismiss</button>
      </div>
      <main class="layout">
        <section class="board-host"></section>
        <aside class="panel">
          <div class="prediction-badge"></div>
          <div class="status-banner">no game yet</div>
          <div class="letter-buttons"></div>
          <ol class="move-log"></ol>
        </aside>
      </main>`;
    this.builtinSelect = root.querySelector(".builtin-select")!;
    this.roleSelect = root.querySelector(".role-select")!;
    this.startButton = root.querySelector(".start-button")!;
    this.uploadText = root.querySelector(".upload-text")!;
    this.uploadButton = root.querySelector(".upload-button")!;
    this.boardHost = root.querySelector(".board-host")!;
    this.buttonBar = root.querySelector(".letter-buttons")!;
    this.statusBanner = root.querySelector(".status-banner")!;
    this.predictionBadge = root.querySelector(".prediction-badge")!;
    this.errorBanner = root.querySelector(".error-banner")!;
    this.moveLog = root.querySelector(".move-log")!;

    this.startButton.addEventListener("click", () => {
      void this.startBuiltin(this.builtinSelect.value, this.role());
    });
    this.uploadButton.addEventListener("click", () => {
      void this.startDocument(this.uploadText.value, this.role());
    });
    this.errorBanner.querySelector(".error-dismiss")!.addEventListener("click", () => {
      this.errorBanner.classList.add("hidden");
    });
  }

  role(): "ALICE" | "BOB" {
    return this.roleSelect.value as "ALICE" | "BOB";
  }

  /** Resolves once all queued work (start, moves in flight) has settled. */
  idle(): Promise<void> {
    return this.queue;
  }

  currentState(): SessionState | null {
    return this.state;
  }

  renderedCoins(): number[] {
    return this.board ? this.board.renderedCoins() : [];
  }

  loggedMoves(): MoveEntry[] {
    return [...this.moveLog.querySelectorAll("li")].map((item) => ({
      mover: item.dataset.mover as "ALICE" | "BOB",
      letter: item.dataset.letter!,
      coins: JSON.parse(item.dataset.coins!) as number[],
    }));
  }

  async init(): Promise<void> {
    const task = this.queue.then(async () => {
      this.builtins = await this.client.listBuiltins();
      this.builtinSelect.replaceChildren(
        ...this.builtins.map((entry) => {
          const option = document.createElement("option");
          option.value = entry.name;
          option.textContent = `${entry.name} (${entry.n} states) - ${entry.description}`;
          return option;
        }),
      );
    });
    this.queue = task.catch((error) => this.showError(error));
    return this.queue;
  }

  async startBuiltin(name: string, role: "ALICE" | "BOB"): Promise<void> {
    const entry = this.builtins.find((b) => b.name === name);
    if (!entry) {
      this.showError(new Error(`unknown builtin ${name}`));
      return this.queue;
    }
    return this.start(entry.automaton, role);
  }

  async startDocument(text: string, role: "ALICE" | "BOB"): Promise<void> {
    return this.start(text, role);
  }

  private start(doc: AutomatonDoc | string, role: "ALICE" | "BOB"): Promise<void> {
    const task = this.queue.then(async () => {
      const created = await this.client.createSession(doc, role);
      const full = await this.client.getSession(created.id);
      this.sessionId = full.id;
      this.state = full;
      this.automaton = full.automaton!;
      this.board = new Board(this.boardHost, this.automaton);
      this.moveLog.replaceChildren();
      this.predictionBadge.textContent = `engine predicts: ${full.prediction} wins`;
      this.predictionBadge.dataset.prediction = full.prediction;
      // all states hold coins at the start; then replay whatever already
      // happened (the engine's opening when the human plays Bob)
      this.board.setCoins([...Array(this.automaton.n).keys()]);
      for (const move of full.history ?? []) {
        await this.animateHalfMove(move);
      }
      this.refreshControls();
    });
    this.queue = task.catch((error) => this.showError(error));
    return this.queue;
  }

  clickLetter(letter: string): Promise<void> {
    const task = this.queue.then(async () => {
      if (!this.sessionId || !this.state || this.state.status !== "IN_PROGRESS") {
        return; // click after game end is a no-op
      }
      if (this.state.to_move !== this.state.human_role) {
        return;
      }
      this.setButtonsEnabled(false);
      try {
        const reply = await this.client.playMove(this.sessionId, letter);
        for (const move of reply.moves ?? []) {
          await this.animateHalfMove(move);
        }
        this.state = { ...this.state, ...reply };
        this.board!.setCoins(reply.position.coins);
      } catch (error) {
        if (error instanceof ApiError && (error.status === 409 || error.status === 404)) {
          // lost a race against another tab: re-sync from the server
          const fresh = await this.client.getSession(this.sessionId);
          this.state = fresh;
          this.board!.setCoins(fresh.position.coins);
        } else {
          throw error;
        }
      } finally {
        this.refreshControls();
      }
    });
    this.queue = task.catch((error) => this.showError(error));
    return this.queue;
  }

  private async animateHalfMove(move: MoveEntry): Promise<void> {
    this.board!.setCoins(move.coins);
    const item = document.createElement("li");
    item.dataset.mover = move.mover;
    item.dataset.letter = move.letter;
    item.dataset.coins = JSON.stringify(move.coins);
    item.textContent = `${move.mover} plays ${move.letter} → {${move.coins.join(", ")}}`;
    item.style.color = letterColor(this.automaton!.alphabet.indexOf(move.letter));
    this.moveLog.appendChild(item);
    if (this.animationMs > 0) {
      await sleep(this.animationMs);
    }
  }

  private refreshControls(): void {
    const state = this.state;
    this.buttonBar.replaceChildren();
    if (!state || !this.automaton) {
      return;
    }
    const humanTurn = state.status === "IN_PROGRESS" && state.to_move === state.human_role;
    this.automaton.alphabet.forEach((name, index) => {
      const button = document.createElement("button");
      button.className = "letter-button";
      button.dataset.letter = name;
      button.textContent = name;
      button.style.borderColor = letterColor(index);
      button.disabled = !humanTurn;
      button.addEventListener("click", () => void this.clickLetter(name));
      this.buttonBar.appendChild(button);
    });
    if (state.status === "ALICE_WON") {
      const verdict = state.human_role === "ALICE" ? "you win!" : "the engine wins";
      this.statusBanner.textContent = `ALICE_WON — all coins merged: ${verdict}`;
    } else if (state.status === "IN_PROGRESS") {
      this.statusBanner.textContent = humanTurn
        ? `your move (${state.human_role})`
        : "engine to move";
    } else {
      this.statusBanner.textContent = state.status;
    }
    this.statusBanner.dataset.status = state.status;
  }

  private setButtonsEnabled(enabled: boolean): void {
    for (const button of this.buttonBar.querySelectorAll("button")) {
      (button as HTMLButtonElement).disabled = !enabled;
    }
  }

  private showError(error: unknown): void {
    const message = error instanceof Error ? error.message : String(error);
    this.errorBanner.querySelector(".error-text")!.textContent = message;
    this.errorBanner.classList.remove("hidden");
  }
}

export function createApp(root: HTMLElement, baseUrl = "", options: AppOptions = {}): App {
  return new App(root, baseUrl, options);
}
