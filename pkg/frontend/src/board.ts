/** SVG board: states on a circle, edges coloured per letter, coins on top.
 *
 * The board never computes a transition itself; it renders whatever coin set
 * the server reports.
 */

import type { AutomatonDoc } from "./api.js";

const SVG_NS = "http://www.w3.org/2000/svg";
const LETTER_COLORS = ["#4f9dde", "#e08a3c", "#7bc96f", "#c678dd", "#d16969"];

export interface BoardGeometry {
  width: number;
  height: number;
  centers: { x: number; y: number }[];
}

export function circularLayout(n: number, width = 640, height = 460): BoardGeometry {
  const cx = width / 2;
  const cy = height / 2;
  const radius = Math.min(width, height) / 2 - 60;
  const centers = [];
  for (let q = 0; q < n; q++) {
    // state 0 on top, indices clockwise, matching the usual figures
    const angle = -Math.PI / 2 + (2 * Math.PI * q) / n;
    centers.push({ x: cx + radius * Math.cos(angle), y: cy + radius * Math.sin(angle) });
  }
  return { width, height, centers };
}

function el(name: string, attrs: Record<string, string>): SVGElement {
  const node = document.createElementNS(SVG_NS, name) as SVGElement;
  for (const [key, value] of Object.entries(attrs)) {
    node.setAttribute(key, value);
  }
  return node;
}

export function letterColor(index: number): string {
  return LETTER_COLORS[index % LETTER_COLORS.length];
}

export class Board {
  readonly svg: SVGSVGElement;
  private geometry: BoardGeometry;
  private coinLayer: SVGElement;
  private coins = new Map<number, SVGElement>();

  constructor(container: HTMLElement, automaton: AutomatonDoc) {
    this.geometry = circularLayout(automaton.n);
    this.svg = el("svg", {
      viewBox: `0 0 ${this.geometry.width} ${this.geometry.height}`,
      class: "board",
    }) as SVGSVGElement;
    this.drawEdges(automaton);
    this.drawStates(automaton.n);
    this.coinLayer = el("g", { class: "coins" });
    this.svg.appendChild(this.coinLayer);
    container.replaceChildren(this.svg);
  }

  /** Occupied states as currently rendered, ascending. */
  renderedCoins(): number[] {
    return [...this.coins.keys()].sort((a, b) => a - b);
  }

  setCoins(states: number[]): void {
    const wanted = new Set(states);
    for (const [state, node] of [...this.coins]) {
      if (!wanted.has(state)) {
        node.remove();
        this.coins.delete(state);
      }
    }
    for (const state of states) {
      if (!this.coins.has(state)) {
        const { x, y } = this.geometry.centers[state];
        const coin = el("circle", {
          r: "9",
          class: "coin",
          "data-state": String(state),
          cx: String(x),
          cy: String(y - 1),
        });
        this.coinLayer.appendChild(coin);
        this.coins.set(state, coin);
      }
    }
  }

  private drawStates(n: number): void {
    const layer = el("g", { class: "states" });
    for (let q = 0; q < n; q++) {
      const { x, y } = this.geometry.centers[q];
      layer.appendChild(
        el("circle", { cx: String(x), cy: String(y), r: "16", class: "state", "data-state": String(q) }),
      );
      const label = el("text", { x: String(x), y: String(y + 4), class: "state-label" });
      label.textContent = String(q);
      layer.appendChild(label);
    }
    this.svg.appendChild(layer);
  }

  private drawEdges(automaton: AutomatonDoc): void {
    const defs = el("defs", {});
    automaton.alphabet.forEach((_, index) => {
      const marker = el("marker", {
        id: `arrow-${index}`,
        viewBox: "0 0 8 8",
        refX: "7",
        refY: "4",
        markerWidth: "6",
        markerHeight: "6",
        orient: "auto-start-reverse",
      });
      marker.appendChild(el("path", { d: "M0,0 L8,4 L0,8 z", fill: letterColor(index) }));
      defs.appendChild(marker);
    });
    this.svg.appendChild(defs);

    const layer = el("g", { class: "edges" });
    automaton.alphabet.forEach((name, index) => {
      const row = automaton.delta[name];
      for (let q = 0; q < automaton.n; q++) {
        layer.appendChild(this.edgePath(q, row[q], index, name));
      }
    });
    this.svg.appendChild(layer);
  }

  private edgePath(from: number, to: number, letterIndex: number, letterName: string): SVGElement {
    const color = letterColor(letterIndex);
    const group = el("g", {
      class: "edge",
      "data-from": String(from),
      "data-to": String(to),
      "data-letter": letterName,
    });
    const a = this.geometry.centers[from];
    const b = this.geometry.centers[to];
    let d: string;
    let labelX: number;
    let labelY: number;
    if (from === to) {
      // self loop drawn away from the centre of the board
      const cx = this.geometry.width / 2;
      const cy = this.geometry.height / 2;
      const dx = a.x - cx;
      const dy = a.y - cy;
      const len = Math.hypot(dx, dy) || 1;
      const ox = (dx / len) * 26;
      const oy = (dy / len) * 26;
      const spread = 10 + 8 * letterIndex;
      d = `M ${a.x + oy / 3} ${a.y - ox / 3} C ${a.x + ox + spread} ${a.y + oy - spread}, ` +
        `${a.x + ox + spread} ${a.y + oy + spread}, ${a.x - oy / 3} ${a.y + ox / 3}`;
      labelX = a.x + ox * 1.7;
      labelY = a.y + oy * 1.7;
    } else {
      // bow each letter's edge out a little so parallel edges stay readable
      const mx = (a.x + b.x) / 2;
      const my = (a.y + b.y) / 2;
      const nx = -(b.y - a.y);
      const ny = b.x - a.x;
      const len = Math.hypot(nx, ny) || 1;
      const bow = 14 + 14 * letterIndex;
      const px = mx + (nx / len) * bow;
      const py = my + (ny / len) * bow;
      d = `M ${a.x} ${a.y} Q ${px} ${py} ${b.x} ${b.y}`;
      labelX = mx + (nx / len) * (bow + 9);
      labelY = my + (ny / len) * (bow + 9);
    }
    const path = el("path", {
      d,
      fill: "none",
      stroke: color,
      "stroke-width": "1.6",
      "marker-end": `url(#arrow-${letterIndex})`,
    });
    const label = el("text", {
      x: String(labelX),
      y: String(labelY),
      class: "edge-label",
      fill: color,
    });
    label.textContent = letterName;
    group.appendChild(path);
    group.appendChild(label);
    return group;
  }
}
