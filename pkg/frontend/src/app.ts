// Application shell: toolbar, quiver canvas, side panels, exchange-graph
// overlay. All algebra happens on the server; this class only moves
// served JSON into the DOM and keeps the session history.
//
// Server requests are funneled through a single promise chain, so at
// most one is in flight and clicks during a pending mutation are applied
// in order instead of racing.

import { ApiClient, ApiError } from "./api";
import { renderQuiver } from "./graphview";
import { pin, runLayout, unpin } from "./layout";
import { renderExchangeGraph } from "./neighborhood";
import { renderFlags, renderLog, renderPotential } from "./panels";
import { Session } from "./session";
import { GraphDoc, QpDoc, QpSchema } from "./types";

const CANVAS_W = 760;
const CANVAS_H = 480;
const MAX_DEPTH = 4;

const TEMPLATE = `
  <header class="toolbar">
    <input id="braid" type="text" placeholder="positive braid word, e.g. 1 2 1 2 1 2" />
    <input id="strands" type="number" min="2" placeholder="strands (auto)" />
    <button id="load">Load</button>
    <span class="gap"></span>
    <button id="undo" disabled>Undo</button>
    <label>depth <input id="depth" type="number" min="0" max="${MAX_DEPTH}" value="2" /></label>
    <button id="explore">Neighborhood</button>
    <span id="status"></span>
  </header>
  <details id="paste">
    <summary>load a raw QP document</summary>
    <textarea id="qpjson" rows="6" spellcheck="false"></textarea>
    <button id="loadqp">Load document</button>
  </details>
  <div id="banner" hidden></div>
  <main>
    <svg id="quiver" width="${CANVAS_W}" height="${CANVAS_H}"></svg>
    <aside>
      <section><h2>Potential</h2><div id="potential"></div></section>
      <section id="flags"></section>
      <section><h2>Last mutation</h2><div id="log"></div></section>
      <section><h2>History</h2><div id="word"></div></section>
    </aside>
  </main>
  <section id="overlay" hidden>
    <h2>Exchange graph</h2>
    <div id="overlay-badge" hidden></div>
    <svg id="exgraph" width="760" height="400"></svg>
  </section>
`;

export class App {
  session: Session | null = null;
  graph: GraphDoc | null = null;

  private readonly api: ApiClient;
  private readonly root: HTMLElement;
  private chain: Promise<void> = Promise.resolve();

  constructor(root: HTMLElement, api: ApiClient = new ApiClient()) {
    this.root = root;
    this.api = api;
    root.innerHTML = TEMPLATE;
    this.wire();
    this.render();
  }

  private part<T extends HTMLElement>(id: string): T {
    return this.root.querySelector(`#${id}`) as T;
  }

  private svg(id: string): SVGSVGElement {
    return this.root.querySelector(`#${id}`) as unknown as SVGSVGElement;
  }

  private wire(): void {
    this.part<HTMLButtonElement>("load").addEventListener("click", () => {
      const braid = this.part<HTMLInputElement>("braid").value;
      const strandsRaw = this.part<HTMLInputElement>("strands").value;
      void this.loadBraid(braid, strandsRaw ? Number(strandsRaw) : null);
    });
    this.part<HTMLButtonElement>("undo").addEventListener("click", () => {
      this.undo();
    });
    this.part<HTMLButtonElement>("explore").addEventListener("click", () => {
      const depth = Number(this.part<HTMLInputElement>("depth").value);
      void this.neighborhood(depth);
    });
    this.part<HTMLButtonElement>("loadqp").addEventListener("click", () => {
      void this.loadDocument(this.part<HTMLTextAreaElement>("qpjson").value);
    });
  }

  /** Settles when every queued server interaction has finished. */
  idle(): Promise<void> {
    return this.chain;
  }

  /** Serialize server interactions: at most one in flight. */
  private enqueue(task: () => Promise<void>): Promise<void> {
    this.chain = this.chain.then(async () => {
      this.clearBanner();
      this.part<HTMLElement>("status").textContent = "working";
      try {
        await task();
      } catch (error) {
        this.showError(error);
      } finally {
        this.part<HTMLElement>("status").textContent = "";
      }
    });
    return this.chain;
  }

  loadBraid(braid: string, strands: number | null = null): Promise<void> {
    return this.enqueue(async () => {
      const qp = await this.api.qp(braid, strands);
      this.startSession(new Session(qp, braid, strands));
    });
  }

  loadDocument(text: string): Promise<void> {
    return this.enqueue(async () => {
      let doc: QpDoc;
      try {
        doc = QpSchema.parse(JSON.parse(text));
      } catch {
        this.banner("error", "not a valid QP document");
        return;
      }
      this.startSession(new Session(doc));
    });
  }

  clickMutate(vertex: string): Promise<void> {
    return this.enqueue(async () => {
      if (!this.session) return;
      try {
        const response = await this.api.mutate(this.session.current, vertex);
        this.session.push(vertex, response);
        this.render();
      } catch (error) {
        if (error instanceof ApiError && error.blocked) {
          this.banner("blocked", `mutation at ${vertex} is blocked: ${error.message}`);
          return;
        }
        throw error;
      }
    });
  }

  undo(): Promise<void> {
    return this.enqueue(async () => {
      if (this.session && this.session.undo()) this.render();
    });
  }

  neighborhood(depth: number): Promise<void> {
    return this.enqueue(async () => {
      if (!this.session) return;
      const bounded = Math.max(0, Math.min(MAX_DEPTH, Math.trunc(depth)));
      this.graph = await this.api.explore(this.session.current, bounded);
      this.renderOverlay();
    });
  }

  /** Walk a seed's witness word through the server, one mutation per
   *  step, so the jump lands in the history like manual clicks. */
  jumpTo(word: string[]): Promise<void> {
    return this.enqueue(async () => {
      if (!this.session) return;
      for (const vertex of word) {
        const response = await this.api.mutate(this.session.current, vertex);
        this.session.push(vertex, response);
      }
      this.render();
    });
  }

  private startSession(session: Session): void {
    this.session = session;
    this.graph = null;
    const qp = session.current;
    runLayout(
      {
        vertices: qp.vertices,
        links: qp.arrows.map((a): [string, string] => [a.tail, a.head]),
      },
      session.positions,
      CANVAS_W,
      CANVAS_H,
    );
    this.part<HTMLInputElement>("braid").value = session.braid;
    this.part<HTMLElement>("overlay").hidden = true;
    this.render();
  }

  render(): void {
    const session = this.session;
    this.part<HTMLButtonElement>("undo").disabled = !session || session.length === 0;
    if (!session) return;
    renderQuiver(this.svg("quiver"), session.current, session.positions, {
      onVertexClick: (vertex) => void this.clickMutate(vertex),
      onPin: (vertex, x, y) => {
        pin(session.positions, vertex, x, y);
        this.renderQuiverOnly();
      },
      onUnpin: (vertex) => {
        unpin(session.positions, vertex);
        this.renderQuiverOnly();
      },
    });
    renderPotential(this.part("potential"), session.current);
    renderFlags(this.part("flags"), session.lastFlags);
    renderLog(this.part("log"), session.lastLog);
    this.renderWord();
  }

  private renderQuiverOnly(): void {
    const session = this.session;
    if (!session) return;
    renderQuiver(this.svg("quiver"), session.current, session.positions, {
      onVertexClick: (vertex) => void this.clickMutate(vertex),
      onPin: (vertex, x, y) => {
        pin(session.positions, vertex, x, y);
        this.renderQuiverOnly();
      },
      onUnpin: (vertex) => {
        unpin(session.positions, vertex);
        this.renderQuiverOnly();
      },
    });
  }

  private renderWord(): void {
    const el = this.part<HTMLElement>("word");
    el.textContent = "";
    const word = this.session ? this.session.word() : [];
    if (word.length === 0) {
      const empty = document.createElement("div");
      empty.className = "empty";
      empty.textContent = "at the root seed";
      el.appendChild(empty);
      return;
    }
    for (const vertex of word) {
      const chip = document.createElement("span");
      chip.className = "chip step";
      chip.textContent = vertex;
      el.appendChild(chip);
    }
  }

  private renderOverlay(): void {
    const overlay = this.part<HTMLElement>("overlay");
    const badge = this.part<HTMLElement>("overlay-badge");
    overlay.hidden = false;
    const graph = this.graph;
    if (!graph) return;
    if (graph.status === "COMPLETE") {
      badge.hidden = true;
      badge.textContent = "";
    } else {
      badge.hidden = false;
      badge.className = "badge";
      badge.textContent =
        graph.status === "BUDGET"
          ? `node budget exhausted, ${graph.frontier.length} seeds on the frontier`
          : `depth bounded, ${graph.frontier.length} frontier seeds unexplored`;
    }
    renderExchangeGraph(this.svg("exgraph"), graph, (word) => void this.jumpTo(word));
  }

  private clearBanner(): void {
    const banner = this.part<HTMLElement>("banner");
    banner.hidden = true;
    banner.textContent = "";
    banner.className = "";
  }

  private banner(kind: "error" | "blocked", message: string): void {
    const banner = this.part<HTMLElement>("banner");
    banner.hidden = false;
    banner.className = `banner ${kind}`;
    banner.textContent = message;
  }

  private showError(error: unknown): void {
    if (error instanceof ApiError) {
      this.banner("error", error.message);
    } else {
      this.banner("error", error instanceof Error ? error.message : String(error));
    }
  }
}
