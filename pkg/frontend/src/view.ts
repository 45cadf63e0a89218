import { ApiClient } from "./api.js";
import { layeredLayout } from "./layout.js";
import { IllegalMoveError, SessionView } from "./types.js";

const SVG_NS = "http://www.w3.org/2000/svg";
const CELL = 64;
const PAD = 40;

// Renders the session as a layered diagram and forwards clicks to the
// service. All legality and outcomes come from the service; the only state
// kept here is the latest view and a single in-flight guard.

export class BoardView {
    view: SessionView | null = null;
    busy = false;
    private pendingRetry: (() => void) | null = null;

    constructor(
        readonly root: HTMLElement,
        readonly api: ApiClient,
        readonly onViewChange: (view: SessionView) => void = () => {},
    ) {}

    async load(view: SessionView): Promise<void> {
        this.view = view;
        this.render();
        this.onViewChange(view);
    }

    async submitMove(element: number): Promise<void> {
        if (!this.view || this.busy || this.view.status !== "ongoing") return;
        this.busy = true;
        this.root.classList.add("busy");
        try {
            const next = await this.api.move(this.view.id, element);
            this.view = next;
            this.render();
            this.onViewChange(next);
        } catch (err) {
            if (err instanceof IllegalMoveError) {
                this.shake(element);
                await this.refresh();
            } else {
                this.offerRetry(() => void this.submitMove(element));
            }
        } finally {
            this.busy = false;
            this.root.classList.remove("busy");
        }
    }

    async refresh(): Promise<void> {
        if (!this.view) return;
        try {
            const next = await this.api.getGame(this.view.id);
            this.view = next;
            this.render();
            this.onViewChange(next);
        } catch {
            this.offerRetry(() => void this.refresh());
        }
    }

    private shake(element: number): void {
        const node = this.root.querySelector(`[data-value="${element}"]`);
        if (node) {
            node.classList.add("shake");
            setTimeout(() => node.classList.remove("shake"), 400);
        }
    }

    private offerRetry(action: () => void): void {
        this.pendingRetry = action;
        this.render();
    }

    retryPending(): void {
        const action = this.pendingRetry;
        this.pendingRetry = null;
        if (action) action();
        else this.render();
    }

    render(): void {
        const view = this.view;
        this.root.textContent = "";
        if (!view) return;

        if (this.pendingRetry) {
            const bar = document.createElement("div");
            bar.className = "retry-bar";
            bar.textContent = "network hiccup - the board is unchanged. ";
            const btn = document.createElement("button");
            btn.textContent = "retry";
            btn.addEventListener("click", () => this.retryPending());
            bar.appendChild(btn);
            this.root.appendChild(bar);
        }

        const status = document.createElement("div");
        status.className = "status";
        if (view.status === "finished") {
            status.classList.add("banner", view.loser === "human" ? "lost" : "won");
            status.textContent =
                view.loser === "human"
                    ? "You took 0 - you lose."
                    : "The engine took 0 - you win!";
        } else {
            const side = view.engineSide === "none" ? "analysis" : `engine: ${view.engineSide}`;
            status.textContent = `playing <${view.generators.join(",")}>  (${side}, ${view.certificate})`;
        }
        this.root.appendChild(status);

        this.root.appendChild(this.renderSvg(view));

        const hist = document.createElement("div");
        hist.className = "history";
        hist.textContent =
            "moves: " +
            view.history.map((h) => `${h.player[0]}:${h.element}`).join("  ");
        this.root.appendChild(hist);
    }

    private renderSvg(view: SessionView): SVGSVGElement {
        const values = view.elements.map((e) => e.value);
        const layout = layeredLayout(values, view.covers);
        const svg = document.createElementNS(SVG_NS, "svg");
        const width = layout.width * CELL + 2 * PAD;
        const height = layout.height * CELL + 2 * PAD;
        svg.setAttribute("viewBox", `0 0 ${width} ${height}`);
        svg.setAttribute("class", "board");
        const px = (x: number) => width / 2 + x * CELL;
        const py = (y: number) => height - PAD - y * CELL;

        for (const [lo, hi] of view.covers) {
            const a = layout.nodes.get(lo);
            const b = layout.nodes.get(hi);
            if (!a || !b) continue;
            const line = document.createElementNS(SVG_NS, "line");
            line.setAttribute("x1", String(px(a.x)));
            line.setAttribute("y1", String(py(a.y)));
            line.setAttribute("x2", String(px(b.x)));
            line.setAttribute("y2", String(py(b.y)));
            line.setAttribute("class", "edge");
            svg.appendChild(line);
        }

        for (const el of view.elements) {
            const pos = layout.nodes.get(el.value);
            if (!pos) continue;
            const g = document.createElementNS(SVG_NS, "g");
            g.setAttribute("data-value", String(el.value));
            g.setAttribute(
                "class",
                [
                    "node",
                    el.present ? "present" : "ghost",
                    el.legal && view.status === "ongoing" ? "legal" : "",
                ].join(" "),
            );
            const circle = document.createElementNS(SVG_NS, "circle");
            circle.setAttribute("cx", String(px(pos.x)));
            circle.setAttribute("cy", String(py(pos.y)));
            circle.setAttribute("r", "20");
            const label = document.createElementNS(SVG_NS, "text");
            label.setAttribute("x", String(px(pos.x)));
            label.setAttribute("y", String(py(pos.y) + 5));
            label.setAttribute("text-anchor", "middle");
            label.textContent = String(el.value);
            const title = document.createElementNS(SVG_NS, "title");
            title.textContent = `element ${el.value}` + (el.present ? "" : " (removed)");
            g.append(title, circle, label);
            if (el.legal && el.present && view.status === "ongoing") {
                g.addEventListener("click", () => void this.submitMove(el.value));
            }
            svg.appendChild(g);
        }
        return svg;
    }
}
