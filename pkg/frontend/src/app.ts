import { ApiClient } from "./api.js";
import { SessionView } from "./types.js";
import { BoardView } from "./view.js";

// Single-page bootstrap: a new-game form plus the board; the session id
// lives in the URL fragment so games are shareable.

export function defaultApiBase(): string {
    const params = new URLSearchParams(window.location.search);
    return params.get("api") ?? "http://127.0.0.1:8077";
}

export function sessionFromFragment(): string | null {
    const frag = window.location.hash.replace(/^#/, "");
    return frag.startsWith("g=") ? frag.slice(2) : null;
}

export class App {
    readonly board: BoardView;

    constructor(readonly root: HTMLElement, readonly api: ApiClient) {
        const form = document.createElement("form");
        form.className = "new-game";
        form.innerHTML = `
            <label>generators <input name="gens" value="3,4,5" size="12"></label>
            <label>engine
              <select name="side">
                <option value="A">A (engine opens)</option>
                <option value="B">B (you open)</option>
                <option value="none">none (analysis)</option>
              </select>
            </label>
            <button type="submit">new game</button>
            <span class="verdict"></span>
        `;
        const boardHost = document.createElement("div");
        boardHost.className = "board-host";
        root.append(form, boardHost);

        this.board = new BoardView(boardHost, api, (view) => {
            window.location.hash = `g=${view.id}`;
        });

        form.addEventListener("submit", (ev) => {
            ev.preventDefault();
            const gens = (form.elements.namedItem("gens") as HTMLInputElement).value;
            const side = (form.elements.namedItem("side") as HTMLSelectElement)
                .value as "A" | "B" | "none";
            void this.newGame(gens, side, form);
        });
    }

    async newGame(gens: string, side: "A" | "B" | "none", form?: HTMLFormElement): Promise<SessionView> {
        const view = await this.api.createGame(gens, side);
        await this.board.load(view);
        if (form) {
            const verdict = form.querySelector(".verdict") as HTMLElement;
            try {
                const cls = await this.api.classify(gens);
                verdict.textContent =
                    cls.winner === "unresolved"
                        ? "winner not covered by the family theorems"
                        : `prediction: ${cls.winner} wins` +
                          (cls.theorem ? ` (${cls.theorem})` : "");
            } catch {
                verdict.textContent = "";
            }
        }
        return view;
    }

    async resume(id: string): Promise<void> {
        const view = await this.api.getGame(id);
        await this.board.load(view);
    }
}

export function boot(): void {
    const root = document.getElementById("app");
    if (!root) return;
    const app = new App(root, new ApiClient(defaultApiBase()));
    const existing = sessionFromFragment();
    if (existing) void app.resume(existing);
}
