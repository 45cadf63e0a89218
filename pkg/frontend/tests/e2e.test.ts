// Scripted session against the live service: the engine (side A) must open
// with 3 on <3,4,5>; we answer 4 through the real click path, the engine
// must reply 5, and taking 0 must end the game with the loss banner.  Every
// view is reconciled against the service's state hash by the client itself.

import { spawn, ChildProcess } from "node:child_process";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { ApiClient } from "../src/api.js";
import { App } from "../src/app.js";
import { presentElementsHash } from "../src/hash.js";

const PORT = 8200 + Math.floor(Math.random() * 500);
const BASE = `http://127.0.0.1:${PORT}`;

let server: ChildProcess;

async function waitFor(cond: () => boolean, ms = 10000): Promise<void> {
    const t0 = Date.now();
    while (!cond()) {
        if (Date.now() - t0 > ms) throw new Error("timeout waiting for condition");
        await new Promise((r) => setTimeout(r, 25));
    }
}

beforeAll(async () => {
    server = spawn(
        "python3",
        ["-m", "semichomp.cli", "serve", "--port", String(PORT)],
        { cwd: "..", stdio: "ignore" },
    );
    const t0 = Date.now();
    for (;;) {
        try {
            const resp = await fetch(`${BASE}/classify?gens=2,3`);
            if (resp.ok) break;
        } catch {
            /* not up yet */
        }
        if (Date.now() - t0 > 25000) throw new Error("service did not come up");
        await new Promise((r) => setTimeout(r, 250));
    }
}, 40000);

afterAll(() => {
    server?.kill();
});

describe("scripted session on <3,4,5>", () => {
    it("plays the forced line through the real client", async () => {
        document.body.innerHTML = "<div id='app'></div>";
        const api = new ApiClient(BASE, fetch);
        const app = new App(document.getElementById("app")!, api);

        const opening = await app.newGame("3,4,5", "A");
        expect(opening.history).toEqual([{ player: "engine", element: 3 }]);
        expect(await presentElementsHash(opening)).toBe(opening.stateHash);
        const presentAfterOpen = opening.elements
            .filter((e) => e.present)
            .map((e) => e.value);
        expect(presentAfterOpen).toEqual([0, 4, 5]);

        // session id is shareable via the fragment
        expect(window.location.hash).toBe(`#g=${opening.id}`);

        // click 4: the engine must answer 5, leaving only the minimum
        const node4 = document.querySelector("[data-value='4']")!;
        node4.dispatchEvent(new MouseEvent("click", { bubbles: true }));
        await waitFor(() => (app.board.view?.history.length ?? 0) === 3);
        const mid = app.board.view!;
        expect(mid.history.map((h) => h.element)).toEqual([3, 4, 5]);
        expect(await presentElementsHash(mid)).toBe(mid.stateHash);
        expect(mid.elements.filter((e) => e.present).map((e) => e.value)).toEqual([0]);
        expect(mid.status).toBe("ongoing");

        // forced to take 0: loss banner, input disabled
        const node0 = document.querySelector("[data-value='0']")!;
        node0.dispatchEvent(new MouseEvent("click", { bubbles: true }));
        await waitFor(() => app.board.view?.status === "finished");
        const final = app.board.view!;
        expect(final.loser).toBe("human");
        expect(await presentElementsHash(final)).toBe(final.stateHash);
        expect(document.querySelector(".banner.lost")?.textContent).toContain("you lose");
        expect(document.querySelectorAll(".node.legal").length).toBe(0);
    });

    it("rejects an illegal move without mutating the session", async () => {
        const api = new ApiClient(BASE, fetch);
        const view = await api.createGame("3,4,5", "A");
        await expect(api.move(view.id, 7)).rejects.toMatchObject({
            legalMoves: [0, 4, 5],
        });
        const unchanged = await api.getGame(view.id);
        expect(unchanged.history.length).toBe(1);
        await api.deleteGame(view.id);
    });

    it("engine B answers every opening and wins 25 random playouts on <4,5>", async () => {
        const api = new ApiClient(BASE, fetch);
        for (let round = 0; round < 25; round++) {
            let view = await api.createGame("4,5", "B");
            const openings = view.elements
                .filter((e) => e.legal && e.value > 0)
                .map((e) => e.value);
            const pick = openings[Math.floor(Math.random() * openings.length)];
            view = await api.move(view.id, pick);
            while (view.status === "ongoing") {
                const legal = view.elements
                    .filter((e) => e.legal)
                    .map((e) => e.value);
                const mv = legal[Math.floor(Math.random() * legal.length)];
                view = await api.move(view.id, mv);
            }
            expect(view.loser).toBe("human");
            await api.deleteGame(view.id);
        }
    }, 60000);
});
