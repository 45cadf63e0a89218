import { describe, expect, it } from "vitest";

import { ApiClient } from "../src/api.js";
import { presentElementsHash } from "../src/hash.js";
import { IllegalMoveError, ReconciliationError, SessionView } from "../src/types.js";

async function makeView(present: number[], extra: Partial<SessionView> = {}): Promise<SessionView> {
    const view: SessionView = {
        schemaVersion: 1,
        id: "abc",
        generators: [3, 4, 5],
        engineSide: "A",
        status: "ongoing",
        loser: null,
        history: [{ player: "engine", element: 3 }],
        truncated: false,
        elements: [0, 4, 5].map((value) => ({
            value,
            present: present.includes(value),
            legal: present.includes(value),
        })),
        covers: [[0, 4], [0, 5]],
        stateHash: "",
        certificate: "Thm3.4",
        engineMoveSource: "Thm3.4",
        ...extra,
    };
    view.stateHash = await presentElementsHash(view);
    return view;
}

function fakeFetch(handler: (url: string, init?: RequestInit) => Promise<[number, unknown]>): typeof fetch {
    return (async (url: any, init?: any) => {
        const [status, body] = await handler(String(url), init);
        return {
            ok: status >= 200 && status < 300,
            status,
            json: async () => body,
        } as Response;
    }) as typeof fetch;
}

describe("ApiClient", () => {
    it("accepts views whose hash reconciles", async () => {
        const view = await makeView([0, 4, 5]);
        const api = new ApiClient("http://x", fakeFetch(async () => [200, view]));
        const got = await api.getGame("abc");
        expect(got.stateHash).toBe(view.stateHash);
    });

    it("rejects a view whose element set disagrees with its hash", async () => {
        const view = await makeView([0, 4, 5]);
        view.elements[1].present = false; // tamper after hashing
        const api = new ApiClient("http://x", fakeFetch(async () => [200, view]));
        await expect(api.getGame("abc")).rejects.toBeInstanceOf(ReconciliationError);
    });

    it("turns 409 into IllegalMoveError with the legal list", async () => {
        const api = new ApiClient(
            "http://x",
            fakeFetch(async () => [
                409,
                { detail: { error: "illegal move", legalMoves: [0, 4, 5] } },
            ]),
        );
        await expect(api.move("abc", 7)).rejects.toMatchObject({
            legalMoves: [0, 4, 5],
        });
        await expect(api.move("abc", 7)).rejects.toBeInstanceOf(IllegalMoveError);
    });

    it("posts generators and engine side on create", async () => {
        let captured: any = null;
        const view = await makeView([0, 4, 5]);
        const api = new ApiClient(
            "http://x",
            fakeFetch(async (url, init) => {
                captured = { url, body: JSON.parse(String(init?.body)) };
                return [200, view];
            }),
        );
        await api.createGame("3,4,5", "A");
        expect(captured.url).toBe("http://x/game");
        expect(captured.body).toEqual({ generators: "3,4,5", engineSide: "A" });
    });
});
