import { presentElementsHash } from "./hash.js";
import {
    ClassifyResult,
    IllegalMoveError,
    ReconciliationError,
    SessionView,
} from "./types.js";

// Thin client over the game service. Every view that comes back is checked
// against its reconciliation hash; no game rules live on this side.

export class ApiClient {
    constructor(readonly baseUrl: string, readonly fetchFn: typeof fetch = fetch) {}

    private async reconcile(view: SessionView): Promise<SessionView> {
        const local = await presentElementsHash(view);
        if (local !== view.stateHash) {
            throw new ReconciliationError(view.stateHash, local);
        }
        return view;
    }

    async createGame(
        generators: string,
        engineSide: "A" | "B" | "none",
        firstMove?: number,
    ): Promise<SessionView> {
        const body: Record<string, unknown> = { generators, engineSide };
        if (firstMove !== undefined) body.firstMove = firstMove;
        const resp = await this.fetchFn(`${this.baseUrl}/game`, {
            method: "POST",
            headers: { "content-type": "application/json" },
            body: JSON.stringify(body),
        });
        if (!resp.ok) throw new Error(`create failed: ${resp.status}`);
        return this.reconcile(await resp.json());
    }

    async getGame(id: string): Promise<SessionView> {
        const resp = await this.fetchFn(`${this.baseUrl}/game/${id}`);
        if (!resp.ok) throw new Error(`session fetch failed: ${resp.status}`);
        return this.reconcile(await resp.json());
    }

    async move(id: string, element: number): Promise<SessionView> {
        const resp = await this.fetchFn(`${this.baseUrl}/game/${id}/move`, {
            method: "POST",
            headers: { "content-type": "application/json" },
            body: JSON.stringify({ element }),
        });
        if (resp.status === 409) {
            const detail = (await resp.json()).detail;
            throw new IllegalMoveError(detail.legalMoves ?? []);
        }
        if (!resp.ok) throw new Error(`move failed: ${resp.status}`);
        return this.reconcile(await resp.json());
    }

    async classify(generators: string): Promise<ClassifyResult> {
        const resp = await this.fetchFn(
            `${this.baseUrl}/classify?gens=${encodeURIComponent(generators)}`,
        );
        if (!resp.ok) throw new Error(`classify failed: ${resp.status}`);
        return resp.json();
    }

    async deleteGame(id: string): Promise<void> {
        await this.fetchFn(`${this.baseUrl}/game/${id}`, { method: "DELETE" });
    }
}
