export interface ElementView {
    value: number;
    present: boolean;
    legal: boolean;
}

export interface HistoryEntry {
    player: "human" | "engine";
    element: number;
}

export interface SessionView {
    schemaVersion: number;
    id: string;
    generators: number[];
    engineSide: "A" | "B" | "none";
    status: "ongoing" | "finished";
    loser: "human" | "engine" | null;
    history: HistoryEntry[];
    truncated: boolean;
    elements: ElementView[];
    covers: [number, number][];
    stateHash: string;
    certificate: string;
    engineMoveSource: string | null;
}

export interface ClassifyResult {
    family: string;
    winner: string;
    winningMove: number | null;
    theorem: string | null;
    hasStrategy: boolean;
}

export class IllegalMoveError extends Error {
    constructor(readonly legalMoves: number[]) {
        super("illegal move");
    }
}

export class ReconciliationError extends Error {
    constructor(expected: string, got: string) {
        super(`state hash mismatch: service ${expected}, client ${got}`);
    }
}
