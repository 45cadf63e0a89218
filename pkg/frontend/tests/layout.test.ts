import { describe, expect, it } from "vitest";

import { layeredLayout } from "../src/layout.js";

describe("layeredLayout", () => {
    it("layers a chain by longest path", () => {
        const layout = layeredLayout([0, 3, 6], [[0, 3], [3, 6]]);
        expect(layout.nodes.get(0)?.layer).toBe(0);
        expect(layout.nodes.get(3)?.layer).toBe(1);
        expect(layout.nodes.get(6)?.layer).toBe(2);
        expect(layout.height).toBe(3);
    });

    it("uses the longest chain when several paths exist", () => {
        // 0 -> 4 -> 9 and 0 -> 9 directly: 9 sits two layers up
        const layout = layeredLayout([0, 4, 9], [[0, 4], [4, 9], [0, 9]]);
        expect(layout.nodes.get(9)?.layer).toBe(2);
    });

    it("spreads an antichain across one layer", () => {
        const layout = layeredLayout([0, 4, 5, 6], [[0, 4], [0, 5], [0, 6]]);
        expect(layout.layers[1]).toEqual([4, 5, 6]);
        const xs = [4, 5, 6].map((v) => layout.nodes.get(v)!.x);
        expect(new Set(xs).size).toBe(3);
        expect(xs.reduce((a, b) => a + b, 0)).toBeCloseTo(0);
    });

    it("keeps every element exactly once", () => {
        const values = [0, 9, 11, 12, 18, 23, 24, 27, 35, 36];
        const covers: [number, number][] = [
            [0, 9], [0, 11], [0, 12], [9, 18], [11, 23], [12, 24],
            [12, 23], [18, 27], [23, 35], [24, 36], [24, 35], [27, 36],
        ];
        const layout = layeredLayout(values, covers);
        const seen = [...layout.nodes.keys()].sort((a, b) => a - b);
        expect(seen).toEqual(values);
        for (const [lo, hi] of covers) {
            expect(layout.nodes.get(lo)!.layer).toBeLessThan(
                layout.nodes.get(hi)!.layer,
            );
        }
    });
});
