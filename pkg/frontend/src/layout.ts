// Layered layout computed purely from the cover edges the service sends.
// Layer = longest chain from a source; order within a layer is settled by a
// few barycenter sweeps so cover edges stay short.

export interface NodePosition {
    value: number;
    x: number;
    y: number;
    layer: number;
}

export interface Layout {
    nodes: Map<number, NodePosition>;
    layers: number[][];
    width: number;
    height: number;
}

export function layeredLayout(values: number[], covers: [number, number][]): Layout {
    const above = new Map<number, number[]>();
    const below = new Map<number, number[]>();
    for (const v of values) {
        above.set(v, []);
        below.set(v, []);
    }
    for (const [lo, hi] of covers) {
        above.get(lo)?.push(hi);
        below.get(hi)?.push(lo);
    }

    // longest-path layering from the sources, iterated to a fixpoint
    const layer = new Map<number, number>(values.map((v) => [v, 0]));
    let changed = true;
    let guard = values.length + 1;
    while (changed && guard-- > 0) {
        changed = false;
        for (const v of values) {
            for (const lo of below.get(v) ?? []) {
                const want = (layer.get(lo) ?? 0) + 1;
                if (want > (layer.get(v) ?? 0)) {
                    layer.set(v, want);
                    changed = true;
                }
            }
        }
    }

    const depth = Math.max(0, ...layer.values());
    const layers: number[][] = Array.from({ length: depth + 1 }, () => []);
    for (const v of values) layers[layer.get(v) ?? 0].push(v);
    for (const row of layers) row.sort((a, b) => a - b);

    // barycenter sweeps: order each layer by the mean index of its neighbours
    const indexIn = (row: number[]) => new Map(row.map((v, i) => [v, i]));
    for (let sweep = 0; sweep < 4; sweep++) {
        const up = sweep % 2 === 0;
        const range = up
            ? Array.from({ length: depth }, (_, i) => i + 1)
            : Array.from({ length: depth }, (_, i) => depth - 1 - i);
        for (const li of range) {
            const refRow = indexIn(layers[li + (up ? -1 : 1)]);
            const score = (v: number) => {
                const nbrs = (up ? below : above).get(v) ?? [];
                const idx = nbrs
                    .map((n) => refRow.get(n))
                    .filter((i): i is number => i !== undefined);
                if (idx.length === 0) return Number.POSITIVE_INFINITY;
                return idx.reduce((s, i) => s + i, 0) / idx.length;
            };
            layers[li] = [...layers[li]].sort(
                (a, b) => score(a) - score(b) || a - b,
            );
        }
    }

    const widest = Math.max(1, ...layers.map((row) => row.length));
    const nodes = new Map<number, NodePosition>();
    layers.forEach((row, li) => {
        row.forEach((v, i) => {
            nodes.set(v, {
                value: v,
                x: i - (row.length - 1) / 2,
                y: li,
                layer: li,
            });
        });
    });
    return { nodes, layers, width: widest, height: depth + 1 };
}
