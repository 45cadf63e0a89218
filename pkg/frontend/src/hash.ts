import type { SessionView } from "./types.js";

// The service hashes the sorted present elements; the client recomputes the
// same digest after every round-trip and refuses to render a divergent view.

export async function presentElementsHash(view: SessionView): Promise<string> {
    const present = view.elements
        .filter((e) => e.present)
        .map((e) => e.value)
        .sort((a, b) => a - b);
    const text = present.join(",");
    const bytes = new TextEncoder().encode(text);
    const digest = await crypto.subtle.digest("SHA-1", bytes);
    const hex = Array.from(new Uint8Array(digest))
        .map((b) => b.toString(16).padStart(2, "0"))
        .join("");
    return hex.slice(0, 16);
}
