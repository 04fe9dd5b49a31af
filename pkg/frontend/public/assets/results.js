/** Results explorer: the rank-interval chart (one bar per alternative over
 * its attainable ranks) and a draggable Hasse diagram of the necessary
 * relation. Displayed numbers are taken bit-for-bit from the payload. */
import { h, svg } from "./dom.js";
const ROW_H = 22;
const CHART_W = 420;
const LABEL_W = 110;
/** Alternatives ordered by the representative ranking (ties keep payload
 * order), which is how the bars are listed. */
export function chartOrder(payload) {
    return payload.ranking.flat();
}
export function renderRankChart(payload) {
    const order = chartOrder(payload);
    const m = payload.ids.length;
    const byId = new Map(payload.rank_ranges.map((r) => [r.id, r]));
    const chart = svg("svg", {
        width: LABEL_W + CHART_W + 10,
        height: ROW_H * order.length + 24,
        class: "rank-chart",
    });
    const x = (rank) => LABEL_W + ((rank - 1) / Math.max(1, m - 1)) * (CHART_W - 20);
    order.forEach((id, row) => {
        const rr = byId.get(id);
        if (!rr)
            return;
        const y = 14 + row * ROW_H;
        chart.append(svg("text", { x: 0, y: y + 4, class: "alt-label", "data-id": id }, id));
        if (rr.best_rank === rr.worst_rank) {
            chart.append(svg("circle", {
                cx: x(rr.best_rank),
                cy: y,
                r: 4,
                class: "rank-point",
                "data-id": id,
                "data-best": String(rr.best_rank),
                "data-worst": String(rr.worst_rank),
            }));
        }
        else {
            chart.append(svg("rect", {
                x: x(rr.best_rank),
                y: y - 5,
                width: x(rr.worst_rank) - x(rr.best_rank),
                height: 10,
                class: "rank-interval",
                "data-id": id,
                "data-best": String(rr.best_rank),
                "data-worst": String(rr.worst_rank),
            }));
        }
    });
    return chart;
}
/** Longest-path layering for the Hasse drawing. */
export function hasseLayers(ids, edges) {
    const depth = new Map(ids.map((id) => [id, 0]));
    let changed = true;
    let guard = 0;
    while (changed && guard++ <= ids.length + 1) {
        changed = false;
        for (const [q, p] of edges) {
            const want = (depth.get(q) ?? 0) + 1;
            if ((depth.get(p) ?? 0) < want) {
                depth.set(p, want);
                changed = true;
            }
        }
    }
    return depth;
}
export function renderHasse(payload) {
    const nodes = new Set();
    for (const [q, p] of payload.hasse) {
        nodes.add(q);
        nodes.add(p);
    }
    const ids = payload.ids.filter((id) => nodes.has(id));
    const depth = hasseLayers(ids, payload.hasse);
    const layers = new Map();
    for (const id of ids) {
        const d = depth.get(id) ?? 0;
        if (!layers.has(d))
            layers.set(d, []);
        layers.get(d).push(id);
    }
    const width = 520;
    const layerCount = Math.max(1, layers.size);
    const height = 60 * layerCount + 20;
    const pos = new Map();
    for (const [d, members] of layers) {
        members.forEach((id, i) => {
            pos.set(id, {
                x: ((i + 1) * width) / (members.length + 1),
                y: 36 + d * 60,
            });
        });
    }
    const chart = svg("svg", { width, height, class: "hasse" });
    const edgeEls = payload.hasse.map(([q, p]) => {
        const line = svg("line", {
            class: "hasse-edge",
            "data-from": q,
            "data-to": p,
        });
        chart.append(line);
        return { q, p, line };
    });
    const nodeEls = new Map();
    const sync = () => {
        for (const { q, p, line } of edgeEls) {
            const a = pos.get(q);
            const b = pos.get(p);
            line.setAttribute("x1", String(a.x));
            line.setAttribute("y1", String(a.y));
            line.setAttribute("x2", String(b.x));
            line.setAttribute("y2", String(b.y));
        }
        for (const [id, g] of nodeEls) {
            const at = pos.get(id);
            g.setAttribute("transform", `translate(${at.x}, ${at.y})`);
        }
    };
    for (const id of ids) {
        const g = svg("g", { class: "hasse-node", "data-id": id });
        g.append(svg("circle", { r: 14 }));
        g.append(svg("text", { y: 4, "text-anchor": "middle" }, id));
        let dragging = false;
        g.addEventListener("mousedown", () => {
            dragging = true;
        });
        chart.addEventListener("mousemove", (ev) => {
            if (!dragging)
                return;
            const me = ev;
            pos.set(id, { x: me.offsetX, y: me.offsetY });
            sync();
        });
        chart.addEventListener("mouseup", () => {
            dragging = false;
        });
        nodeEls.set(id, g);
        chart.append(g);
    }
    sync();
    return chart;
}
export function renderResults(payload) {
    return h("section", { class: "results" }, h("h2", {}, "Results"), h("p", { class: "summary" }, `model ${payload.kind}, deviation `, h("span", { class: "xi-star" }, String(payload.xi_star)), ", imprecision ", h("span", { class: "u-index" }, String(payload.U))), renderRankChart(payload), h("h3", {}, "Necessary relation"), renderHasse(payload));
}
