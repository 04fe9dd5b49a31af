/** Consistency diagnostics: verdict badges, the violation heatmap, and the
 * per-judgment acceptable-revision bars. Every number shown comes verbatim
 * from the service payload. */
import { h, svg } from "./dom.js";
import { SCALE_MAX, SCALE_MIN } from "./wizard.js";
function badge(label, verdict, value) {
    return h("span", { class: `badge badge-${verdict}`, "data-metric": label }, `${label} ${String(value)} (${verdict})`);
}
export function heatmapCellClass(value) {
    if (value === 1)
        return "cell-violation";
    if (value === 0.5)
        return "cell-weak";
    return "cell-ok";
}
function heatmap(payload) {
    const header = h("tr", {}, h("th", {}, ""), ...payload.reference.map((id) => h("th", {}, id)));
    const rows = payload.violations.map((row, i) => h("tr", {}, h("th", {}, payload.reference[i]), ...row.map((v, k) => h("td", {
        class: heatmapCellClass(v),
        "data-row": payload.reference[i],
        "data-col": payload.reference[k],
    }, String(v)))));
    return h("table", { class: "heatmap" }, header, ...rows);
}
const BAR_WIDTH = 260;
const BAR_HEIGHT = 18;
function scaleX(v) {
    return ((v - SCALE_MIN) / (SCALE_MAX - SCALE_MIN)) * BAR_WIDTH;
}
export function rangeBar(entry) {
    const chart = svg("svg", {
        width: BAR_WIDTH + 20,
        height: BAR_HEIGHT,
        class: "range-bar",
        "data-vector": entry.vector,
        "data-id": entry.id,
    });
    chart.append(svg("rect", {
        x: 0,
        y: 6,
        width: BAR_WIDTH,
        height: 6,
        class: "axis",
    }));
    if (entry.interval) {
        const [lo, hi] = entry.interval;
        chart.append(svg("rect", {
            x: scaleX(lo),
            y: 4,
            width: Math.max(2, scaleX(hi) - scaleX(lo)),
            height: 10,
            class: "acceptable",
            "data-lo": String(lo),
            "data-hi": String(hi),
        }));
    }
    chart.append(svg("line", {
        x1: scaleX(entry.current),
        x2: scaleX(entry.current),
        y1: 0,
        y2: BAR_HEIGHT,
        class: "current",
        "data-current": String(entry.current),
    }));
    return chart;
}
export function renderConsistency(payload) {
    const panel = h("section", { class: "consistency" }, h("h2", {}, "Consistency"));
    if (!payload.threshold_known) {
        panel.append(h("div", { class: "banner warning" }, "No threshold is known for this reference size and best-to-worst " +
            "value; revision ranges were computed against a cardinal bound of 1."));
    }
    panel.append(h("div", { class: "badges" }, badge("OR", payload.or_verdict, payload.or), badge("CR", payload.cr_verdict, payload.cr)), heatmap(payload));
    const bars = h("div", { class: "revision-bars" });
    for (const entry of payload.revision_ranges) {
        bars.append(h("div", { class: "revision-row" }, h("span", { class: "revision-label" }, `${entry.vector} ${entry.id}`), rangeBar(entry)));
    }
    panel.append(h("h3", {}, "Admissible revisions"), bars);
    return panel;
}
