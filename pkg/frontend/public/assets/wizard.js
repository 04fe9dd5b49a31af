/** Elicitation wizard: one row of best-to-others judgments, one row of
 * others-to-worst, on the 1-9 scale, with optional interval entry. The best
 * and worst self-comparisons are locked to 1, submission stays disabled
 * until every cell parses, and out-of-scale input never leaves the client. */
import { h } from "./dom.js";
export const SCALE_MIN = 1;
export const SCALE_MAX = 9;
/** Parse one pending cell: a real or an interval; degenerate intervals are
 * treated as real judgments. Returns null when invalid or blank. */
export function judgmentFromInput(p) {
    const lo = Number(p.lo);
    const hi = p.interval ? Number(p.hi) : lo;
    if (p.lo.trim() === "" || (p.interval && p.hi.trim() === ""))
        return null;
    if (!Number.isFinite(lo) || !Number.isFinite(hi))
        return null;
    if (lo < SCALE_MIN || hi > SCALE_MAX || lo > hi)
        return null;
    if (lo === hi)
        return lo;
    return [lo, hi];
}
/** All judgments, or null while anything is blank or out of scale. */
export function collectJudgments(view) {
    if (!view.best || !view.worst)
        return null;
    const bo = {};
    const ow = {};
    for (const id of view.reference) {
        const pb = view.pendingBo.get(id);
        const po = view.pendingOw.get(id);
        if (!pb || !po)
            return null;
        const jb = judgmentFromInput(pb);
        const jo = judgmentFromInput(po);
        if (jb === null || jo === null)
            return null;
        bo[id] = jb;
        ow[id] = jo;
    }
    return { bo, ow };
}
function lockedCell() {
    return h("td", { class: "cell locked" }, h("input", { type: "number", value: "1", disabled: true }));
}
function editableCell(pending, onChange) {
    const lo = h("input", {
        type: "number",
        min: String(SCALE_MIN),
        max: String(SCALE_MAX),
        step: "0.01",
        value: pending.lo,
        class: "lo",
    });
    const hi = h("input", {
        type: "number",
        min: String(SCALE_MIN),
        max: String(SCALE_MAX),
        step: "0.01",
        value: pending.hi,
        class: "hi",
    });
    const slider = h("input", {
        type: "range",
        min: String(SCALE_MIN),
        max: String(SCALE_MAX),
        step: "0.01",
        value: pending.lo || String(SCALE_MIN),
        class: "slider",
    });
    const toggle = h("input", { type: "checkbox", class: "interval-toggle" });
    toggle.checked = pending.interval;
    const sync = () => {
        pending.lo = lo.value;
        pending.hi = toggle.checked ? hi.value : lo.value;
        pending.interval = toggle.checked;
        hi.style.display = toggle.checked ? "" : "none";
        onChange();
    };
    lo.addEventListener("input", () => {
        slider.value = lo.value;
        sync();
    });
    hi.addEventListener("input", sync);
    slider.addEventListener("input", () => {
        lo.value = slider.value;
        sync();
    });
    toggle.addEventListener("change", sync);
    hi.style.display = pending.interval ? "" : "none";
    return h("td", { class: "cell" }, lo, hi, slider, h("label", { class: "interval-label" }, toggle, "range"));
}
export function renderWizard(view, onSubmit) {
    for (const id of view.reference) {
        if (!view.pendingBo.has(id)) {
            view.pendingBo.set(id, { lo: "", hi: "", interval: false });
        }
        if (!view.pendingOw.has(id)) {
            view.pendingOw.set(id, { lo: "", hi: "", interval: false });
        }
    }
    if (view.best) {
        view.pendingBo.set(view.best, { lo: "1", hi: "1", interval: false });
    }
    if (view.worst) {
        view.pendingOw.set(view.worst, { lo: "1", hi: "1", interval: false });
    }
    const submit = h("button", { class: "submit-judgments", type: "button" }, "Submit judgments");
    const refresh = () => {
        submit.disabled = collectJudgments(view) === null;
    };
    const header = h("tr", {}, h("th", {}, ""), ...view.reference.map((id) => h("th", {}, id)));
    const boRow = h("tr", { class: "bo-row" }, h("th", {}, `best (${view.best ?? "?"}) vs`), ...view.reference.map((id) => id === view.best
        ? lockedCell()
        : editableCell(view.pendingBo.get(id), refresh)));
    const owRow = h("tr", { class: "ow-row" }, h("th", {}, `vs worst (${view.worst ?? "?"})`), ...view.reference.map((id) => id === view.worst
        ? lockedCell()
        : editableCell(view.pendingOw.get(id), refresh)));
    submit.addEventListener("click", () => {
        const collected = collectJudgments(view);
        if (collected)
            onSubmit(collected);
    });
    refresh();
    return h("section", { class: "wizard" }, h("h2", {}, "Judgments"), h("table", { class: "judgments" }, header, boRow, owRow), submit);
}
