/** Single-page assembly of the elicitation loop: upload a matrix, pick the
 * reference set, judge, inspect consistency, revise, solve, explore. Every
 * mutation waits for server confirmation; a stale revision turns into a
 * reload prompt instead of an overwrite. */

import {
  createSession,
  fetchConsistency,
  fetchResults,
  runRefset,
  solve,
  StaleRevisionError,
  submitComparisons,
} from "./api.js";
import { renderConsistency } from "./consistency.js";
import { h } from "./dom.js";
import { renderResults } from "./results.js";
import { emptyView, UiSessionView } from "./types.js";
import { renderWizard } from "./wizard.js";

const view: UiSessionView = emptyView();

function section(id: string): HTMLElement {
  const el = document.getElementById(id);
  if (!el) throw new Error(`missing section ${id}`);
  return el;
}

function note(text: string, cls = "info"): void {
  const log = section("log");
  log.prepend(h("p", { class: cls }, text));
}

function staleprompt(): void {
  const banner = h(
    "div",
    { class: "banner stale" },
    "This session changed in another tab. ",
    h(
      "button",
      {
        type: "button",
        onclick: () => window.location.reload(),
      },
      "Reload"
    )
  );
  section("log").prepend(banner);
}

async function guarded(action: () => Promise<void>): Promise<void> {
  try {
    await action();
  } catch (err) {
    if (err instanceof StaleRevisionError) {
      staleprompt();
    } else {
      note(String((err as Error).message ?? err), "error");
    }
  }
}

function renderJudgmentStage(): void {
  const host = section("wizard");
  host.replaceChildren(
    renderWizard(view, (collected) =>
      guarded(async () => {
        if (!view.session || !view.best || !view.worst) return;
        const out = await submitComparisons(
          view.session.id,
          view.session.revision,
          view.best,
          view.worst,
          collected.bo,
          collected.ow
        );
        view.session.revision = out.revision;
        note("judgments accepted");
        await refreshConsistency();
      })
    )
  );
}

async function refreshConsistency(): Promise<void> {
  if (!view.session) return;
  view.consistency = await fetchConsistency(view.session.id);
  section("consistency").replaceChildren(renderConsistency(view.consistency));
}

async function runSolve(): Promise<void> {
  if (!view.session) return;
  const out = await solve(view.session.id, view.session.revision);
  view.session.revision = out.revision;
  view.results = await fetchResults(view.session.id);
  section("results").replaceChildren(renderResults(view.results));
}

function wireUpload(): void {
  const input = section("matrix-file") as HTMLInputElement;
  const button = section("create-session") as HTMLButtonElement;
  button.addEventListener("click", () =>
    guarded(async () => {
      const file = input.files?.[0];
      if (!file) {
        note("choose a matrix CSV first", "error");
        return;
      }
      const text = await file.text();
      view.session = await createSession(text);
      note(`session ${view.session.id} created`);
      const refset = await runRefset(view.session.id, view.session.revision);
      view.session.revision = refset.revision;
      if (!refset.feasible || !refset.reference) {
        note("reference selection infeasible; adjust the matrix", "error");
        return;
      }
      view.reference = refset.reference;
      const pickBest = section("pick-best") as HTMLSelectElement;
      const pickWorst = section("pick-worst") as HTMLSelectElement;
      for (const sel of [pickBest, pickWorst]) {
        sel.replaceChildren(
          ...view.reference.map((id) => h("option", { value: id }, id))
        );
        sel.disabled = false;
      }
      pickWorst.selectedIndex = view.reference.length - 1;
      const confirm = section("confirm-bw") as HTMLButtonElement;
      confirm.disabled = false;
      confirm.addEventListener("click", () => {
        if (pickBest.value === pickWorst.value) {
          note("best and worst must differ", "error");
          return;
        }
        view.best = pickBest.value;
        view.worst = pickWorst.value;
        renderJudgmentStage();
      });
    })
  );
  (section("run-solve") as HTMLButtonElement).addEventListener("click", () =>
    guarded(runSolve)
  );
}

if (typeof document !== "undefined" && document.getElementById("log")) {
  wireUpload();
}
