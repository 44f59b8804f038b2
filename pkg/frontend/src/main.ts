/** Browser wiring: forms and buttons around the controller. */

import { ApiError, Client } from "./api.js";
import { renderSvg } from "./render.js";
import { Controller, type ViewState } from "./state.js";

const $ = <T extends HTMLElement>(id: string): T => {
  const el = document.getElementById(id);
  if (!el) throw new Error(`missing element #${id}`);
  return el as T;
};

const DEFAULT_DOC = JSON.stringify(
  { amoeba: { vertices: 2, edges: [[0, 1]], mult: [1, 0] }, ell: 1 },
  null,
  2,
);

function main(): void {
  const baseInput = $<HTMLInputElement>("base");
  const docInput = $<HTMLTextAreaElement>("doc");
  const errorBox = $<HTMLElement>("error");
  const canvas = $<HTMLElement>("canvas");
  const copyList = $<HTMLElement>("copies");
  const growthList = $<HTMLElement>("growths");
  const status = $<HTMLElement>("status");
  docInput.value = DEFAULT_DOC;

  let controller = new Controller(new Client(baseInput.value));

  const showError = (err: unknown): void => {
    errorBox.textContent =
      err instanceof ApiError ? `${err.status}: ${err.message}` : String(err);
  };

  const draw = (vs: ViewState): void => {
    errorBox.textContent = "";
    canvas.innerHTML = renderSvg(vs);
    status.textContent =
      `session ${vs.sessionId.slice(0, 8)}  ell=${vs.summary.ell}  ` +
      `steps=${vs.summary.steps}  vertices=${vs.summary.vertices}  ` +
      `alive=${vs.summary.alive_copies}`;
    copyList.innerHTML = "";
    for (const c of vs.copies) {
      const b = document.createElement("button");
      b.textContent = `copy ${c.index}${c.dead ? " (dead)" : ` cost ${c.min_cost}`}`;
      b.disabled = c.dead;
      b.onclick = () => controller.selectCopy(c.index).then(draw, showError);
      if (vs.selectedCopy === c.index) b.classList.add("selected");
      copyList.appendChild(b);
    }
    growthList.innerHTML = "";
    for (const g of vs.previews) {
      const b = document.createElement("button");
      b.textContent = `growth ${g.index} (${g.vertices} vertices)`;
      b.onclick = () => draw(controller.selectGrowth(g.index));
      if (vs.selectedGrowth === g.index) b.classList.add("selected");
      growthList.appendChild(b);
    }
  };

  $("create").onclick = () => {
    controller = new Controller(new Client(baseInput.value));
    let body: Record<string, unknown>;
    try {
      body = JSON.parse(docInput.value);
    } catch (err) {
      showError(err);
      return;
    }
    controller.create(body).then(draw, showError);
  };
  $("apply").onclick = () => controller.apply().then(draw, showError);
  $("undo").onclick = () => controller.undoOnce().then(draw, showError);
  $("auto").onclick = () => {
    const steps = Number($<HTMLInputElement>("auto-steps").value) || 1;
    controller.autoRun(steps).then(draw, showError);
  };
  $("export").onclick = () => {
    controller.exportLog().then((text) => {
      const blob = new Blob([text], { type: "application/x-ndjson" });
      const a = document.createElement("a");
      a.href = URL.createObjectURL(blob);
      a.download = "session-log.ndjson";
      a.click();
      URL.revokeObjectURL(a.href);
    }, showError);
  };
}

main();
