// Browser entry point: wires the explorer store to the DOM.

import { ApiClient } from "./api";
import { Explorer } from "./explorer";
import { forceLayout, Point } from "./layout";
import { renderQuiver } from "./render";

const api = new ApiClient("");
const explorer = new Explorer(api);
const pinned = new Map<number, Point>();

const svg = document.getElementById("quiver") as unknown as SVGSVGElement;
const modelSelect = document.getElementById("model") as HTMLSelectElement;
const modeToggle = document.getElementById("mode") as HTMLSelectElement;
const valuePanel = document.getElementById("values") as HTMLElement;
const logPanel = document.getElementById("log") as HTMLElement;
const bannerBox = document.getElementById("banner") as HTMLElement;
const historyPanel = document.getElementById("history") as HTMLElement;
const undoButton = document.getElementById("undo") as HTMLButtonElement;
const redoButton = document.getElementById("redo") as HTMLButtonElement;
const exportButton = document.getElementById("export") as HTMLButtonElement;
const compareBox = document.getElementById("compare") as HTMLInputElement;
const compareButton = document.getElementById("compare-go") as HTMLButtonElement;

function redraw(): void {
  const state = explorer.state;
  if (!state) return;
  const layout = forceLayout(state.quiver, {
    width: svg.clientWidth || 640,
    height: svg.clientHeight || 480,
    pinned,
  });
  renderQuiver(svg, state.quiver, layout, (label) => {
    void explorer
      .clickMutate(label)
      .then(redraw)
      .catch(() => redraw());
  });

  valuePanel.innerHTML = "";
  for (const v of state.quiver.vertices) {
    const value = state.values[v.label];
    const row = document.createElement("div");
    row.className = "value-row";
    row.textContent = `${v.label} = ${value.text}`;
    const badge = document.createElement("button");
    badge.textContent = "Laurent?";
    badge.className = "laurent-badge";
    badge.addEventListener("click", () => {
      void explorer.laurentBadge(v.label).then((cert) => {
        badge.textContent = cert.laurent ? "Laurent ✓" : "not Laurent ✗";
        badge.classList.toggle("ok", cert.laurent);
        badge.classList.toggle("bad", !cert.laurent);
      });
    });
    row.appendChild(badge);
    valuePanel.appendChild(row);
  }

  logPanel.innerHTML = "";
  for (const line of explorer.exchangeLog) {
    const item = document.createElement("div");
    item.textContent = line;
    logPanel.appendChild(item);
  }

  bannerBox.textContent = explorer.banner?.text ?? "";
  bannerBox.className = `banner ${explorer.banner?.kind ?? ""}`;

  historyPanel.innerHTML = "";
  for (const node of explorer.tree.nodes) {
    const item = document.createElement("button");
    item.className = "history-node" + (node.id === explorer.tree.cursor ? " current" : "");
    item.textContent = node.move
      ? `${node.move.kind === "even" ? "μ" : "η"} ${node.move.vertex}`
      : "start";
    item.addEventListener("click", () => {
      void explorer.jumpTo(node.id).then(redraw);
    });
    historyPanel.appendChild(item);
  }

  undoButton.disabled = !state.can_undo;
  redoButton.disabled = !state.can_redo;
}

async function start(): Promise<void> {
  const { models } = await api.models();
  modelSelect.innerHTML = models
    .filter((name) => !name.includes("("))
    .map((name) => `<option>${name}</option>`)
    .join("");
  modelSelect.addEventListener("change", () => {
    pinned.clear();
    void explorer.loadModel(modelSelect.value).then(redraw);
  });
  modeToggle.addEventListener("change", () => {
    explorer.mode = modeToggle.value as "algebra" | "quiver";
  });
  undoButton.addEventListener("click", () => {
    void explorer.undo().then(redraw);
  });
  redoButton.addEventListener("click", () => {
    void explorer.redo().then(redraw);
  });
  exportButton.addEventListener("click", () => {
    const blob = new Blob([explorer.exportQuiver()], { type: "text/plain" });
    const link = document.createElement("a");
    link.href = URL.createObjectURL(blob);
    link.download = "quiver.sq";
    link.click();
    URL.revokeObjectURL(link.href);
  });
  compareButton.addEventListener("click", () => {
    void explorer.compareWithModel(compareBox.value.trim()).then(redraw);
  });
  await explorer.loadModel(modelSelect.value || "spo21");
  redraw();
}

void start();
