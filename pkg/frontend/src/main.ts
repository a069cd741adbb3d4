// Editor wiring: canvas drag, row reorder panel, seed/mode controls,
// file load/save, demo picker. Every layout number on screen comes from
// the service.

import { LayoutClient } from "./client.js";
import {
  EditorState,
  applyResponse,
  chiBadge,
  initialState,
  markUnreachable,
  onReorderRow,
  onSquareDrag,
} from "./state.js";
import { perClusterTitle, renderScene, sceneTransform } from "./render.js";
import type { InstanceDocument, SolverMode } from "./types.js";
import { toNumber } from "./types.js";

const DEMOS = [
  "demos/pair.json",
  "demos/triangle.json",
  "demos/grid.json",
  "demos/ordering-gadget.json",
  "demos/dense.json",
];

const baseUrl = (globalThis as { NTX_SERVICE_URL?: string }).NTX_SERVICE_URL ?? "";
const client = new LayoutClient(baseUrl);

const svg = document.getElementById("canvas") as unknown as SVGSVGElement;
const badge = document.getElementById("chi-badge")!;
const planarFlag = document.getElementById("planar-flag")!;
const warningsBox = document.getElementById("warnings")!;
const statusBox = document.getElementById("status")!;
const rowPanel = document.getElementById("rows")!;
const demoSelect = document.getElementById("demo") as HTMLSelectElement;
const modeSelect = document.getElementById("mode") as HTMLSelectElement;
const seedInput = document.getElementById("seed") as HTMLInputElement;
const splinesToggle = document.getElementById("splines") as HTMLInputElement;
const fileInput = document.getElementById("file") as HTMLInputElement;

let state: EditorState = initialState({
  version: "1",
  clusters: [],
  intraEdges: [],
  interEdges: [],
});

function setState(next: EditorState, relayout: boolean): void {
  const instanceChanged = next.instance !== state.instance;
  state = next;
  redraw();
  if (relayout && instanceChanged) {
    scheduleLayout();
  }
}

function scheduleLayout(): void {
  client.requestLayout(
    state.instance,
    state.solverMode,
    state.seed,
    ({ requestId, response }) => {
      state = applyResponse(
        state,
        requestId,
        response.drawing,
        response.warnings,
        response.elapsedMs,
      );
      redraw();
    },
    () => {
      state = markUnreachable(state);
      statusBox.textContent = "service unreachable - layout is stale";
      statusBox.classList.add("error");
      redraw();
    },
  );
}

function redraw(): void {
  renderScene(svg, state, {
    splines: splinesToggle.checked,
    selectedCluster: null,
  });
  badge.textContent = chiBadge(state);
  badge.classList.toggle("stale", state.stale);
  planarFlag.textContent = state.lastDrawing?.locallyPlanar
    ? "locally planar"
    : "";
  warningsBox.innerHTML = "";
  for (const w of state.lastWarnings) {
    const li = document.createElement("li");
    li.textContent = w;
    warningsBox.append(li);
  }
  if (!statusBox.classList.contains("error") && state.lastElapsedMs !== null) {
    statusBox.textContent = `layout in ${state.lastElapsedMs.toFixed(1)} ms`;
  }
  renderRowPanel();
  attachDragHandlers();
}

// --- matrix dragging -------------------------------------------------------

function attachDragHandlers(): void {
  for (const node of svg.querySelectorAll<SVGGElement>("g[data-cluster]")) {
    node.onpointerdown = (ev) => startDrag(ev, node.dataset.cluster!);
  }
}

function startDrag(down: PointerEvent, clusterId: string): void {
  const transform = sceneTransform(state.instance);
  const cluster = state.instance.clusters.find((c) => c.id === clusterId);
  if (!cluster) return;
  const rect = svg.getBoundingClientRect();
  const scaleX = transform.width / rect.width;
  const scaleY = transform.height / rect.height;
  const startX = toNumber(cluster.square.x);
  const startY = toNumber(cluster.square.y);
  const origin = { x: down.clientX, y: down.clientY };

  const move = (ev: PointerEvent) => {
    const dx = (ev.clientX - origin.x) * scaleX;
    const dy = -(ev.clientY - origin.y) * scaleY;
    const next = onSquareDrag(state, clusterId, startX + dx, startY + dy);
    if (next !== state) {
      setState(next, true);
    }
  };
  const up = () => {
    window.removeEventListener("pointermove", move);
    window.removeEventListener("pointerup", up);
  };
  window.addEventListener("pointermove", move);
  window.addEventListener("pointerup", up);
}

// --- row reordering --------------------------------------------------------

function renderRowPanel(): void {
  rowPanel.innerHTML = "";
  for (const cluster of state.instance.clusters) {
    const box = document.createElement("details");
    const summary = document.createElement("summary");
    summary.textContent = perClusterTitle(state, cluster.id);
    box.append(summary);
    cluster.order.forEach((vertex, index) => {
      const row = document.createElement("div");
      row.className = "row";
      const name = document.createElement("span");
      name.textContent = `${index + 1}. ${vertex}`;
      const upButton = document.createElement("button");
      upButton.textContent = "↑";
      upButton.disabled = index === 0;
      upButton.onclick = () =>
        setState(onReorderRow(state, cluster.id, vertex, index), true);
      const downButton = document.createElement("button");
      downButton.textContent = "↓";
      downButton.disabled = index === cluster.order.length - 1;
      downButton.onclick = () =>
        setState(onReorderRow(state, cluster.id, vertex, index + 2), true);
      row.append(name, upButton, downButton);
      box.append(row);
    });
    rowPanel.append(box);
  }
}

// --- document load/save ----------------------------------------------------

async function loadDemo(url: string): Promise<void> {
  const res = await fetch(url);
  const doc = (await res.json()) as InstanceDocument;
  loadInstance(doc);
}

function loadInstance(doc: InstanceDocument): void {
  statusBox.classList.remove("error");
  state = initialState(doc);
  state = { ...state, seed: Number(seedInput.value) || 7 };
  state = { ...state, solverMode: modeSelect.value as SolverMode };
  redraw();
  scheduleLayout();
}

function saveInstance(): void {
  const blob = new Blob([JSON.stringify(state.instance, null, 2) + "\n"], {
    type: "application/json",
  });
  const a = document.createElement("a");
  a.href = URL.createObjectURL(blob);
  a.download = "instance.json";
  a.click();
  URL.revokeObjectURL(a.href);
}

// --- control wiring --------------------------------------------------------

for (const demo of DEMOS) {
  const option = document.createElement("option");
  option.value = demo;
  option.textContent = demo.replace("demos/", "").replace(".json", "");
  demoSelect.append(option);
}
demoSelect.onchange = () => void loadDemo(demoSelect.value);
modeSelect.onchange = () => {
  state = { ...state, solverMode: modeSelect.value as SolverMode };
  scheduleLayout();
};
seedInput.onchange = () => {
  state = { ...state, seed: Number(seedInput.value) || 0 };
  scheduleLayout();
};
splinesToggle.onchange = () => redraw();
fileInput.onchange = async () => {
  const file = fileInput.files?.[0];
  if (file) loadInstance(JSON.parse(await file.text()) as InstanceDocument);
};
document.getElementById("save")!.onclick = () => saveInstance();

void client.health().then((ok) => {
  if (!ok) {
    statusBox.textContent =
      "layout service not reachable - start it with: python3 -m nodetrix.service";
    statusBox.classList.add("error");
  }
});
void loadDemo(DEMOS[0]);
