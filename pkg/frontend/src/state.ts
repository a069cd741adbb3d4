// Pure editor-state transitions. The displayed chi always originates from
// the last service response; nothing here recomputes crossings.

import type {
  DrawingDocument,
  InstanceDocument,
  SolverMode,
} from "./types.js";
import { toNumber } from "./types.js";

export type InteractionMode = "drag" | "reorder" | "pan";

export interface EditorState {
  instance: InstanceDocument;
  lastDrawing: DrawingDocument | null;
  lastWarnings: string[];
  lastElapsedMs: number | null;
  stale: boolean; // true while the shown layout predates the instance
  seed: number;
  solverMode: SolverMode;
  interaction: InteractionMode;
  lastAppliedRequest: number;
}

export function initialState(instance: InstanceDocument): EditorState {
  return {
    instance,
    lastDrawing: null,
    lastWarnings: [],
    lastElapsedMs: null,
    stale: true,
    seed: 7,
    solverMode: "heuristic",
    interaction: "drag",
    lastAppliedRequest: 0,
  };
}

export const GRID = 1;

export function snap(value: number): number {
  return Math.round(value / GRID) * GRID;
}

/** Move one matrix square; positions snap to the unit grid so documents
 *  stay exact. Returns the same state when nothing changed. */
export function onSquareDrag(
  state: EditorState,
  clusterId: string,
  newX: number,
  newY: number,
): EditorState {
  const sx = snap(newX);
  const sy = snap(newY);
  const cluster = state.instance.clusters.find((c) => c.id === clusterId);
  if (!cluster) return state;
  if (toNumber(cluster.square.x) === sx && toNumber(cluster.square.y) === sy) {
    return state;
  }
  const clusters = state.instance.clusters.map((c) =>
    c.id === clusterId ? { ...c, square: { ...c.square, x: sx, y: sy } } : c,
  );
  return {
    ...state,
    instance: { ...state.instance, clusters },
    stale: true,
  };
}

/** Move a vertex to 1-based position newIndex in its cluster's order.
 *  Rows and columns move together: the matrix stays symmetric. */
export function onReorderRow(
  state: EditorState,
  clusterId: string,
  vertexId: string,
  newIndex: number,
): EditorState {
  const cluster = state.instance.clusters.find((c) => c.id === clusterId);
  if (!cluster) return state;
  const from = cluster.order.indexOf(vertexId);
  const to = newIndex - 1;
  if (from < 0 || to < 0 || to >= cluster.order.length || from === to) {
    return state; // drop at the same index: no request
  }
  const order = cluster.order.slice();
  order.splice(from, 1);
  order.splice(to, 0, vertexId);
  const clusters = state.instance.clusters.map((c) =>
    c.id === clusterId ? { ...c, order } : c,
  );
  return {
    ...state,
    instance: { ...state.instance, clusters },
    stale: true,
  };
}

/** Apply a layout response, dropping anything older than what is shown
 *  (monotonic request ids: stale responses from reordered arrivals are
 *  discarded). */
export function applyResponse(
  state: EditorState,
  requestId: number,
  drawing: DrawingDocument,
  warnings: string[],
  elapsedMs: number,
): EditorState {
  if (requestId <= state.lastAppliedRequest) {
    return state;
  }
  return {
    ...state,
    lastDrawing: drawing,
    lastWarnings: warnings,
    lastElapsedMs: elapsedMs,
    stale: false,
    lastAppliedRequest: requestId,
  };
}

export function markUnreachable(state: EditorState): EditorState {
  return { ...state, stale: true };
}

export function chiBadge(state: EditorState): string {
  const d = state.lastDrawing;
  if (!d) return "–";
  if (!d.feasible) return "infeasible";
  return String(d.chi ?? "–");
}

/** Clusters whose pipes a warning mentions, for highlighting. */
export function warnedClusters(state: EditorState): Set<string> {
  const out = new Set<string>();
  for (const w of state.lastWarnings) {
    for (const m of w.matchAll(/'([^']+)'/g)) out.add(m[1]);
  }
  return out;
}
