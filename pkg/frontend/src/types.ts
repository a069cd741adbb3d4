// Wire formats shared with the layout service.

export type Side = "T" | "R" | "B" | "L";

export interface SquareDoc {
  x: number | string;
  y: number | string;
  size: number | string;
}

export interface ClusterDoc {
  id: string;
  vertices: string[];
  square: SquareDoc;
  order: string[];
}

export interface InterEdgeDoc {
  id: string;
  u: string;
  v: string;
}

export interface InstanceDocument {
  version: "1";
  clusters: ClusterDoc[];
  intraEdges: [string, string][];
  interEdges: InterEdgeDoc[];
  sides?: Record<string, { u: Side; v: Side }>;
}

export interface DrawingDocument {
  version: "1";
  feasible: boolean;
  edgeSides?: Record<string, { u: Side; v: Side }>;
  segments?: Record<string, { u: [string, string]; v: [string, string] }>;
  chi?: number;
  chiPerCluster?: Record<string, number>;
  locallyPlanar?: boolean;
  diagnostics?: { unsatisfiedClauses: number; matrixViolations: string[] };
}

export interface LayoutResponse {
  feasible: boolean;
  drawing: DrawingDocument;
  elapsedMs: number;
  warnings: string[];
}

export type SolverMode = "heuristic" | "exact";

export interface LayoutRequestBody {
  instance: InstanceDocument;
  mode: SolverMode | "check";
  seed: number;
}

/** Exact rational coordinate strings ("4", "0.5", "1/3") as numbers, for
 *  rendering only; layout math stays server-side. */
export function toNumber(value: number | string): number {
  if (typeof value === "number") return value;
  const slash = value.indexOf("/");
  if (slash >= 0) {
    return Number(value.slice(0, slash)) / Number(value.slice(slash + 1));
  }
  return Number(value);
}
