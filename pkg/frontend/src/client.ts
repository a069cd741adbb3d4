// Debounced layout client with monotonic request ids: at most one logical
// in-flight request, trailing-edge debounce, newest-wins application.

import type {
  InstanceDocument,
  LayoutRequestBody,
  LayoutResponse,
  SolverMode,
} from "./types.js";

export const DEBOUNCE_MS = 50;

export interface LayoutResult {
  requestId: number;
  response: LayoutResponse;
}

type Fetch = (url: string, init: RequestInit) => Promise<Response>;

export class LayoutClient {
  private timer: ReturnType<typeof setTimeout> | null = null;
  private nextId = 1;
  private inFlight = false;
  private pending: LayoutRequestBody | null = null;

  constructor(
    private readonly baseUrl: string = "",
    private readonly fetchImpl: Fetch = (url, init) => fetch(url, init),
    private readonly debounceMs: number = DEBOUNCE_MS,
  ) {}

  async health(): Promise<boolean> {
    try {
      const res = await this.fetchImpl(`${this.baseUrl}/api/health`, {
        method: "GET",
      });
      return res.ok;
    } catch {
      return false;
    }
  }

  /** Schedule a layout request for the latest instance; earlier pending
   *  ones are superseded (trailing-edge debounce, 50 ms). The callbacks
   *  fire with a monotonically increasing request id. */
  requestLayout(
    instance: InstanceDocument,
    mode: SolverMode | "check",
    seed: number,
    onResult: (result: LayoutResult) => void,
    onError: (err: unknown) => void,
  ): void {
    this.pending = { instance, mode, seed };
    if (this.timer !== null) {
      clearTimeout(this.timer);
    }
    this.timer = setTimeout(() => {
      this.timer = null;
      void this.flush(onResult, onError);
    }, this.debounceMs);
  }

  private async flush(
    onResult: (result: LayoutResult) => void,
    onError: (err: unknown) => void,
  ): Promise<void> {
    if (this.inFlight || this.pending === null) {
      return; // the in-flight completion re-flushes the pending body
    }
    const body = this.pending;
    this.pending = null;
    const requestId = this.nextId++;
    this.inFlight = true;
    try {
      const res = await this.fetchImpl(`${this.baseUrl}/api/layout`, {
        method: "POST",
        headers: { "content-type": "application/json" },
        body: JSON.stringify(body),
      });
      if (!res.ok) {
        throw new Error(`layout request failed: ${res.status}`);
      }
      const response = (await res.json()) as LayoutResponse;
      onResult({ requestId, response });
    } catch (err) {
      onError(err);
    } finally {
      this.inFlight = false;
      if (this.pending !== null) {
        void this.flush(onResult, onError); // coalesced follow-up
      }
    }
  }
}
