// Thin client for the layout service. One request in flight at a time: a new
// submit aborts the pending one.

import type { LayoutRequest } from "./form.js";

export class StageError extends Error {
  stage: string;
  constructor(stage: string, detail: string) {
    super(detail);
    this.stage = stage;
  }
}

export interface RenderResult {
  svg: string;
  timings: Record<string, number>;
}

export class LayoutClient {
  private pending: AbortController | null = null;

  constructor(private base: string = "") {}

  async render(request: LayoutRequest): Promise<RenderResult> {
    this.pending?.abort();
    const controller = new AbortController();
    this.pending = controller;

    const response = await fetch(`${this.base}/api/render`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(request),
      signal: controller.signal,
    });
    if (this.pending === controller) this.pending = null;

    if (!response.ok) {
      let stage = `http ${response.status}`;
      let detail = response.statusText;
      try {
        const body = await response.json();
        stage = body.stage ?? stage;
        detail = body.detail ?? detail;
      } catch {
        // non-JSON error body; keep the status text
      }
      throw new StageError(stage, detail);
    }

    const svg = await response.text();
    let timings: Record<string, number> = {};
    const header = response.headers.get("X-Storygem-Timings");
    if (header) {
      try {
        timings = JSON.parse(header);
      } catch {
        timings = {};
      }
    }
    return { svg, timings };
  }
}
