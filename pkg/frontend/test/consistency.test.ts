// Cross-component consistency: for the bundled demo instances, the chi the
// UI would display (straight from the service response) must equal the CLI
// `solve` output for the same seed, and the drag-to-render round trip must
// stay interactive. Skipped when the Python package is not available.

import { spawn, spawnSync } from "node:child_process";
import { readFileSync, readdirSync } from "node:fs";
import { join } from "node:path";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

const PORT = 8923;
const BASE = `http://127.0.0.1:${PORT}`;
const SEED = 7;
const DEMO_DIR = join(__dirname, "..", "demos");

function pythonAvailable(): boolean {
  const probe = spawnSync("python3", ["-c", "import nodetrix"], { timeout: 20000 });
  return probe.status === 0;
}

const enabled = pythonAvailable();
const maybe = enabled ? describe : describe.skip;

let service: ReturnType<typeof spawn> | null = null;

async function waitForHealth(): Promise<void> {
  for (let i = 0; i < 100; i++) {
    try {
      const res = await fetch(`${BASE}/api/health`);
      if (res.ok) return;
    } catch {
      /* not up yet */
    }
    await new Promise((resolve) => setTimeout(resolve, 100));
  }
  throw new Error("layout service did not come up");
}

maybe("UI/CLI consistency over the demo instances", () => {
  beforeAll(async () => {
    service = spawn("python3", ["-m", "nodetrix.service"], {
      env: { ...process.env, NTX_PORT: String(PORT) },
      stdio: "ignore",
    });
    await waitForHealth();
  }, 30000);

  afterAll(() => {
    service?.kill();
  });

  const demos = readdirSync(DEMO_DIR).filter((f) => f.endsWith(".json"));

  it("bundles five demo instances", () => {
    expect(demos.length).toBe(5);
  });

  for (const demo of readdirSync(DEMO_DIR).filter((f) => f.endsWith(".json"))) {
    it(`chi badge matches CLI solve for ${demo}`, async () => {
      const path = join(DEMO_DIR, demo);
      const instance = JSON.parse(readFileSync(path, "utf-8"));

      const started = performance.now();
      const res = await fetch(`${BASE}/api/layout`, {
        method: "POST",
        headers: { "content-type": "application/json" },
        body: JSON.stringify({ instance, mode: "heuristic", seed: SEED }),
      });
      const roundTripMs = performance.now() - started;
      expect(res.status).toBe(200);
      const body = await res.json();

      const cli = spawnSync(
        "python3",
        ["-m", "nodetrix.cli", "solve", "-i", path, "--seed", String(SEED)],
        { encoding: "utf-8", timeout: 60000 },
      );
      expect(cli.status).toBe(0);
      const cliDoc = JSON.parse(cli.stdout);

      expect(body.drawing.chi).toBe(cliDoc.chi);
      expect(body.drawing).toEqual(cliDoc);
      expect(roundTripMs).toBeLessThan(200);
    }, 90000);
  }
});
