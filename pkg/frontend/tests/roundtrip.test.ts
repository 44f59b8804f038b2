/** End-to-end test against the real session service.
 *
 * Drives a (P2,(1,0)) session the way the UI does: two manual growths,
 * one undo, a five-step auto-run.  After every mutation the edge list
 * recovered from the rendered SVG must equal the server's state, and the
 * exported log must replay cleanly under the CLI verifier.
 */

import { afterAll, beforeAll, describe, expect, it } from "vitest";
import { spawn, spawnSync, type ChildProcess } from "node:child_process";
import { createServer } from "node:net";
import { mkdtempSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { Client } from "../src/api.js";
import { Controller } from "../src/state.js";
import { edgesInSvg, renderSvg, verticesInSvg } from "../src/render.js";

const MINUTE = 60_000;

function freePort(): Promise<number> {
  return new Promise((resolve, reject) => {
    const srv = createServer();
    srv.listen(0, "127.0.0.1", () => {
      const addr = srv.address();
      if (addr === null || typeof addr === "string") {
        reject(new Error("no port"));
        return;
      }
      srv.close(() => resolve(addr.port));
    });
    srv.on("error", reject);
  });
}

let server: ChildProcess;
let base = "";
let client: Client;
let controller: Controller;

async function serverReady(): Promise<void> {
  const deadline = Date.now() + 30_000;
  for (;;) {
    try {
      await fetch(`${base}/sessions/none`);
      return; // any HTTP answer means the service is up
    } catch {
      if (Date.now() > deadline) throw new Error("service did not come up");
      await new Promise((r) => setTimeout(r, 150));
    }
  }
}

async function expectRenderMatchesServer(): Promise<void> {
  const vs = controller.view!;
  const svg = renderSvg(vs);
  const fromServer = await client.getState(vs.sessionId);
  const serverEdges = fromServer.tree.edges
    .map(([u, v]): [number, number] => (u < v ? [u, v] : [v, u]))
    .sort((a, b) => a[0] - b[0] || a[1] - b[1]);
  expect(edgesInSvg(svg)).toEqual(serverEdges);
  expect(verticesInSvg(svg)).toEqual(
    Array.from({ length: fromServer.vertices }, (_, i) => i),
  );
}

async function applyOneManualGrowth(): Promise<void> {
  const alive = controller.view!.copies.find((c) => !c.dead);
  expect(alive).toBeDefined();
  await controller.selectCopy(alive!.index);
  expect(controller.view!.previews.length).toBeGreaterThan(0);
  const before = controller.view!.summary.steps;
  await controller.apply();
  expect(controller.view!.summary.steps).toBe(before + 1);
}

beforeAll(async () => {
  const port = await freePort();
  base = `http://127.0.0.1:${port}`;
  server = spawn(
    "python3",
    [
      "-c",
      "import uvicorn; from amoebas.service import create_app; " +
        `uvicorn.run(create_app(), host='127.0.0.1', port=${port}, log_level='error')`,
    ],
    { stdio: "ignore" },
  );
  await serverReady();
  client = new Client(base);
  controller = new Controller(client);
}, MINUTE);

afterAll(() => {
  server?.kill("SIGTERM");
});

describe("explorer session roundtrip", () => {
  it(
    "keeps the rendered tree equal to the server state through manual, undo and auto steps",
    async () => {
      await controller.create({
        amoeba: { vertices: 2, edges: [[0, 1]], mult: [1, 0] },
        ell: 1,
      });
      await expectRenderMatchesServer();

      await applyOneManualGrowth();
      await expectRenderMatchesServer();
      await applyOneManualGrowth();
      await expectRenderMatchesServer();

      const beforeUndo = controller.view!.summary.steps;
      await controller.undoOnce();
      expect(controller.view!.summary.steps).toBe(beforeUndo - 1);
      await expectRenderMatchesServer();

      const after = await controller.autoRun(5);
      expect(after.summary.steps).toBeGreaterThan(beforeUndo - 1);
      await expectRenderMatchesServer();
    },
    MINUTE,
  );

  it(
    "exports a log that replays with zero violations",
    () => {
      const dir = mkdtempSync(join(tmpdir(), "explorer-log-"));
      const file = join(dir, "session.ndjson");
      return controller.exportLog().then((text) => {
        expect(text.trim().length).toBeGreaterThan(0);
        writeFileSync(file, text);
        const out = spawnSync("amoebas", ["verify", "--input", file], {
          encoding: "utf8",
        });
        expect(out.error).toBeUndefined();
        const lines = out.stdout.trim().split("\n");
        const summary = JSON.parse(lines[lines.length - 1]!) as {
          steps: number;
          violations: number;
        };
        expect(summary.violations).toBe(0);
        expect(out.status).toBe(0);
      });
    },
    MINUTE,
  );
});
