/**
 * End-to-end acceptance: the UI stack against the real annotation service.
 *
 * Spawns the actual Python server on a scratch corpus, drives the same
 * client/controller/draft/queue code the browser runs (2 systems x 10
 * parameters per sentence), then checks the full circle:
 *
 *   - the exported CSV parses and carries true (unblinded) system ids,
 *   - the Python aggregation pipeline reproduces the hand-computed
 *     means exactly,
 *   - the live payload's scale and parameter texts byte-match the
 *     golden wordings,
 *   - progress reports the judge as finished.
 */

import { spawn, spawnSync, type ChildProcess } from "node:child_process";
import { mkdtempSync, rmSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { ApiClient } from "../src/api.js";
import { AnnotationController } from "../src/controller.js";
import { DraftStore, MemoryStorage } from "../src/drafts.js";
import type { TaskPayload } from "../src/types.js";
import { GOLDEN_PARAMETERS, GOLDEN_SCALE } from "./fixtures.js";

const JUDGE = "j1";

// One document, two sentences, two systems.  The judge's scores are
// chosen so every aggregate lands on an exact binary fraction:
//   sysGood: all-5s on sentence 0, all-4s on sentence 1 -> mean 4.5
//   sysRough: all-2s on sentence 0, all-3s on sentence 1 -> mean 2.5
const SOURCES = ["वार्ता सफल रही", "नीति की घोषणा कल होगी"];
const REFS = ["the talks were successful", "the policy will be announced tomorrow"];
const GOOD = ["the talks were successful", "the policy will be announced tomorrow"];
const ROUGH = ["talks success was", "policy announce tomorrow will"];
const RATING_PLAN: Record<string, number[]> = { sysGood: [5, 4], sysRough: [2, 3] };
const EXPECTED_MEANS: Record<string, { mean: number; normalized: number }> = {
  sysGood: { mean: 4.5, normalized: 0.875 },
  sysRough: { mean: 2.5, normalized: 0.375 },
};

let workdir: string;
let server: ChildProcess;
let baseUrl: string;

function writeCorpus(dir: string): void {
  writeFileSync(join(dir, "talks.src.txt"), SOURCES.join("\n") + "\n");
  writeFileSync(join(dir, "talks.ref1.txt"), REFS.join("\n") + "\n");
  writeFileSync(join(dir, "talks.good.txt"), GOOD.join("\n") + "\n");
  writeFileSync(join(dir, "talks.rough.txt"), ROUGH.join("\n") + "\n");
  writeFileSync(
    join(dir, "manifest.json"),
    JSON.stringify({
      documents: [
        {
          id: "talks",
          source: "talks.src.txt",
          systems: { sysGood: "talks.good.txt", sysRough: "talks.rough.txt" },
          references: ["talks.ref1.txt"],
        },
      ],
    }),
  );
}

/** Start the real service on an OS-assigned port; resolve once it answers. */
async function startServer(dir: string): Promise<{ child: ChildProcess; url: string }> {
  const child = spawn(
    "python3",
    ["-m", "mtqual.cli", "serve", "--manifest", "manifest.json", "--port", "0",
     "--data-dir", join(dir, "data")],
    { cwd: dir, stdio: ["ignore", "pipe", "pipe"] },
  );
  const url = await new Promise<string>((resolve, reject) => {
    let stderr = "";
    const timer = setTimeout(
      () => reject(new Error(`service did not come up; stderr so far:\n${stderr}`)),
      15_000,
    );
    child.stderr?.on("data", (chunk: Buffer) => {
      stderr += chunk.toString();
      const match = stderr.match(/serving annotation API on (http:\/\/[^/]+)\//);
      if (match !== null && match[1] !== undefined) {
        clearTimeout(timer);
        resolve(match[1]);
      }
    });
    child.on("exit", (code) => {
      clearTimeout(timer);
      reject(new Error(`service exited early (code ${code}); stderr:\n${stderr}`));
    });
  });
  // The bind line prints before serve_forever; poll until requests answer.
  const client = new ApiClient(url);
  for (let attempt = 0; ; attempt++) {
    try {
      await client.progress();
      break;
    } catch (error) {
      if (attempt >= 50) {
        throw error;
      }
      await new Promise((r) => setTimeout(r, 100));
    }
  }
  return { child, url };
}

/** True system id -> blind label for this task, recovered from the shown text. */
function labelsByDisplayedText(task: TaskPayload): Record<string, string> {
  const index = task.segment_ref.index;
  const out: Record<string, string> = {};
  for (const [label, text] of Object.entries(task.candidates)) {
    if (text === GOOD[index]) {
      out["sysGood"] = label;
    } else if (text === ROUGH[index]) {
      out["sysRough"] = label;
    }
  }
  return out;
}

function parseCsv(text: string): Array<Record<string, string>> {
  const lines = text.trim().split("\n");
  const header = (lines[0] ?? "").split(",");
  return lines.slice(1).map((line) => {
    const cells = line.split(",");
    return Object.fromEntries(header.map((name, i) => [name, cells[i] ?? ""]));
  });
}

beforeAll(async () => {
  workdir = mkdtempSync(join(tmpdir(), "annotate-ui-e2e-"));
  writeCorpus(workdir);
  const started = await startServer(workdir);
  server = started.child;
  baseUrl = started.url;
}, 30_000);

afterAll(() => {
  server?.kill("SIGTERM");
  rmSync(workdir, { recursive: true, force: true });
});

describe("annotation round-trip against the live service", () => {
  it("submits 2 systems x 10 parameters per sentence and exports exact aggregates", async () => {
    const api = new ApiClient(baseUrl);
    const controller = new AnnotationController(api, new DraftStore(new MemoryStorage(), JUDGE), JUDGE);

    // ---- the judging loop, exactly as the page drives it ----------------
    const seenTasks: TaskPayload[] = [];
    let state = await controller.loadNext();
    while (state.kind === "rating") {
      const task = state.task;
      seenTasks.push(task);

      // live payload: blind labels only, golden texts verbatim
      const labels = Object.keys(task.candidates).sort();
      expect(labels).toEqual(["A", "B"]);
      expect(task.parameters).toEqual(GOLDEN_PARAMETERS);
      expect(task.scale).toEqual(GOLDEN_SCALE);
      expect(task.source).toBe(SOURCES[task.segment_ref.index]);

      const labelOf = labelsByDisplayedText(task);
      expect(Object.keys(labelOf).sort()).toEqual(["sysGood", "sysRough"]);
      for (const [system, plan] of Object.entries(RATING_PLAN)) {
        const rating = plan[task.segment_ref.index];
        const label = labelOf[system];
        if (rating === undefined || label === undefined) {
          throw new Error(`no plan for ${system} sentence ${task.segment_ref.index}`);
        }
        for (const entry of task.parameters) {
          controller.rate(label, entry.parameter, rating);
        }
      }
      expect(controller.canSubmit()).toBe(true);
      state = await controller.submitAll();
    }
    expect(state.kind).toBe("done");
    expect(seenTasks.map((task) => task.task_id)).toEqual(["talks:0", "talks:1"]);

    // ---- the server saw a complete judge ---------------------------------
    const progress = await api.progress();
    expect(progress.total_tasks).toBe(2);
    expect(progress.judges[JUDGE]).toEqual({ completed: 2, total: 2, fraction: 1.0 });

    // ---- the export parses, unblinded, 2 systems x 10 params x 2 sentences
    const csv = await api.exportCsv();
    const rows = parseCsv(csv);
    expect(csv.split("\n", 1)[0]).toBe(
      "judge_id,system_id,document,segment_index,parameter,rating",
    );
    expect(rows).toHaveLength(40);
    for (const system of ["sysGood", "sysRough"]) {
      for (const segment of [0, 1]) {
        const block = rows.filter(
          (row) => row["system_id"] === system && row["segment_index"] === String(segment),
        );
        expect(block).toHaveLength(10);
        expect(new Set(block.map((row) => row["parameter"])).size).toBe(10);
        const expected = String(RATING_PLAN[system]?.[segment]);
        expect(block.every((row) => row["rating"] === expected)).toBe(true);
      }
    }
    // No blind labels leak into the export.
    expect(new Set(rows.map((row) => row["system_id"]))).toEqual(
      new Set(["sysGood", "sysRough"]),
    );

    // ---- the Python aggregation reproduces the hand-computed means exactly
    const csvPath = join(workdir, "export.csv");
    writeFileSync(csvPath, csv);
    const aggregate = spawnSync(
      "python3",
      [
        "-c",
        [
          "import json, sys",
          "from mtqual import aggregate_human, read_ratings_csv",
          "ratings = read_ratings_csv(sys.argv[1])",
          "system = {s.system_id: [s.mean, s.normalized, s.n_ratings] for s in aggregate_human(ratings)}",
          "segment = {f'{s.system_id}:{s.segment_index}': s.mean for s in aggregate_human(ratings, level='segment')}",
          "print(json.dumps({'system': system, 'segment': segment}))",
        ].join("\n"),
        csvPath,
      ],
      { encoding: "utf-8" },
    );
    expect(aggregate.status, aggregate.stderr).toBe(0);
    const aggregated = JSON.parse(aggregate.stdout) as {
      system: Record<string, [number, number, number]>;
      segment: Record<string, number>;
    };
    for (const [system, expected] of Object.entries(EXPECTED_MEANS)) {
      const [mean, normalized, count] = aggregated.system[system] ?? [NaN, NaN, NaN];
      expect(mean).toBe(expected.mean); // exact, no tolerance
      expect(normalized).toBe(expected.normalized);
      expect(count).toBe(20);
    }
    expect(aggregated.segment).toEqual({
      "sysGood:0": 5.0,
      "sysGood:1": 4.0,
      "sysRough:0": 2.0,
      "sysRough:1": 3.0,
    });
  }, 30_000);

  it("keeps blind labels stable across refetches of the same task", async () => {
    // A second judge refetching sentence 0 must see the same shuffle both
    // times (labels are salted per task, not per request).
    const api = new ApiClient(baseUrl);
    const first = await api.nextTask("j2");
    const second = await api.nextTask("j2");
    expect(first).not.toBeNull();
    expect(second).not.toBeNull();
    expect(second?.candidates).toEqual(first?.candidates);
    expect(second?.task_id).toBe(first?.task_id);
  });

  it("rejects a rating for an unknown blind label with a field-level error", async () => {
    const api = new ApiClient(baseUrl);
    const task = await api.nextTask("j3");
    expect(task).not.toBeNull();
    const error = await api
      .submitRating({
        task_id: task?.task_id ?? "",
        judge_id: "j3",
        label: "Z",
        parameter: 1,
        rating: 3,
      })
      .catch((e: unknown) => e);
    expect(error).toBeInstanceOf(Error);
    expect(String(error)).toContain("label");
  });
});
