/**
 * Desk-scale end-to-end runs: the converter CLI renders real datasets to
 * image folders, and the trainer must reach the stated accuracy from them.
 *
 * These take minutes, so they only run with RUN_DESK_SCALE=1 (npm run
 * desk-scale). Everything is seeded; a failure is a regression, not noise.
 */
import { execFileSync } from "node:child_process";
import * as fs from "node:fs";
import * as os from "node:os";
import * as path from "node:path";
import { fileURLToPath } from "node:url";
import { describe, expect, it } from "vitest";

import { readManifest } from "../src/manifest.js";
import { DEFAULT_CONFIG, TrainConfig, finetune } from "../src/model.js";

const RUN = process.env.RUN_DESK_SCALE === "1";
const REPO = path.resolve(path.dirname(fileURLToPath(import.meta.url)), "..", "..");

function sh(cmd: string, args: string[]): string {
  return execFileSync(cmd, args, { encoding: "utf-8" });
}

function py(script: string): void {
  execFileSync("python3", ["-c", script], { encoding: "utf-8" });
}

/** Render a CSV to train/ and test/ image folders via the converter CLI. */
function convert(csv: string, dir: string, planArgs: string[]): void {
  const plan = path.join(dir, "plan.json");
  sh("supertml", ["plan", csv, "--out", plan, ...planArgs]);
  sh("supertml", [
    "convert", csv, "--plan", plan, "--out", path.join(dir, "imgs"),
    "--split", "80:20", "--seed", "0", "--workers", "4",
  ]);
}

function deskConfig(overrides: Partial<TrainConfig> = {}): TrainConfig {
  return {
    ...DEFAULT_CONFIG,
    backbone: "pooled-mlp",
    inputSide: 224,
    seed: 0,
    ...overrides,
  };
}

async function trainOn(dir: string, config: TrainConfig) {
  const train = readManifest(path.join(dir, "imgs", "train"));
  const test = readManifest(path.join(dir, "imgs", "test"));
  const { report } = await finetune(train, test, config, (m) => console.log(m));
  return report;
}

describe.skipIf(!RUN)("desk-scale", () => {
  it("iris, equal-font images: test accuracy >= 0.90", async () => {
    const dir = fs.mkdtempSync(path.join(os.tmpdir(), "desk-iris-"));
    const csv = path.join(dir, "iris.csv");
    py(`
from sklearn.datasets import load_iris
ds = load_iris()
with open(${JSON.stringify(csv)}, "w") as f:
    f.write(",".join(list(ds.feature_names) + ["species"]) + "\\n")
    for row, y in zip(ds.data, ds.target):
        f.write(",".join("%.1f" % v for v in row) + ",Iris-" + ds.target_names[y] + "\\n")
`);
    convert(csv, dir, ["--mode", "ef", "--size", "224"]);
    const report = await trainOn(dir, deskConfig({ epochs: 40 }));
    console.log(`iris accuracy=${report.accuracy.toFixed(4)}`);
    expect(report.nTrain).toBe(120);
    expect(report.nTest).toBe(30);
    expect(report.accuracy).toBeGreaterThanOrEqual(0.9);
    fs.rmSync(dir, { recursive: true, force: true });
  }, 600_000);

  it("wine, variant-font images from the committed importance file: accuracy >= 0.90", async () => {
    const dir = fs.mkdtempSync(path.join(os.tmpdir(), "desk-wine-"));
    const csv = path.join(dir, "wine.csv");
    py(`
from sklearn.datasets import load_wine
ds = load_wine()
with open(${JSON.stringify(csv)}, "w") as f:
    f.write(",".join(list(ds.feature_names) + ["class"]) + "\\n")
    for row, y in zip(ds.data, ds.target):
        f.write(",".join("%g" % v for v in row) + ",class_" + str(y) + "\\n")
`);
    const importance = path.join(REPO, "tests", "data", "wine_importance.json");
    convert(csv, dir, ["--mode", "vf", "--size", "224", "--importance", importance]);
    const report = await trainOn(dir, deskConfig({ epochs: 80 }));
    console.log(`wine accuracy=${report.accuracy.toFixed(4)}`);
    expect(report.accuracy).toBeGreaterThanOrEqual(0.9);
    fs.rmSync(dir, { recursive: true, force: true });
  }, 600_000);

  it("higgs-style smoke: 5000 rows, short run, finite AMS", async () => {
    const dir = fs.mkdtempSync(path.join(os.tmpdir(), "desk-higgs-"));
    const csv = path.join(dir, "higgs.csv");
    // 30 real-valued features; the two classes differ by a mean shift on a
    // handful of them, so a short run has something to latch onto.
    py(`
import numpy as np
rng = np.random.default_rng(0)
n = 5000
y = rng.integers(0, 2, n)
x = rng.normal(size=(n, 30))
x[:, :6] += y[:, None] * 1.5
with open(${JSON.stringify(csv)}, "w") as f:
    f.write(",".join("f%d" % i for i in range(30)) + ",label\\n")
    for row, k in zip(x, y):
        f.write(",".join("%.3f" % v for v in row) + "," + ("s" if k else "b") + "\\n")
`);
    convert(csv, dir, ["--mode", "ef", "--size", "224"]);
    const report = await trainOn(
      dir,
      deskConfig({ epochs: 2, signalClass: "s", validationFraction: 0.1 }),
    );
    console.log(`higgs ams=${report.ams} threshold=${report.amsThreshold}`);
    expect(report.nTrain + report.nTest).toBe(5000);
    expect(report.ams).toBeDefined();
    expect(Number.isFinite(report.ams!)).toBe(true);
    fs.rmSync(dir, { recursive: true, force: true });
  }, 600_000);
});
