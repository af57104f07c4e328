/**
 * Reader for converter output directories: manifest.tsv + manifest.json +
 * plan.json. The plan digest is re-verified so a tampered plan never feeds
 * a training run silently.
 */
import * as crypto from "node:crypto";
import * as fs from "node:fs";
import * as path from "node:path";

export interface ManifestEntry {
  imagePath: string;
  label: string;
  rowIndex: number;
}

export interface DatasetManifest {
  root: string;
  entries: ManifestEntry[];
  planDigest: string;
  configDigest: string;
  /** canvas side of the layout plan the images were rendered with */
  canvasSide: number;
}

export function readManifest(dir: string): DatasetManifest {
  const tsv = fs.readFileSync(path.join(dir, "manifest.tsv"), "utf-8");
  const sidecar = JSON.parse(fs.readFileSync(path.join(dir, "manifest.json"), "utf-8"));
  const planText = fs.readFileSync(path.join(dir, "plan.json"), "utf-8");

  const actual = crypto.createHash("sha256").update(planText).digest("hex");
  if (actual !== sidecar.plan_digest) {
    throw new Error(`plan digest mismatch in ${dir}: plan.json was modified`);
  }

  const plan = JSON.parse(planText);
  const entries: ManifestEntry[] = [];
  const lines = tsv.split("\n");
  for (const line of lines.slice(1)) {
    if (!line) continue;
    const [imagePath, label, rowIndex] = line.split("\t");
    entries.push({ imagePath, label, rowIndex: Number(rowIndex) });
  }
  if (entries.length !== sidecar.n_entries) {
    throw new Error(
      `manifest.tsv has ${entries.length} entries, sidecar says ${sidecar.n_entries}`,
    );
  }
  return {
    root: dir,
    entries,
    planDigest: sidecar.plan_digest,
    configDigest: sidecar.config_digest,
    canvasSide: plan.canvas.side,
  };
}

export function classNames(manifest: DatasetManifest): string[] {
  return [...new Set(manifest.entries.map((e) => e.label))].sort();
}
