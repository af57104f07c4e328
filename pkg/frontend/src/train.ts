#!/usr/bin/env node
/**
 * supertml-train: fine-tune a classifier on converter output folders.
 *
 * Usage: supertml-train --config config.json
 *
 * Config file:
 * {
 *   "trainManifest": "images/train",
 *   "testManifest": "images/test",
 *   "out": "report.json",
 *   "backbone": "small-cnn",
 *   "inputSide": 224,
 *   "epochs": 40,
 *   "learningRate": 0.001,
 *   "seed": 0,
 *   "batchSize": 16,
 *   "signalClass": "s",          // optional, binary tasks: report AMS
 *   "eventWeightsFile": "w.json" // optional, per test row
 * }
 */
import * as fs from "node:fs";
import yargs from "yargs";
import { hideBin } from "yargs/helpers";

import { readManifest } from "./manifest.js";
import { DEFAULT_CONFIG, TrainConfig, finetune } from "./model.js";

interface FileConfig extends Partial<TrainConfig> {
  trainManifest: string;
  testManifest: string;
  out?: string;
  eventWeightsFile?: string;
}

export async function run(configPath: string): Promise<number> {
  const file: FileConfig = JSON.parse(fs.readFileSync(configPath, "utf-8"));
  const trainManifest = readManifest(file.trainManifest);
  const testManifest = readManifest(file.testManifest);

  const config: TrainConfig = {
    ...DEFAULT_CONFIG,
    inputSide: file.inputSide ?? trainManifest.canvasSide,
    ...file,
  };
  if (file.eventWeightsFile) {
    config.eventWeights = JSON.parse(fs.readFileSync(file.eventWeightsFile, "utf-8"));
  }

  const { report } = await finetune(trainManifest, testManifest, config, (msg) =>
    console.error(msg),
  );
  const text = JSON.stringify(report, null, 2);
  if (file.out) {
    fs.writeFileSync(file.out, text);
  }
  console.log(text);
  return 0;
}

async function main(): Promise<void> {
  const argv = await yargs(hideBin(process.argv))
    .option("config", { type: "string", demandOption: true })
    .strict()
    .parse();
  process.exitCode = await run(argv.config);
}

const isDirect =
  process.argv[1] !== undefined && import.meta.url.endsWith(process.argv[1].split("/").pop()!);
if (isDirect) {
  main().catch((err) => {
    console.error(String(err?.message ?? err));
    process.exitCode = 1;
  });
}
