/**
 * Fine-tuning harness: a small convolutional classifier trained with
 * cross-entropy on converter output folders, evaluated by accuracy and,
 * for binary signal/background tasks, by AMS at a swept threshold.
 *
 * The backbone is a config string so heavier architectures can be swapped
 * in; the default is a compact CNN suited to desk-scale runs. Weight init
 * is seeded, so runs are deterministic up to the framework's kernel order.
 */
import * as tf from "@tensorflow/tfjs";
import * as crypto from "node:crypto";

import { amsScore, selectThreshold, DEFAULT_B_REG } from "./ams.js";
import { loadDataset, shuffled, splitIndices, toBatchTensor, LoadedDataset } from "./data.js";
import { DatasetManifest } from "./manifest.js";

export interface TrainConfig {
  backbone: string; // "small-cnn" | "small-cnn-fast"
  inputSide: number; // must match the manifest's plan canvas side
  epochs: number;
  learningRate: number;
  seed: number;
  batchSize: number;
  /** optional per-class loss weights, keyed by class name */
  classWeights?: Record<string, number>;
  /** class treated as "signal" for AMS reporting (binary tasks only) */
  signalClass?: string;
  /** per-event weights for AMS, aligned with test manifest rows */
  eventWeights?: number[];
  bReg?: number;
  validationFraction?: number; // for threshold selection; default 0.1
}

export const DEFAULT_CONFIG: Omit<TrainConfig, "inputSide"> = {
  backbone: "small-cnn",
  epochs: 40,
  learningRate: 1e-3,
  seed: 0,
  batchSize: 16,
};

export interface EvalReport {
  accuracy: number;
  perClass: Record<string, { correct: number; total: number }>;
  ams?: number;
  amsThreshold?: number;
  configDigest: string;
  classes: string[];
  nTrain: number;
  nTest: number;
}

export function configDigest(config: TrainConfig): string {
  const canonical = JSON.stringify(config, Object.keys(config).sort());
  return crypto.createHash("sha256").update(canonical).digest("hex");
}

export function buildModel(
  backbone: string,
  side: number,
  nClasses: number,
  seed: number,
): tf.LayersModel {
  const kernelInitializer = tf.initializers.glorotUniform({ seed });
  const conv = (filters: number, strides = 1) =>
    tf.layers.conv2d({
      filters,
      kernelSize: 3,
      strides,
      padding: "same",
      activation: "relu",
      kernelInitializer,
    });
  const pool = (size: number) => tf.layers.maxPooling2d({ poolSize: size });

  const model = tf.sequential();
  model.add(tf.layers.inputLayer({ inputShape: [side, side, 3] }));
  if (backbone === "small-cnn-fast") {
    // aggressive early downsampling for large canvases on a CPU backend
    model.add(tf.layers.averagePooling2d({ poolSize: 4 }));
    model.add(conv(16));
    model.add(pool(2));
    model.add(conv(32));
    model.add(pool(2));
    model.add(conv(32));
    model.add(tf.layers.flatten());
  } else if (backbone === "small-cnn") {
    model.add(tf.layers.averagePooling2d({ poolSize: 2 }));
    model.add(conv(16));
    model.add(pool(2));
    model.add(conv(32));
    model.add(pool(2));
    model.add(conv(64));
    model.add(pool(2));
    model.add(conv(64));
    model.add(tf.layers.flatten());
  } else if (backbone === "pooled-mlp") {
    // no conv layers at all: conv gradients on the pure-JS backend are far
    // too slow for big canvases, and glyphs sit at fixed positions anyway,
    // so pooled pixels + dense layers carry the signal
    model.add(tf.layers.averagePooling2d({ poolSize: 8 }));
    model.add(tf.layers.flatten());
    model.add(tf.layers.batchNormalization());
    model.add(tf.layers.dense({ units: 64, activation: "relu", kernelInitializer }));
    model.add(tf.layers.dropout({ rate: 0.3, seed }));
  } else {
    throw new Error(`unknown backbone ${backbone}`);
  }
  model.add(tf.layers.dense({ units: 64, activation: "relu", kernelInitializer }));
  model.add(
    tf.layers.dense({ units: nClasses, activation: "softmax", kernelInitializer }),
  );
  return model;
}

function checkSide(config: TrainConfig, data: LoadedDataset, what: string): void {
  if (data.side !== config.inputSide) {
    throw new Error(
      `${what} images are ${data.side}px, config.inputSide is ${config.inputSide}`,
    );
  }
}

export interface FinetuneResult {
  model: tf.LayersModel;
  report: EvalReport;
}

export async function finetune(
  trainManifest: DatasetManifest,
  testManifest: DatasetManifest,
  config: TrainConfig,
  log: (msg: string) => void = () => {},
): Promise<FinetuneResult> {
  const train = loadDataset(trainManifest);
  const test = loadDataset(testManifest);
  checkSide(config, train, "training");
  checkSide(config, test, "test");
  if (train.classes.length < 2) {
    throw new Error(`need >= 2 classes, found ${train.classes.length}`);
  }
  for (const c of test.classes) {
    if (!train.classes.includes(c)) {
      throw new Error(`test class ${c} never appears in training data`);
    }
  }
  const classes = train.classes;
  const nClasses = classes.length;
  const model = buildModel(config.backbone, config.inputSide, nClasses, config.seed);
  const optimizer = tf.train.adam(config.learningRate);

  const lossWeights = classes.map((c) => config.classWeights?.[c] ?? 1);
  const weightOf = (label: number) => lossWeights[label];

  const n = train.images.length;
  for (let epoch = 0; epoch < config.epochs; epoch++) {
    const order = shuffled(n, config.seed + 1 + epoch);
    let epochLoss = 0;
    let batches = 0;
    for (let at = 0; at < n; at += config.batchSize) {
      const idx = order.slice(at, at + config.batchSize);
      const loss = tf.tidy(() => {
        const x = toBatchTensor(idx.map((i) => train.images[i]), train.side);
        const y = tf.cast(tf.oneHot(idx.map((i) => train.labels[i]), nClasses), "float32");
        const w = tf.tensor1d(idx.map((i) => weightOf(train.labels[i])));
        const value = optimizer.minimize(() => {
          const probs = model.apply(x, { training: true }) as tf.Tensor2D;
          const perEvent = tf.neg(
            tf.sum(tf.mul(y, tf.log(tf.add(probs, 1e-7))), 1),
          );
          return tf.mean(tf.mul(perEvent, w)) as tf.Scalar;
        }, true)!;
        return value.dataSync()[0];
      });
      epochLoss += loss;
      batches += 1;
    }
    log(`epoch ${epoch + 1}/${config.epochs} loss=${(epochLoss / batches).toFixed(4)}`);
  }

  const report = await evaluate(model, train, test, config, classes);
  return { model, report };
}

async function predictProbs(
  model: tf.LayersModel,
  data: LoadedDataset,
  indices: number[],
  batchSize: number,
): Promise<number[][]> {
  const out: number[][] = [];
  for (let at = 0; at < indices.length; at += batchSize) {
    const idx = indices.slice(at, at + batchSize);
    const probs = tf.tidy(() => {
      const x = toBatchTensor(idx.map((i) => data.images[i]), data.side);
      return model.predict(x) as tf.Tensor2D;
    });
    const rows = (await probs.array()) as number[][];
    probs.dispose();
    out.push(...rows);
  }
  return out;
}

async function evaluate(
  model: tf.LayersModel,
  train: LoadedDataset,
  test: LoadedDataset,
  config: TrainConfig,
  classes: string[],
): Promise<EvalReport> {
  const testIdx = [...test.images.keys()];
  const probs = await predictProbs(model, test, testIdx, config.batchSize);

  const perClass: Record<string, { correct: number; total: number }> = {};
  for (const c of classes) perClass[c] = { correct: 0, total: 0 };
  let correct = 0;
  const testLabelNames = test.classes;
  for (let i = 0; i < probs.length; i++) {
    const predicted = probs[i].indexOf(Math.max(...probs[i]));
    const actualName = testLabelNames[test.labels[i]];
    perClass[actualName].total += 1;
    if (classes[predicted] === actualName) {
      perClass[actualName].correct += 1;
      correct += 1;
    }
  }

  const report: EvalReport = {
    accuracy: probs.length ? correct / probs.length : 0,
    perClass,
    configDigest: configDigest(config),
    classes,
    nTrain: train.images.length,
    nTest: probs.length,
  };

  if (config.signalClass !== undefined) {
    if (classes.length !== 2) {
      throw new Error("AMS reporting is defined for binary tasks only");
    }
    const signalIdx = classes.indexOf(config.signalClass);
    if (signalIdx < 0) throw new Error(`unknown signal class ${config.signalClass}`);
    const bReg = config.bReg ?? DEFAULT_B_REG;

    // threshold from a seeded validation split of the training data
    const [, valIdx] = splitIndices(
      train.images.length,
      config.validationFraction ?? 0.1,
      config.seed,
    );
    const valProbs = await predictProbs(model, train, valIdx, config.batchSize);
    const valScores = valProbs.map((p) => p[signalIdx]);
    const valLabels = valIdx.map((i) => train.classes[train.labels[i]] === config.signalClass);
    const { threshold } = selectThreshold(
      valScores,
      valLabels,
      valIdx.map(() => 1),
      bReg,
    );

    const weights = config.eventWeights ?? testIdx.map(() => 1);
    let s = 0;
    let b = 0;
    for (let i = 0; i < probs.length; i++) {
      if (probs[i][signalIdx] >= threshold) {
        if (testLabelNames[test.labels[i]] === config.signalClass) s += weights[i];
        else b += weights[i];
      }
    }
    report.ams = amsScore(s, b, bReg);
    report.amsThreshold = threshold;
  }
  return report;
}
