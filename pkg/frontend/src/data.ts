/**
 * Image loading for training: grayscale PNGs kept as byte arrays, converted
 * to 3-channel float tensors batch by batch (pretrained-style stems expect
 * RGB, so the single channel is replicated).
 */
import * as tf from "@tensorflow/tfjs";
import * as fs from "node:fs";
import * as path from "node:path";

import { DatasetManifest, classNames } from "./manifest.js";
import { decodeGrayPng } from "./png.js";

export interface LoadedDataset {
  images: Uint8Array[];
  labels: number[];
  classes: string[];
  side: number;
}

export function loadDataset(manifest: DatasetManifest): LoadedDataset {
  const classes = classNames(manifest);
  const index = new Map(classes.map((c, i) => [c, i]));
  const images: Uint8Array[] = [];
  const labels: number[] = [];
  for (const entry of manifest.entries) {
    const img = decodeGrayPng(fs.readFileSync(path.join(manifest.root, entry.imagePath)));
    if (img.width !== manifest.canvasSide || img.height !== manifest.canvasSide) {
      throw new Error(
        `${entry.imagePath} is ${img.width}x${img.height}, plan says ${manifest.canvasSide}`,
      );
    }
    images.push(img.pixels);
    labels.push(index.get(entry.label)!);
  }
  return { images, labels, classes, side: manifest.canvasSide };
}

/**
 * Batch of grayscale bytes -> float tensor [n, side, side, 3] in [0, 1],
 * channels identical to the stored image.
 */
export function toBatchTensor(images: Uint8Array[], side: number): tf.Tensor4D {
  const n = images.length;
  const out = new Float32Array(n * side * side * 3);
  for (let i = 0; i < n; i++) {
    const src = images[i];
    let o = i * side * side * 3;
    for (let p = 0; p < src.length; p++) {
      const v = src[p] / 255;
      out[o++] = v;
      out[o++] = v;
      out[o++] = v;
    }
  }
  return tf.tensor4d(out, [n, side, side, 3]);
}

/** Deterministic PRNG (mulberry32) so splits and shuffles are seed-stable. */
export function seededRng(seed: number): () => number {
  let a = seed >>> 0;
  return () => {
    a |= 0;
    a = (a + 0x6d2b79f5) | 0;
    let t = Math.imul(a ^ (a >>> 15), 1 | a);
    t = (t + Math.imul(t ^ (t >>> 7), 61 | t)) ^ t;
    return ((t ^ (t >>> 14)) >>> 0) / 4294967296;
  };
}

export function shuffled(n: number, seed: number): number[] {
  const rng = seededRng(seed);
  const order = [...Array(n).keys()];
  for (let i = n - 1; i > 0; i--) {
    const j = Math.floor(rng() * (i + 1));
    [order[i], order[j]] = [order[j], order[i]];
  }
  return order;
}

/** Seeded 90/10-style split of index space: [train, validation]. */
export function splitIndices(
  n: number,
  validationFraction: number,
  seed: number,
): [number[], number[]] {
  const order = shuffled(n, seed);
  const nVal = Math.max(1, Math.round(n * validationFraction));
  const val = order.slice(0, nVal).sort((a, b) => a - b);
  const train = order.slice(nVal).sort((a, b) => a - b);
  return [train, val];
}
