/** Test helpers: build converter-style output directories from scratch. */
import * as crypto from "node:crypto";
import * as fs from "node:fs";
import * as path from "node:path";
import * as zlib from "node:zlib";

const CRC_TABLE = (() => {
  const t = new Uint32Array(256);
  for (let n = 0; n < 256; n++) {
    let c = n;
    for (let k = 0; k < 8; k++) c = c & 1 ? 0xedb88320 ^ (c >>> 1) : c >>> 1;
    t[n] = c >>> 0;
  }
  return t;
})();

function crc32(buf: Buffer): number {
  let c = 0xffffffff;
  for (const byte of buf) c = CRC_TABLE[(c ^ byte) & 0xff] ^ (c >>> 8);
  return (c ^ 0xffffffff) >>> 0;
}

export function encodeGrayPng(pixels: Uint8Array, width: number, height: number): Buffer {
  const chunk = (tag: string, payload: Buffer): Buffer => {
    const head = Buffer.alloc(4);
    head.writeUInt32BE(payload.length);
    const body = Buffer.concat([Buffer.from(tag, "latin1"), payload]);
    const crc = Buffer.alloc(4);
    crc.writeUInt32BE(crc32(body));
    return Buffer.concat([head, body, crc]);
  };
  const ihdr = Buffer.alloc(13);
  ihdr.writeUInt32BE(width, 0);
  ihdr.writeUInt32BE(height, 4);
  ihdr.writeUInt8(8, 8); // bit depth
  const raw = Buffer.alloc(height * (width + 1));
  for (let y = 0; y < height; y++) {
    raw[y * (width + 1)] = 0;
    Buffer.from(pixels.subarray(y * width, (y + 1) * width)).copy(raw, y * (width + 1) + 1);
  }
  return Buffer.concat([
    Buffer.from([0x89, 0x50, 0x4e, 0x47, 0x0d, 0x0a, 0x1a, 0x0a]),
    chunk("IHDR", ihdr),
    chunk("IDAT", zlib.deflateSync(raw, { level: 9 })),
    chunk("IEND", Buffer.alloc(0)),
  ]);
}

export interface FakeSample {
  label: string;
  pixels: Uint8Array;
}

/** Write a manifest directory the way the converter lays one out. */
export function writeManifestDir(dir: string, side: number, samples: FakeSample[]): void {
  fs.mkdirSync(dir, { recursive: true });
  const plan = JSON.stringify({
    canvas: { side, margin: 2, background: 255, foreground: 0 },
    cells: [],
    char_budget: [],
    mode: "EqualFont",
  });
  const planDigest = crypto.createHash("sha256").update(plan).digest("hex");
  const lines = ["image_path\tlabel\trow_index"];
  samples.forEach((s, i) => {
    const name = `${s.label.replace(/[^0-9A-Za-z]/g, "-")}_${String(i).padStart(5, "0")}.png`;
    fs.writeFileSync(path.join(dir, name), encodeGrayPng(s.pixels, side, side));
    lines.push(`${name}\t${s.label}\t${i}`);
  });
  fs.writeFileSync(path.join(dir, "plan.json"), plan);
  fs.writeFileSync(path.join(dir, "manifest.tsv"), lines.join("\n") + "\n");
  fs.writeFileSync(
    path.join(dir, "manifest.json"),
    JSON.stringify({ plan_digest: planDigest, config_digest: "0".repeat(64), n_entries: samples.length }),
  );
}

/** Deterministic pseudo-random bytes for image fixtures. */
export function noiseImage(side: number, seed: number): Uint8Array {
  const out = new Uint8Array(side * side);
  let a = seed >>> 0;
  for (let i = 0; i < out.length; i++) {
    a = (Math.imul(a, 1664525) + 1013904223) >>> 0;
    out[i] = a >>> 24;
  }
  return out;
}

/** White canvas with a filled black square whose position encodes the class. */
export function squareImage(side: number, corner: "tl" | "br", jitter: number): Uint8Array {
  const out = new Uint8Array(side * side).fill(255);
  const size = Math.floor(side / 3);
  const base = corner === "tl" ? 2 + jitter : side - size - 2 - jitter;
  for (let y = base; y < base + size; y++) {
    for (let x = base; x < base + size; x++) {
      out[y * side + x] = 0;
    }
  }
  return out;
}
