/**
 * Decoder for the 8-bit grayscale PNGs the converter emits
 * (filter type 0 on every scanline, zlib-compressed).
 */
import * as zlib from "node:zlib";

export interface GrayImage {
  width: number;
  height: number;
  /** row-major intensities, length width*height */
  pixels: Uint8Array;
}

const SIGNATURE = Buffer.from([0x89, 0x50, 0x4e, 0x47, 0x0d, 0x0a, 0x1a, 0x0a]);

export function decodeGrayPng(data: Buffer): GrayImage {
  if (!data.subarray(0, 8).equals(SIGNATURE)) {
    throw new Error("not a PNG file");
  }
  let pos = 8;
  let width = -1;
  let height = -1;
  const idat: Buffer[] = [];
  while (pos < data.length) {
    const length = data.readUInt32BE(pos);
    const tag = data.toString("latin1", pos + 4, pos + 8);
    const payload = data.subarray(pos + 8, pos + 8 + length);
    pos += 12 + length;
    if (tag === "IHDR") {
      width = payload.readUInt32BE(0);
      height = payload.readUInt32BE(4);
      const depth = payload.readUInt8(8);
      const color = payload.readUInt8(9);
      if (depth !== 8 || color !== 0) {
        throw new Error(`unsupported PNG: depth=${depth} color=${color}`);
      }
    } else if (tag === "IDAT") {
      idat.push(payload);
    } else if (tag === "IEND") {
      break;
    }
  }
  if (width < 0) throw new Error("missing IHDR");
  const raw = zlib.inflateSync(Buffer.concat(idat));
  const stride = width + 1;
  if (raw.length !== stride * height) {
    throw new Error("unexpected PNG payload size");
  }
  const pixels = new Uint8Array(width * height);
  for (let y = 0; y < height; y++) {
    if (raw[y * stride] !== 0) {
      throw new Error("decoder handles scanline filter 0 only");
    }
    pixels.set(raw.subarray(y * stride + 1, (y + 1) * stride), y * width);
  }
  return { width, height, pixels };
}
