"""Minimal deterministic PNG encode/decode for 8-bit grayscale images.

No timestamps, no ancillary chunks, fixed zlib level, filter type 0 on
every scanline: the same pixels always produce the same file bytes.
"""

from __future__ import annotations

import struct
import zlib
from pathlib import Path

import numpy as np

_SIGNATURE = b"\x89PNG\r\n\x1a\n"
_ZLIB_LEVEL = 9


class PngError(ValueError):
    pass


def _chunk(tag: bytes, payload: bytes) -> bytes:
    return (struct.pack(">I", len(payload)) + tag + payload
            + struct.pack(">I", zlib.crc32(tag + payload)))


def encode_gray(pixels: np.ndarray) -> bytes:
    """Encode an (h, w) uint8 array as a grayscale PNG byte string."""
    if pixels.ndim != 2 or pixels.dtype != np.uint8:
        raise PngError("expected a 2-D uint8 array")
    h, w = pixels.shape
    ihdr = struct.pack(">IIBBBBB", w, h, 8, 0, 0, 0, 0)  # 8-bit grayscale
    raw = np.empty((h, w + 1), dtype=np.uint8)
    raw[:, 0] = 0  # filter type 0 per scanline
    raw[:, 1:] = pixels
    idat = zlib.compress(raw.tobytes(), _ZLIB_LEVEL)
    return (_SIGNATURE + _chunk(b"IHDR", ihdr) + _chunk(b"IDAT", idat)
            + _chunk(b"IEND", b""))


def decode_gray(data: bytes) -> np.ndarray:
    """Decode a grayscale PNG produced by encode_gray (filter 0 only)."""
    if data[:8] != _SIGNATURE:
        raise PngError("not a PNG file")
    pos = 8
    width = height = None
    idat = b""
    while pos < len(data):
        (length,) = struct.unpack(">I", data[pos:pos + 4])
        tag = data[pos + 4:pos + 8]
        payload = data[pos + 8:pos + 8 + length]
        pos += 12 + length
        if tag == b"IHDR":
            width, height, depth, color = struct.unpack(">IIBB", payload[:10])
            if depth != 8 or color != 0:
                raise PngError("only 8-bit grayscale is supported")
        elif tag == b"IDAT":
            idat += payload
        elif tag == b"IEND":
            break
    if width is None:
        raise PngError("missing IHDR")
    raw = np.frombuffer(zlib.decompress(idat), dtype=np.uint8)
    rows = raw.reshape(height, width + 1)
    if np.any(rows[:, 0] != 0):
        raise PngError("unexpected scanline filter; decoder handles filter 0 only")
    return rows[:, 1:].copy()


def write_png(path: str | Path, pixels: np.ndarray) -> None:
    Path(path).write_bytes(encode_gray(pixels))


def read_png(path: str | Path) -> np.ndarray:
    return decode_gray(Path(path).read_bytes())
