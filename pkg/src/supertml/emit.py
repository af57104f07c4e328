"""End-to-end emission: render every sample, write label-named PNGs, and
produce a manifest that makes the output verifiable and reversible."""

from __future__ import annotations

import hashlib
import json
import re
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from .font import GlyphFont, default_font
from .formatting import FormatOptions, TruncationCounter
from .ingest import DataError, Sample, TabularSchema
from .layout import LayoutPlan, validate_plan
from .pngio import encode_gray
from .render import render_sample

MANIFEST_TSV = "manifest.tsv"
MANIFEST_JSON = "manifest.json"
PLAN_JSON = "plan.json"


class EmitError(DataError):
    pass


@dataclass(frozen=True)
class ManifestEntry:
    image_path: str  # relative to the manifest's directory
    label: str
    row_index: int


@dataclass(frozen=True)
class DatasetManifest:
    entries: tuple[ManifestEntry, ...]
    plan_digest: str
    config_digest: str

    def __post_init__(self):
        paths = [e.image_path for e in self.entries]
        if len(set(paths)) != len(paths):
            raise EmitError("manifest has duplicate image paths")
        if sorted(e.row_index for e in self.entries) != list(range(len(self.entries))):
            raise EmitError("manifest row indices are not dense from 0")

    def labels(self) -> list[str]:
        return [e.label for e in self.entries]


def sanitize_label(label: str) -> str:
    return re.sub(r"[^0-9A-Za-z]", "-", label) or "-"


def plan_digest(plan: LayoutPlan) -> str:
    return hashlib.sha256(plan.to_json().encode()).hexdigest()


def config_digest(schema: TabularSchema, opts: FormatOptions) -> str:
    doc = {
        "schema": schema.to_json(),
        "missing_text": opts.missing_text,
        "max_chars_numeric": opts.max_chars_numeric,
        "max_chars_categorical": opts.max_chars_categorical,
        "abbreviations": opts.abbreviations,
        "preserve_missing_token": opts.preserve_missing_token,
    }
    return hashlib.sha256(json.dumps(doc, sort_keys=True).encode()).hexdigest()


def emit_dataset(samples: Sequence[Sample], plan: LayoutPlan, schema: TabularSchema,
                 opts: FormatOptions, out_dir: str | Path,
                 font: GlyphFont | None = None, workers: int = 1,
                 by_class_dirs: bool = False,
                 truncations: TruncationCounter | None = None) -> DatasetManifest:
    """Write one PNG per sample plus manifest.tsv / manifest.json / plan.json.

    File names encode the label: <sanitized_label>_<row index, 5 digits>.png.
    Output is byte-deterministic and independent of the worker count; any
    failure removes the files written so far rather than leaving a torn
    output directory.
    """
    problems = validate_plan(plan)
    if problems:
        raise EmitError("refusing to emit with an invalid plan: %s" % problems[0].message)

    sanitized = {}
    for s in samples:
        clean = sanitize_label(s.label)
        prior = sanitized.setdefault(clean, s.label)
        if prior != s.label:
            raise EmitError("labels %r and %r both sanitize to %r"
                            % (prior, s.label, clean))

    font = font or default_font()
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)

    def relpath(sample: Sample, idx: int) -> str:
        name = "%s_%05d.png" % (sanitize_label(sample.label), idx)
        if by_class_dirs:
            return "%s/%s" % (sanitize_label(sample.label), name)
        return name

    def render_one(idx: int) -> bytes:
        return encode_gray(render_sample(samples[idx], plan, schema, opts, font,
                                         truncations).pixels)

    written: list[Path] = []
    try:
        if workers > 1:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                blobs = list(pool.map(render_one, range(len(samples))))
        else:
            blobs = [render_one(i) for i in range(len(samples))]
        entries = []
        for idx, (sample, blob) in enumerate(zip(samples, blobs)):
            rel = relpath(sample, idx)
            target = out / rel
            target.parent.mkdir(parents=True, exist_ok=True)
            target.write_bytes(blob)
            written.append(target)
            entries.append(ManifestEntry(rel, sample.label, idx))

        manifest = DatasetManifest(tuple(entries), plan_digest(plan),
                                   config_digest(schema, opts))
        _write_manifest(manifest, plan, out)
    except Exception:
        for path in written:
            path.unlink(missing_ok=True)
        raise
    return manifest


def _write_manifest(manifest: DatasetManifest, plan: LayoutPlan, out: Path) -> None:
    lines = ["image_path\tlabel\trow_index"]
    lines += ["%s\t%s\t%d" % (e.image_path, e.label, e.row_index)
              for e in manifest.entries]
    (out / MANIFEST_TSV).write_text("\n".join(lines) + "\n", encoding="utf-8")
    (out / PLAN_JSON).write_text(plan.to_json(), encoding="utf-8")
    sidecar = {
        "plan_digest": manifest.plan_digest,
        "config_digest": manifest.config_digest,
        "n_entries": len(manifest.entries),
    }
    (out / MANIFEST_JSON).write_text(json.dumps(sidecar, indent=2, sort_keys=True),
                                     encoding="utf-8")


def parse_manifest(path: str | Path) -> DatasetManifest:
    """Read back a manifest directory; verifies the plan digest (tamper check)."""
    root = Path(path)
    if root.is_file():
        root = root.parent
    try:
        tsv = (root / MANIFEST_TSV).read_text(encoding="utf-8").splitlines()
        sidecar = json.loads((root / MANIFEST_JSON).read_text(encoding="utf-8"))
        plan_text = (root / PLAN_JSON).read_text(encoding="utf-8")
    except FileNotFoundError as exc:
        raise EmitError("incomplete manifest directory %s: %s" % (root, exc)) from exc

    actual = hashlib.sha256(plan_text.encode()).hexdigest()
    if actual != sidecar["plan_digest"]:
        raise EmitError("plan digest mismatch in %s: plan.json was modified" % root)

    entries = []
    for line in tsv[1:]:
        if not line:
            continue
        rel, label, idx = line.split("\t")
        entries.append(ManifestEntry(rel, label, int(idx)))
    return DatasetManifest(tuple(entries), sidecar["plan_digest"], sidecar["config_digest"])


def manifest_warnings(manifest: DatasetManifest, root: str | Path) -> list[str]:
    """Non-fatal integrity checks: files the manifest references but that are gone."""
    root = Path(root)
    return ["missing image: %s" % e.image_path
            for e in manifest.entries if not (root / e.image_path).is_file()]
