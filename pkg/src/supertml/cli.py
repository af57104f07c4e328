"""Command-line interface: schema / plan / convert / validate / importance.

Exit codes: 0 ok, 1 usage, 2 data error, 3 I/O error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import emit as emit_mod
from . import importance as imp_mod
from .formatting import FormatOptions, TruncationCounter, char_budgets
from .ingest import (DEFAULT_MISSING_TOKENS, DataError, TabularSchema,
                     infer_schema, parse_rows, read_rows, split_samples)
from .layout import (DEFAULT_FONT_TIERS, CanvasSpec, LayoutPlan,
                     plan_equal_font, plan_variant_font, scale_plan,
                     validate_plan)
from .render import sew_feature_indices

EXIT_OK, EXIT_USAGE, EXIT_DATA, EXIT_IO = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write("error: %s\n" % message)
        raise SystemExit(EXIT_USAGE)


def _add_input_args(p):
    p.add_argument("data", help="delimited input table")
    p.add_argument("--delimiter", default=",")
    p.add_argument("--no-header", action="store_true",
                   help="synthesize column names F1..Fn")
    p.add_argument("--label-column", type=int, default=-1,
                   help="label column index (default: last column)")
    p.add_argument("--missing-token", action="append", default=None,
                   help="token treated as missing (repeatable; replaces defaults)")
    p.add_argument("--schema", help="schema JSON file (skips inference)")


def _load_table(args):
    names, rows = read_rows(args.data, delimiter=args.delimiter,
                            header=not args.no_header)
    if not rows:
        raise DataError("%s has no data rows" % args.data)
    if args.schema:
        schema = TabularSchema.from_json(Path(args.schema).read_text(encoding="utf-8"))
    else:
        missing = (frozenset(args.missing_token) if args.missing_token
                   else DEFAULT_MISSING_TOKENS)
        label = args.label_column if args.label_column >= 0 else len(rows[0]) - 1
        schema = infer_schema(rows, label, missing, names=names)
    return schema, parse_rows(rows, schema)


def _format_options(args) -> FormatOptions:
    kwargs = {}
    if getattr(args, "missing_text", None):
        kwargs["missing_text"] = args.missing_text
    if getattr(args, "preserve_missing", False):
        kwargs["preserve_missing_token"] = True
    if getattr(args, "abbrev", None):
        return FormatOptions.load_abbreviations(args.abbrev, **kwargs)
    return FormatOptions(**kwargs)


def _sew_indices(spec: str, schema) -> frozenset[int]:
    if spec == "off":
        return frozenset()
    if spec == "auto":
        return sew_feature_indices(schema)
    names = list(schema.feature_names)
    out = set()
    for token in spec.split(","):
        token = token.strip()
        if token.isdigit():
            out.add(int(token))
        elif token in names:
            out.add(names.index(token))
        else:
            raise DataError("unknown SEW column %r" % token)
    return frozenset(out)


def cmd_schema(args) -> int:
    schema, _ = _load_table(args)
    text = schema.to_json()
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        print(text)
    return EXIT_OK


def cmd_importance(args) -> int:
    schema, samples = _load_table(args)
    vec = imp_mod.estimate_importance(samples, schema)
    if args.out:
        imp_mod.write_importance(vec, schema, args.out)
    else:
        print(json.dumps(dict(zip(schema.feature_names, vec.scores)),
                         indent=2, sort_keys=True))
    return EXIT_OK


def cmd_plan(args) -> int:
    schema, samples = _load_table(args)
    opts = _format_options(args)
    budgets = char_budgets(samples, schema, opts)
    canvas = CanvasSpec.for_side(args.size, **({"margin": args.margin}
                                               if args.margin else {}))
    sew = _sew_indices(args.sew, schema)
    if args.mode == "ef":
        plan = plan_equal_font(schema.n_features, budgets, canvas, sew)
    else:
        if args.importance == "builtin":
            vec = imp_mod.estimate_importance(samples, schema)
        else:
            vec = imp_mod.load_importance(args.importance, schema)
        tiers = (tuple(int(t) for t in args.tiers.split(","))
                 if args.tiers else DEFAULT_FONT_TIERS)
        plan = plan_variant_font(vec.scores, budgets, canvas, tiers, sew)
    if args.rescale_from:
        base = LayoutPlan.from_json(Path(args.rescale_from).read_text(encoding="utf-8"))
        plan = scale_plan(base, args.size)
    text = plan.to_json()
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        print(text)
    return EXIT_OK


def cmd_convert(args) -> int:
    schema, samples = _load_table(args)
    opts = _format_options(args)
    plan = LayoutPlan.from_json(Path(args.plan).read_text(encoding="utf-8"))
    truncations = TruncationCounter()
    out = Path(args.out)

    if args.split:
        try:
            train_part, test_part = (int(x) for x in args.split.split(":"))
        except ValueError:
            raise DataError("--split must look like 80:20")
        frac = train_part / (train_part + test_part)
        train_idx, test_idx = split_samples(samples, frac, args.seed)
        groups = [("train", [samples[i] for i in train_idx]),
                  ("test", [samples[i] for i in test_idx])]
    else:
        groups = [("", samples)]

    total = 0
    for sub, group in groups:
        manifest = emit_mod.emit_dataset(
            group, plan, schema, opts, out / sub if sub else out,
            workers=args.workers, by_class_dirs=args.by_class_dirs,
            truncations=truncations)
        total += len(manifest.entries)
    print("wrote %d images to %s" % (total, out))
    if truncations.total:
        for col, n in sorted(truncations.by_column.items()):
            print("warning: %d value(s) truncated in column %r" % (n, col),
                  file=sys.stderr)
    return EXIT_OK


def cmd_validate(args) -> int:
    path = Path(args.target)
    if path.is_file() and path.suffix == ".json" and "plan" in path.name:
        plan = LayoutPlan.from_json(path.read_text(encoding="utf-8"))
        problems = validate_plan(plan)
        for v in problems:
            print("%s: %s" % (v.kind, v.message), file=sys.stderr)
        if problems:
            raise DataError("%d plan violation(s)" % len(problems))
        print("plan ok: %d cells" % len(plan.cells))
        return EXIT_OK
    manifest = emit_mod.parse_manifest(path)
    root = path if path.is_dir() else path.parent
    warnings = emit_mod.manifest_warnings(manifest, root)
    for w in warnings:
        print("warning: %s" % w, file=sys.stderr)
    print("manifest ok: %d entries, %d warning(s)" % (len(manifest.entries), len(warnings)))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="supertml",
                description="Convert tabular datasets into text-rendered images")
    sub = p.add_subparsers(dest="command", required=True)

    ps = sub.add_parser("schema", help="infer and print a dataset schema")
    _add_input_args(ps)
    ps.add_argument("--out")
    ps.set_defaults(func=cmd_schema)

    pi = sub.add_parser("importance", help="run the builtin importance estimator")
    _add_input_args(pi)
    pi.add_argument("--out")
    pi.set_defaults(func=cmd_importance)

    pp = sub.add_parser("plan", help="compute a layout plan")
    _add_input_args(pp)
    pp.add_argument("--mode", choices=("ef", "vf"), default="ef")
    pp.add_argument("--size", type=int, default=224)
    pp.add_argument("--margin", type=int, default=0, help="inter-cell gap in pixels")
    pp.add_argument("--importance", default="builtin",
                    help="'builtin' or a JSON/CSV importance file (vf mode)")
    pp.add_argument("--tiers", help="comma-separated descending font sizes (vf mode)")
    pp.add_argument("--sew", default="off", help="auto | off | comma-separated columns")
    pp.add_argument("--missing-text")
    pp.add_argument("--abbrev", help="abbreviation map JSON")
    pp.add_argument("--rescale-from",
                    help="rescale this existing plan to --size instead of replanning")
    pp.add_argument("--out")
    pp.set_defaults(func=cmd_plan)

    pc = sub.add_parser("convert", help="render a dataset to an image folder")
    _add_input_args(pc)
    pc.add_argument("--plan", required=True)
    pc.add_argument("--out", required=True)
    pc.add_argument("--split", help="train:test ratio, e.g. 80:20")
    pc.add_argument("--seed", type=int, default=0)
    pc.add_argument("--missing-text")
    pc.add_argument("--preserve-missing", action="store_true",
                    help="render the source missing token (e.g. '?') verbatim")
    pc.add_argument("--abbrev", help="abbreviation map JSON")
    pc.add_argument("--workers", type=int, default=1)
    pc.add_argument("--by-class-dirs", action="store_true")
    pc.set_defaults(func=cmd_convert)

    pv = sub.add_parser("validate", help="check a plan file or manifest directory")
    pv.add_argument("target")
    pv.set_defaults(func=cmd_validate)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    except DataError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_DATA
    except OSError as exc:
        print("i/o error: %s" % exc, file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
