"""SuperTML: render tabular rows as text images for CNN classification."""

from .font import GlyphFont, default_font
from .formatting import FormatOptions, TruncationCounter, char_budgets, format_value
from .importance import ImportanceVector, estimate_importance, load_importance
from .ingest import (MISSING, ColumnKind, DataError, Sample, TabularSchema,
                     infer_schema, parse_dataset, parse_rows, read_rows,
                     split_samples)
from .layout import (DEFAULT_FONT_TIERS, MIN_FONT, CanvasSpec, CellSpec,
                     LayoutPlan, LayoutError, plan_equal_font,
                     plan_variant_font, scale_plan, validate_plan)
from .emit import (DatasetManifest, ManifestEntry, emit_dataset,
                   manifest_warnings, parse_manifest)
from .pngio import read_png, write_png
from .render import (RasterImage, RenderError, render_sample, render_sew,
                     render_text, sew_feature_indices)

__version__ = "0.1.0"
