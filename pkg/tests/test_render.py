import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from supertml import (CanvasSpec, CellSpec, FormatOptions, RasterImage,
                      RenderError, Sample, default_font, infer_schema,
                      plan_equal_font, render_sample, render_sew, render_text,
                      sew_feature_indices)
from supertml.ingest import MISSING


@pytest.fixture
def font():
    return default_font()


def blank(side=224, value=255):
    return RasterImage.blank(side, side, value)


def ink_mask(img):
    return img.pixels != 255


class TestRenderText:
    def test_ink_stays_inside_cell(self, font):
        img = blank()
        cell = CellSpec(0, 114, 2, 108, 108, 20)
        render_text(img, cell, "23", font)
        ys, xs = np.nonzero(ink_mask(img))
        assert xs.min() >= cell.x and xs.max() < cell.x2
        assert ys.min() >= cell.y and ys.max() < cell.y2

    def test_empty_string_is_noop(self, font):
        img = blank()
        render_text(img, CellSpec(0, 0, 0, 50, 50, 10), "", font)
        assert not ink_mask(img).any()

    def test_overflow_raises_instead_of_clipping(self, font):
        img = blank()
        with pytest.raises(RenderError, match="overflow"):
            render_text(img, CellSpec(0, 0, 0, 30, 12, 12), "much too long", font)

    def test_wraps_when_cell_is_tall_enough(self, font):
        img = blank()
        cell = CellSpec(0, 0, 0, 30, 40, 12)
        render_text(img, cell, "abcdefgh", font)  # 4 per line, 2 lines
        ys, _ = np.nonzero(ink_mask(img))
        assert ys.max() >= 12  # second line has ink

    def test_unknown_codepoint_gets_replacement_box(self, font):
        a, b = blank(), blank()
        cell = CellSpec(0, 0, 0, 60, 30, 20)
        render_text(a, cell, "é", font)
        render_text(b, cell, "☃", font)
        assert ink_mask(a).any()
        assert np.array_equal(a.pixels, b.pixels)

    def test_same_string_same_pixels(self, font):
        a, b = blank(), blank()
        cell = CellSpec(0, 5, 5, 200, 50, 33)
        render_text(a, cell, "6.0", font)
        render_text(b, cell, "6.0", font)
        assert np.array_equal(a.pixels, b.pixels)


@settings(max_examples=200, deadline=None)
@given(st.data())
def test_out_of_cell_purity(data):
    """Pixel-diff before/after is nonzero only within cell bounds."""
    font = default_font()
    side = 160
    f = data.draw(st.integers(6, 24))
    w = data.draw(st.integers(font.advance(f), 150))
    h = data.draw(st.integers(f, 150))
    x = data.draw(st.integers(0, side - w))
    y = data.draw(st.integers(0, side - h))
    text = data.draw(st.text(
        alphabet=st.characters(min_codepoint=33, max_codepoint=126),
        max_size=(w // font.advance(f)) * (h // f)))
    img = blank(side)
    before = img.pixels.copy()
    try:
        render_text(img, CellSpec(0, x, y, w, h, f), text, font)
    except RenderError:
        return
    outside = np.ones((side, side), dtype=bool)
    outside[y:y + h, x:x + w] = False
    assert np.array_equal(img.pixels[outside], before[outside])


class TestRenderSew:
    @pytest.mark.parametrize("word,g", [("b", 1), ("Male", 2), ("Husband", 3)])
    def test_grid_arity(self, font, word, g):
        assert math.ceil(math.sqrt(len(word))) == g
        img = blank()
        cell = CellSpec(0, 10, 10, 90, 90, 20, sew=True)
        render_sew(img, cell, word, font)
        ys, xs = np.nonzero(ink_mask(img))
        assert xs.min() >= cell.x and xs.max() < cell.x2
        assert ys.min() >= cell.y and ys.max() < cell.y2
        # ink reaches the last occupied row of the character grid
        last_row = (len(word) - 1) // g
        assert ys.max() >= cell.y + last_row * (cell.width // g)

    def test_square_cell_required(self, font):
        with pytest.raises(RenderError, match="square"):
            render_sew(blank(), CellSpec(0, 0, 0, 60, 40, 10, sew=True), "abc", font)

    def test_empty_word_rejected(self, font):
        with pytest.raises(RenderError):
            render_sew(blank(), CellSpec(0, 0, 0, 60, 60, 10, sew=True), "", font)

    def test_footprint_independent_of_length(self, font):
        """Different-length words occupy the same square cell."""
        for word in ("ab", "abcdefghij", "x" * 25):
            img = blank()
            cell = CellSpec(0, 40, 40, 120, 120, 20, sew=True)
            render_sew(img, cell, word, font)
            ys, xs = np.nonzero(ink_mask(img))
            assert xs.min() >= 40 and xs.max() < 160
            assert ys.min() >= 40 and ys.max() < 160


def iris_like_setup():
    rows = [["6.0", "2.2", "5.0", "1.5", "Iris-virginica"]]
    schema = infer_schema(rows, 4)
    sample = Sample(("6.0", "2.2", "5.0", "1.5"), "Iris-virginica")
    return schema, sample


class TestRenderSample:
    def test_four_numerals_in_four_cells(self):
        schema, sample = iris_like_setup()
        plan = plan_equal_font(4, [3, 3, 3, 3], CanvasSpec(224))
        img = render_sample(sample, plan, schema, FormatOptions())
        for cell in plan.cells:
            region = img.pixels[cell.y:cell.y2, cell.x:cell.x2]
            assert (region == 0).any(), "cell %d has no ink" % cell.feature_index

    def test_all_missing_renders_missing_everywhere(self):
        schema, _ = iris_like_setup()
        sample = Sample((MISSING,) * 4, "x")
        plan = plan_equal_font(4, [7] * 4, CanvasSpec(224))
        img = render_sample(sample, plan, schema, FormatOptions())
        ref = render_sample(Sample(("missing",) * 4, "x"), plan, schema, FormatOptions())
        assert np.array_equal(img.pixels, ref.pixels)

    def test_byte_determinism(self):
        schema, sample = iris_like_setup()
        plan = plan_equal_font(4, [3, 3, 3, 3], CanvasSpec(224))
        a = render_sample(sample, plan, schema, FormatOptions())
        b = render_sample(sample, plan, schema, FormatOptions())
        assert a.pixels.tobytes() == b.pixels.tobytes()

    def test_non_overlapping_ink_composition(self):
        schema, sample = iris_like_setup()
        plan = plan_equal_font(4, [3, 3, 3, 3], CanvasSpec(224))
        img = render_sample(sample, plan, schema, FormatOptions())
        masks = []
        for cell in plan.cells:
            m = np.zeros_like(img.pixels, dtype=bool)
            m[cell.y:cell.y2, cell.x:cell.x2] = True
            masks.append(m)
        for i in range(4):
            for j in range(i + 1, 4):
                assert not (masks[i] & masks[j]).any()

    def test_distinguishability(self):
        schema, sample = iris_like_setup()
        other = Sample(("6.0", "2.2", "5.0", "1.6"), "Iris-virginica")
        plan = plan_equal_font(4, [3, 3, 3, 3], CanvasSpec(224))
        a = render_sample(sample, plan, schema, FormatOptions())
        b = render_sample(other, plan, schema, FormatOptions())
        assert not np.array_equal(a.pixels, b.pixels)

    def test_error_names_feature(self):
        schema, _ = iris_like_setup()
        plan = plan_equal_font(4, [3, 3, 3, 3], CanvasSpec(224))
        long = Sample(("6.0", "2.2", "5.0", "1.23456789012345"), "x")
        with pytest.raises(RenderError, match="feature 3"):
            render_sample(long, plan, schema, FormatOptions())


def test_sew_feature_indices_categorical_only(adult):
    schema, _ = adult
    sew = sew_feature_indices(schema)
    names = schema.feature_names
    assert names.index("occupation") in sew
    assert names.index("age") not in sew
