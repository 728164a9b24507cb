"""SVG chart rendering tests: determinism, escaping, structure."""

from __future__ import annotations

import xml.etree.ElementTree as ET

import pytest

from conftest import make_corpus
from feedback_lens.charts import (
    render_bar_chart,
    render_length_histogram,
    render_term_scatter,
    write_svg,
)
from feedback_lens.classify import classify_corpus
from feedback_lens.lexicon import load_language
from feedback_lens.stats import compare_corpora_terms, length_distribution

LEX_EN = load_language("en")


def parse_svg(svg: str) -> ET.Element:
    return ET.fromstring(svg)


class TestBarChart:
    def test_well_formed_svg(self):
        svg = render_bar_chart([("positive", 45.0), ("other", 55.0)], "Shares")
        root = parse_svg(svg)
        assert root.tag.endswith("svg")

    def test_deterministic(self):
        items = [("positive", 45.0), ("other", 55.0)]
        assert render_bar_chart(items, "x") == render_bar_chart(items, "x")

    def test_title_escaped(self):
        svg = render_bar_chart([("a", 1.0)], 'A <b> & "c"')
        parse_svg(svg)
        assert "<b>" not in svg.replace("&lt;b&gt;", "")

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            render_bar_chart([], "empty")

    def test_values_appear_as_labels(self):
        svg = render_bar_chart([("positive", 45.25)], "x")
        assert "45.25" in svg
        assert "positive" in svg


class TestLengthHistogramChart:
    def _hist(self):
        texts = ["yeah", "the train was late", " ".join(["w"] * 30)]
        corpus = make_corpus(texts)
        labels = classify_corpus(corpus, LEX_EN).records
        return length_distribution(corpus, labels, max_length=5)

    def test_well_formed(self):
        svg = render_length_histogram(self._hist(), "Lengths")
        parse_svg(svg)

    def test_tail_bin_labeled_with_plus(self):
        svg = render_length_histogram(self._hist(), "Lengths")
        assert "5+" in svg

    def test_deterministic(self):
        hist = self._hist()
        assert render_length_histogram(hist, "t") == render_length_histogram(hist, "t")

    def test_legend_present(self):
        svg = render_length_histogram(self._hist(), "Lengths")
        assert "feedback" in svg.lower()
        assert "other" in svg.lower()


class TestTermScatter:
    def _stats(self):
        a = make_corpus(["yeah", "yeah", "okay", "no"], name="a")
        b = make_corpus(["no", "no", "what"], name="b")
        return compare_corpora_terms(a, b, n_max=1, top_k=5).table

    def test_well_formed(self):
        svg = render_term_scatter(self._stats(), "Terms")
        parse_svg(svg)

    def test_axis_labels(self):
        svg = render_term_scatter(self._stats(), "Terms")
        assert "fscore_a" in svg
        assert "fscore_b" in svg

    def test_terms_rendered(self):
        svg = render_term_scatter(self._stats(), "Terms")
        assert "yeah" in svg

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            render_term_scatter([], "none")


def test_write_svg(tmp_path):
    path = str(tmp_path / "chart.svg")
    svg = render_bar_chart([("a", 1.0)], "t")
    write_svg(svg, path)
    with open(path, encoding="utf-8") as fh:
        content = fh.read()
    assert content == svg or content == svg + "\n"
    parse_svg(content)
