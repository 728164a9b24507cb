"""Static SVG charts for proportion tables, length histograms, and
term comparisons.

Output is built by plain string assembly with fixed float formatting
and no timestamps, so rendering the same data twice yields the same
bytes.  Colors follow the reporting convention: feedback in blue,
everything else in red/grey.
"""

from __future__ import annotations

from xml.sax.saxutils import escape

from .stats import LengthHistogram, TermStats

WIDTH = 640.0
HEIGHT = 400.0
MARGIN_LEFT = 60.0
MARGIN_RIGHT = 20.0
MARGIN_TOP = 40.0
MARGIN_BOTTOM = 70.0

FEEDBACK_COLOR = "#3b6fb5"
OTHER_COLOR = "#c0504d"
BAR_COLORS = {
    "positive": "#3b6fb5",
    "neutral": "#8064a2",
    "negative": "#c0504d",
    "clarification": "#f79646",
    "other": "#9aa0a6",
}
DEFAULT_BAR_COLOR = "#4bacc6"


def _fmt(x: float) -> str:
    # Fixed two-decimal coordinates keep output byte-stable.
    return f"{x:.2f}"


def _header(title: str) -> list[str]:
    return [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_fmt(WIDTH)}" '
        f'height="{_fmt(HEIGHT)}" viewBox="0 0 {_fmt(WIDTH)} {_fmt(HEIGHT)}">',
        f'<rect width="{_fmt(WIDTH)}" height="{_fmt(HEIGHT)}" fill="white"/>',
        f'<text x="{_fmt(WIDTH / 2)}" y="24" text-anchor="middle" '
        f'font-family="sans-serif" font-size="16">{escape(title)}</text>',
    ]


def _axes(parts: list[str]) -> None:
    x0, y0 = MARGIN_LEFT, HEIGHT - MARGIN_BOTTOM
    x1, y1 = WIDTH - MARGIN_RIGHT, MARGIN_TOP
    parts.append(f'<line x1="{_fmt(x0)}" y1="{_fmt(y0)}" x2="{_fmt(x1)}" y2="{_fmt(y0)}" stroke="black"/>')
    parts.append(f'<line x1="{_fmt(x0)}" y1="{_fmt(y0)}" x2="{_fmt(x0)}" y2="{_fmt(y1)}" stroke="black"/>')


def render_bar_chart(items: list[tuple[str, float]], title: str, y_label: str = "%") -> str:
    """Vertical bars, one per (label, value) pair, in the given order."""
    if not items:
        raise ValueError("no data to chart")
    parts = _header(title)
    _axes(parts)
    plot_w = WIDTH - MARGIN_LEFT - MARGIN_RIGHT
    plot_h = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM
    top = max(max(v for _, v in items), 1e-9)
    slot = plot_w / len(items)
    bar_w = slot * 0.6
    baseline = HEIGHT - MARGIN_BOTTOM
    for i, (label, value) in enumerate(items):
        h = plot_h * (value / top)
        x = MARGIN_LEFT + slot * i + (slot - bar_w) / 2.0
        y = baseline - h
        color = BAR_COLORS.get(label, DEFAULT_BAR_COLOR)
        parts.append(
            f'<rect x="{_fmt(x)}" y="{_fmt(y)}" width="{_fmt(bar_w)}" height="{_fmt(h)}" fill="{color}"/>'
        )
        parts.append(
            f'<text x="{_fmt(x + bar_w / 2)}" y="{_fmt(y - 4)}" text-anchor="middle" '
            f'font-family="sans-serif" font-size="11">{_fmt(value)}</text>'
        )
        parts.append(
            f'<text x="{_fmt(x + bar_w / 2)}" y="{_fmt(baseline + 16)}" text-anchor="middle" '
            f'font-family="sans-serif" font-size="11">{escape(label)}</text>'
        )
    parts.append(
        f'<text x="16" y="{_fmt(MARGIN_TOP + plot_h / 2)}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="12" '
        f'transform="rotate(-90 16 {_fmt(MARGIN_TOP + plot_h / 2)})">{escape(y_label)}</text>'
    )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def render_length_histogram(hist: LengthHistogram, title: str = "Utterance lengths") -> str:
    """Paired bars per token length: feedback (blue) vs other (red)."""
    if not hist.bins:
        raise ValueError("no data to chart")
    parts = _header(title)
    _axes(parts)
    plot_w = WIDTH - MARGIN_LEFT - MARGIN_RIGHT
    plot_h = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM
    lengths = list(range(1, hist.max_length + 1))
    top = max(max(fb, ot) for fb, ot in hist.bins.values())
    top = max(top, 1)
    slot = plot_w / len(lengths)
    bar_w = slot * 0.4
    baseline = HEIGHT - MARGIN_BOTTOM
    for i, n in enumerate(lengths):
        fb, ot = hist.bins.get(n, (0, 0))
        x = MARGIN_LEFT + slot * i
        for j, (value, color) in enumerate(((fb, FEEDBACK_COLOR), (ot, OTHER_COLOR))):
            h = plot_h * (value / top)
            parts.append(
                f'<rect x="{_fmt(x + slot * 0.1 + j * bar_w)}" y="{_fmt(baseline - h)}" '
                f'width="{_fmt(bar_w)}" height="{_fmt(h)}" fill="{color}"/>'
            )
        label = f"{n}+" if n == hist.max_length else str(n)
        parts.append(
            f'<text x="{_fmt(x + slot / 2)}" y="{_fmt(baseline + 16)}" text-anchor="middle" '
            f'font-family="sans-serif" font-size="10">{escape(label)}</text>'
        )
    parts.append(
        f'<rect x="{_fmt(WIDTH - 180)}" y="{_fmt(MARGIN_TOP)}" width="12" height="12" fill="{FEEDBACK_COLOR}"/>'
        f'<text x="{_fmt(WIDTH - 162)}" y="{_fmt(MARGIN_TOP + 10)}" font-family="sans-serif" '
        f'font-size="11">feedback</text>'
    )
    parts.append(
        f'<rect x="{_fmt(WIDTH - 180)}" y="{_fmt(MARGIN_TOP + 18)}" width="12" height="12" fill="{OTHER_COLOR}"/>'
        f'<text x="{_fmt(WIDTH - 162)}" y="{_fmt(MARGIN_TOP + 28)}" font-family="sans-serif" '
        f'font-size="11">other</text>'
    )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def render_term_scatter(stats: list[TermStats], title: str = "Term comparison") -> str:
    """Scatter of per-term scaled f-scores, side a vs side b."""
    if not stats:
        raise ValueError("no data to chart")
    parts = _header(title)
    _axes(parts)
    plot_w = WIDTH - MARGIN_LEFT - MARGIN_RIGHT
    plot_h = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM
    top = max(max(t.fscore_a for t in stats), max(t.fscore_b for t in stats), 1e-9)
    baseline = HEIGHT - MARGIN_BOTTOM
    for t in stats:
        x = MARGIN_LEFT + plot_w * (t.fscore_a / top)
        y = baseline - plot_h * (t.fscore_b / top)
        parts.append(f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="3" fill="{FEEDBACK_COLOR}"/>')
        parts.append(
            f'<text x="{_fmt(x + 5)}" y="{_fmt(y - 3)}" font-family="sans-serif" '
            f'font-size="9">{escape(" ".join(t.term))}</text>'
        )
    parts.append(
        f'<text x="{_fmt(MARGIN_LEFT + plot_w / 2)}" y="{_fmt(HEIGHT - 20)}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="12">fscore_a</text>'
    )
    parts.append(
        f'<text x="16" y="{_fmt(MARGIN_TOP + plot_h / 2)}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="12" '
        f'transform="rotate(-90 16 {_fmt(MARGIN_TOP + plot_h / 2)})">fscore_b</text>'
    )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def write_svg(svg: str, path: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(svg)
