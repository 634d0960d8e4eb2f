"""Gantt rendering: deterministic SVG and ASCII views of a schedule.

The SVG is assembled from string templates rather than a plotting
library so identical schedules always produce identical bytes.
"""

from __future__ import annotations

import math
from xml.sax.saxutils import escape

from .errors import EmptySchedule
from .schedule import Schedule

# Fill colors cycled by job index.
PALETTE = (
    "#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f",
    "#edc948", "#b07aa1", "#ff9da7", "#9c755f", "#bab0ac",
    "#86bcb6", "#d37295", "#a0cbe8", "#ffbe7d", "#8cd17d",
    "#f1ce63", "#d4a6c8", "#fabfd2", "#d7b5a6", "#79706e",
)

_LANE_HEIGHT = 26
_LANE_GAP = 8
_MARGIN_LEFT = 64
_MARGIN_TOP = 34
_MARGIN_RIGHT = 24
_MARGIN_BOTTOM = 40
_CHART_WIDTH = 920


def _axis_step(span: float) -> float:
    """Smallest 1/2/5 * 10^k step giving at most 10 ticks."""
    if span <= 10:
        return 1.0
    magnitude = 10.0 ** math.floor(math.log10(span))
    for mult in (0.1, 0.2, 0.5, 1.0):
        if span / (magnitude * mult) <= 10:
            return magnitude * mult
    return magnitude


def _fmt(value: float) -> str:
    if value == int(value):
        return str(int(value))
    return f"{value:.2f}"


def render_gantt(sched: Schedule, format: str = "svg", scale: int = 1, title: str = "") -> bytes:
    """Render a schedule; ``scale`` divides times for display labels."""
    if not sched.entries:
        raise EmptySchedule("cannot render a schedule with no entries")
    if format == "svg":
        return _render_svg(sched, scale, title)
    if format == "ascii":
        return _render_ascii(sched, scale)
    raise ValueError(f"unknown format {format!r}, expected 'svg' or 'ascii'")


def _render_svg(sched: Schedule, scale: int, title: str) -> bytes:
    machines = sorted({e.machine for e in sched.entries})
    lanes = {mc: i for i, mc in enumerate(machines)}
    makespan = max(sched.makespan, 1)
    px = _CHART_WIDTH / makespan
    height = _MARGIN_TOP + len(machines) * (_LANE_HEIGHT + _LANE_GAP) + _MARGIN_BOTTOM
    width = _MARGIN_LEFT + _CHART_WIDTH + _MARGIN_RIGHT

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}" style="background:#ffffff">',
    ]
    if title:
        parts.append(
            f'<text x="{_MARGIN_LEFT}" y="20" font-family="sans-serif" font-size="14" '
            f'fill="#202020">{escape(title)}</text>'
        )
    for mc in machines:
        y = _MARGIN_TOP + lanes[mc] * (_LANE_HEIGHT + _LANE_GAP)
        parts.append(
            f'<text x="{_MARGIN_LEFT - 8}" y="{y + _LANE_HEIGHT - 8}" font-family="sans-serif" '
            f'font-size="12" fill="#202020" text-anchor="end">M{mc}</text>'
        )
        parts.append(
            f'<line x1="{_MARGIN_LEFT}" y1="{y + _LANE_HEIGHT}" '
            f'x2="{_MARGIN_LEFT + _CHART_WIDTH}" y2="{y + _LANE_HEIGHT}" '
            f'stroke="#d0d0d0" stroke-width="1"/>'
        )
    axis_y = _MARGIN_TOP + len(machines) * (_LANE_HEIGHT + _LANE_GAP) + 4
    step = _axis_step(makespan / scale)
    tick = 0.0
    while tick <= makespan / scale + 1e-9:
        x = _MARGIN_LEFT + tick * scale * px
        parts.append(
            f'<line x1="{x:.2f}" y1="{_MARGIN_TOP}" x2="{x:.2f}" y2="{axis_y}" '
            f'stroke="#eeeeee" stroke-width="1"/>'
        )
        parts.append(
            f'<text x="{x:.2f}" y="{axis_y + 16}" font-family="sans-serif" font-size="11" '
            f'fill="#404040" text-anchor="middle">{_fmt(tick)}</text>'
        )
        tick += step
    for e in sorted(sched.entries, key=lambda e: (e.machine, e.start, e.job, e.op)):
        if e.end == e.start:
            continue  # zero-duration ops have no area
        y = _MARGIN_TOP + lanes[e.machine] * (_LANE_HEIGHT + _LANE_GAP)
        x = _MARGIN_LEFT + e.start * px
        w = (e.end - e.start) * px
        color = PALETTE[e.job % len(PALETTE)]
        parts.append(
            f'<rect x="{x:.2f}" y="{y}" width="{w:.2f}" height="{_LANE_HEIGHT}" '
            f'fill="{color}" stroke="#303030" stroke-width="0.5">'
            f'<title>job {e.job} op {e.op}: [{_fmt(e.start / scale)}, {_fmt(e.end / scale)})</title>'
            f'</rect>'
        )
        if w >= 18:
            parts.append(
                f'<text x="{x + w / 2:.2f}" y="{y + _LANE_HEIGHT - 8}" font-family="sans-serif" '
                f'font-size="11" fill="#ffffff" text-anchor="middle">{e.job}</text>'
            )
    parts.append("</svg>")
    return ("\n".join(parts) + "\n").encode("utf-8")


_SYMBOLS = "0123456789abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ"


def _render_ascii(sched: Schedule, scale: int, width: int = 100) -> bytes:
    machines = sorted({e.machine for e in sched.entries})
    makespan = max(sched.makespan, 1)
    unit = max(1, -(-makespan // width))  # ceil division: time units per column
    columns = -(-makespan // unit)
    grid = {mc: ["."] * columns for mc in machines}
    for e in sched.entries:
        if e.end == e.start:
            continue
        symbol = _SYMBOLS[e.job % len(_SYMBOLS)]
        row = grid[e.machine]
        # column c samples instant c*unit; feasible lanes never collide
        first = -(-e.start // unit)
        last = -(-e.end // unit) - 1
        for c in range(first, min(last, columns - 1) + 1):
            row[c] = symbol
    label_width = max(len(f"M{mc}") for mc in machines)
    lines = [f"{'M' + str(mc):<{label_width}} |{''.join(grid[mc])}|" for mc in machines]
    lines.append(f"{'':<{label_width}} makespan={_fmt(sched.makespan / scale)} unit={unit}")
    return ("\n".join(lines) + "\n").encode("utf-8")
