"""Figure rendering: convergence curves and approximation-ratio box plots.

Both renderers emit a hand-written SVG (textual, diffable, byte-deterministic)
plus a companion CSV holding every plotted number, so figures can be rebuilt
without an SVG parser.
"""

from __future__ import annotations

import csv
import io
import math
import os

import numpy as np

from .ansatz import CIRCUIT_NAMES
from .errors import ReportError
from .experiments import (
    RUNS_NAME,
    TRACE_DIR,
    SummaryStats,
    records_from_csv,
    run_id,
    summarize,
    trace_energies_from_csv,
)
from .vqe import RunRecord

_PALETTE = ("#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f")

_PANEL_W = 400
_PANEL_H = 280
_MARGIN_L = 56
_MARGIN_R = 14
_MARGIN_T = 30
_MARGIN_B = 58
_COLUMNS = 2


def _f(v: float) -> str:
    return f"{v:.2f}"


def _tick_label(v: float) -> str:
    return f"{round(v, 10):g}"


def _nice_ticks(lo: float, hi: float, target: int = 5) -> list[float]:
    if hi <= lo:
        return [lo]
    raw = (hi - lo) / target
    mag = 10.0 ** math.floor(math.log10(raw))
    step = 10.0 * mag
    for mult in (1.0, 2.0, 2.5, 5.0, 10.0):
        if raw <= mult * mag:
            step = mult * mag
            break
    first = math.ceil(lo / step - 1e-9) * step
    ticks = []
    t = first
    while t <= hi + 1e-9 * step:
        ticks.append(round(t, 12))
        t += step
    return ticks


class _Svg:
    def __init__(self, width: int, height: int):
        self.width = width
        self.height = height
        self._parts: list[str] = []

    def add(self, element: str) -> None:
        self._parts.append(element)

    def line(self, x1, y1, x2, y2, stroke="#000000", width=1.0, dash=None) -> None:
        dash_attr = f' stroke-dasharray="{dash}"' if dash else ""
        self.add(
            f'<line x1="{_f(x1)}" y1="{_f(y1)}" x2="{_f(x2)}" y2="{_f(y2)}" '
            f'stroke="{stroke}" stroke-width="{width:g}"{dash_attr}/>'
        )

    def polyline(self, points, stroke, width=1.2, dash=None) -> None:
        pts = " ".join(f"{_f(x)},{_f(y)}" for x, y in points)
        dash_attr = f' stroke-dasharray="{dash}"' if dash else ""
        self.add(
            f'<polyline points="{pts}" fill="none" stroke="{stroke}" '
            f'stroke-width="{width:g}"{dash_attr}/>'
        )

    def rect(self, x, y, w, h, fill="none", stroke="#000000", width=1.0) -> None:
        self.add(
            f'<rect x="{_f(x)}" y="{_f(y)}" width="{_f(w)}" height="{_f(h)}" '
            f'fill="{fill}" stroke="{stroke}" stroke-width="{width:g}"/>'
        )

    def text(self, x, y, s, size=11, anchor="middle", rotate=None, fill="#000000") -> None:
        transform = f' transform="rotate(-90 {_f(x)} {_f(y)})"' if rotate else ""
        self.add(
            f'<text x="{_f(x)}" y="{_f(y)}" font-size="{size}" '
            f'font-family="sans-serif" text-anchor="{anchor}" fill="{fill}"{transform}>{s}</text>'
        )

    def render(self) -> str:
        head = (
            '<?xml version="1.0" encoding="UTF-8"?>\n'
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{self.width}" '
            f'height="{self.height}" viewBox="0 0 {self.width} {self.height}">\n'
            f'<rect x="0" y="0" width="{self.width}" height="{self.height}" fill="#ffffff"/>\n'
        )
        return head + "\n".join(self._parts) + "\n</svg>\n"


class _Panel:
    """One framed plot area with linear x/y scales."""

    def __init__(self, svg: _Svg, ox: float, oy: float, title: str, x_range, y_range):
        self.svg = svg
        self.x0 = ox + _MARGIN_L
        self.y0 = oy + _MARGIN_T
        self.w = _PANEL_W - _MARGIN_L - _MARGIN_R
        self.h = _PANEL_H - _MARGIN_T - _MARGIN_B
        self.xlo, self.xhi = x_range
        self.ylo, self.yhi = y_range
        if self.xhi <= self.xlo:
            self.xhi = self.xlo + 1.0
        if self.yhi <= self.ylo:
            self.yhi = self.ylo + 1.0
        svg.rect(self.x0, self.y0, self.w, self.h, stroke="#000000")
        svg.text(ox + _PANEL_W / 2, oy + _MARGIN_T - 10, title, size=12)

    def px(self, x: float) -> float:
        return self.x0 + (x - self.xlo) / (self.xhi - self.xlo) * self.w

    def py(self, y: float) -> float:
        return self.y0 + self.h - (y - self.ylo) / (self.yhi - self.ylo) * self.h

    def axes(self, xlabel: str, ylabel: str, x_ticks=None, y_ticks=None) -> None:
        for t in x_ticks if x_ticks is not None else _nice_ticks(self.xlo, self.xhi):
            x = self.px(t)
            self.svg.line(x, self.y0 + self.h, x, self.y0 + self.h + 4)
            self.svg.text(x, self.y0 + self.h + 16, _tick_label(t), size=9)
        for t in y_ticks if y_ticks is not None else _nice_ticks(self.ylo, self.yhi):
            y = self.py(t)
            self.svg.line(self.x0 - 4, y, self.x0, y)
            self.svg.text(self.x0 - 7, y + 3, _tick_label(t), size=9, anchor="end")
        self.svg.text(self.x0 + self.w / 2, self.y0 + self.h + 30, xlabel, size=11)
        self.svg.text(self.x0 - 40, self.y0 + self.h / 2, ylabel, size=11, rotate=True)


def _load_records(runs_dir: str) -> list[RunRecord]:
    path = os.path.join(runs_dir, RUNS_NAME)
    if not os.path.exists(path):
        raise ReportError(f"no {RUNS_NAME} in {runs_dir}")
    with open(path, newline="") as fh:
        return records_from_csv(fh.read())


def _apply_filters(records, families, layers):
    if families is not None:
        for name in families:
            if name not in CIRCUIT_NAMES:
                raise ReportError(
                    f"unknown circuit {name!r} in filter, expected one of {CIRCUIT_NAMES}"
                )
        wanted = set(families)
        kept = [r for r in records if r.circuit_name in wanted]
        for name in sorted(wanted):
            if not any(r.circuit_name == name for r in kept):
                raise ReportError(f"empty group after filtering: circuit {name}")
        records = kept
    if layers is not None:
        wanted_layers = set(int(l) for l in layers)
        kept = [r for r in records if r.layers in wanted_layers]
        for l in sorted(wanted_layers):
            if not any(r.layers == l for r in kept):
                raise ReportError(f"empty group after filtering: layers {l}")
        records = kept
    if not records:
        raise ReportError("no records left after filtering")
    return records


def _circuit_order(names) -> list[str]:
    return [c for c in CIRCUIT_NAMES if c in set(names)]


def _grid_origin(index: int) -> tuple[float, float]:
    return (index % _COLUMNS) * _PANEL_W, (index // _COLUMNS) * _PANEL_H


def default_csv_path(out_svg: str) -> str:
    root, _ = os.path.splitext(out_svg)
    return root + ".csv"


# --- convergence ----------------------------------------------------------------


def render_convergence(
    runs_dir: str,
    out_svg: str,
    out_csv: str | None = None,
    families=None,
    layers=None,
) -> None:
    """Mean and median energy per evaluation index, one panel per circuit.

    Traces in a group end at different evaluation counts; shorter traces are
    padded by carrying their last energy forward before averaging.  The mean
    is drawn solid and the median dashed; the companion CSV holds both.
    """
    records = _apply_filters(_load_records(runs_dir), families, layers)
    grouped: dict[tuple[str, int], list[RunRecord]] = {}
    for record in records:
        grouped.setdefault((record.circuit_name, record.layers), []).append(record)
    series: dict[str, dict[int, tuple[np.ndarray, np.ndarray]]] = {}
    for (circuit, layer_count), rows in grouped.items():
        traces = [_load_trace(runs_dir, r) for r in rows]
        longest = max(t.size for t in traces)
        padded = np.empty((len(traces), longest))
        for i, t in enumerate(traces):
            padded[i, : t.size] = t
            padded[i, t.size :] = t[-1]
        series.setdefault(circuit, {})[layer_count] = (
            padded.mean(axis=0),
            np.median(padded, axis=0),
        )

    csv_text = _convergence_csv(series)
    circuits = _circuit_order(series)
    rows_of_panels = (len(circuits) + _COLUMNS - 1) // _COLUMNS
    svg = _Svg(_COLUMNS * _PANEL_W, max(1, rows_of_panels) * _PANEL_H)
    for idx, circuit in enumerate(circuits):
        ox, oy = _grid_origin(idx)
        layer_map = series[circuit]
        xmax = max(arr[0].size for arr in layer_map.values())
        ymin = min(min(arr[0].min(), arr[1].min()) for arr in layer_map.values())
        ymax = max(max(arr[0].max(), arr[1].max()) for arr in layer_map.values())
        pad = 0.05 * (ymax - ymin if ymax > ymin else 1.0)
        panel = _Panel(svg, ox, oy, circuit, (1.0, float(xmax)), (ymin - pad, ymax + pad))
        panel.axes("Evaluation Count", "Energy")
        for li, layer_count in enumerate(sorted(layer_map)):
            mean_arr, median_arr = layer_map[layer_count]
            color = _PALETTE[li % len(_PALETTE)]
            xs = np.arange(1, mean_arr.size + 1)
            panel.svg.polyline(
                [(panel.px(x), panel.py(y)) for x, y in zip(xs, mean_arr)], color
            )
            panel.svg.polyline(
                [(panel.px(x), panel.py(y)) for x, y in zip(xs, median_arr)],
                color,
                width=0.9,
                dash="4 3",
            )
            svg.text(
                ox + _PANEL_W - _MARGIN_R - 4,
                oy + _MARGIN_T + 12 + 12 * li,
                f"l={layer_count}",
                size=10,
                anchor="end",
                fill=color,
            )
    _write_outputs(svg, csv_text, out_svg, out_csv)


def _load_trace(runs_dir: str, record: RunRecord) -> np.ndarray:
    rid = run_id(record)
    path = os.path.join(runs_dir, TRACE_DIR, f"trace_{rid}.csv")
    if not os.path.exists(path):
        raise ReportError(f"missing trace file for run {rid}")
    with open(path, newline="") as fh:
        energies = trace_energies_from_csv(fh.read())
    if energies.size == 0:
        raise ReportError(f"empty trace file for run {rid}")
    return energies


def _convergence_csv(series) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["circuit", "layers", "eval_index", "mean_energy", "median_energy"])
    for circuit in _circuit_order(series):
        for layer_count in sorted(series[circuit]):
            mean_arr, median_arr = series[circuit][layer_count]
            for i in range(mean_arr.size):
                writer.writerow(
                    [
                        circuit,
                        layer_count,
                        i + 1,
                        repr(float(mean_arr[i])),
                        repr(float(median_arr[i])),
                    ]
                )
    return buf.getvalue()


# --- box plots --------------------------------------------------------------------


def render_boxplot(
    runs_dir: str,
    out_svg: str,
    out_csv: str | None = None,
    families=None,
    layers=None,
) -> None:
    """Approximation-ratio box per (circuit, layers) group, one panel per circuit.

    Whiskers span min..max; the box spans q1..q3 with the median marked; the
    group mean and population standard deviation are printed beneath each box
    to three decimals.
    """
    records = _apply_filters(_load_records(runs_dir), families, layers)
    stats = summarize(records)
    csv_text = _boxplot_csv(stats)
    by_circuit: dict[str, list[SummaryStats]] = {}
    for s in stats:
        by_circuit.setdefault(s.circuit_name, []).append(s)
    circuits = _circuit_order(by_circuit)
    rows_of_panels = (len(circuits) + _COLUMNS - 1) // _COLUMNS
    svg = _Svg(_COLUMNS * _PANEL_W, max(1, rows_of_panels) * _PANEL_H)
    for idx, circuit in enumerate(circuits):
        ox, oy = _grid_origin(idx)
        group = sorted(by_circuit[circuit], key=lambda s: s.layers)
        panel = _Panel(svg, ox, oy, circuit, (0.0, float(len(group))), (0.0, 1.0))
        panel.axes(
            "Layers",
            "Approximation Ratio",
            x_ticks=[],
            y_ticks=[0.0, 0.25, 0.5, 0.75, 1.0],
        )
        half_width = 0.18
        for i, s in enumerate(group):
            cx = i + 0.5
            x_left = panel.px(cx - half_width)
            x_right = panel.px(cx + half_width)
            x_mid = panel.px(cx)
            box_w = x_right - x_left
            # whiskers with caps
            panel.svg.line(x_mid, panel.py(s.min), x_mid, panel.py(s.q1))
            panel.svg.line(x_mid, panel.py(s.q3), x_mid, panel.py(s.max))
            for v in (s.min, s.max):
                panel.svg.line(
                    x_mid - box_w / 4, panel.py(v), x_mid + box_w / 4, panel.py(v)
                )
            height = panel.py(s.q1) - panel.py(s.q3)
            panel.svg.rect(x_left, panel.py(s.q3), box_w, height, fill="#c6dbef")
            panel.svg.line(x_left, panel.py(s.median), x_right, panel.py(s.median), width=1.5)
            panel.svg.text(x_mid, panel.y0 + panel.h + 16, f"l={s.layers}", size=9)
            panel.svg.text(
                x_mid,
                panel.y0 + panel.h + 28,
                f"{s.mean:.3f} / {s.std:.3f}",
                size=8,
            )
    _write_outputs(svg, csv_text, out_svg, out_csv)


def _boxplot_csv(stats: list[SummaryStats]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(
        ["circuit", "layers", "count", "mean", "std", "min", "q1", "median", "q3", "max"]
    )
    ordered = sorted(stats, key=lambda s: (_circuit_rank(s.circuit_name), s.layers))
    for s in ordered:
        writer.writerow(
            [
                s.circuit_name,
                s.layers,
                s.count,
                repr(float(s.mean)),
                repr(float(s.std)),
                repr(float(s.min)),
                repr(float(s.q1)),
                repr(float(s.median)),
                repr(float(s.q3)),
                repr(float(s.max)),
            ]
        )
    return buf.getvalue()


def _circuit_rank(name: str) -> int:
    return CIRCUIT_NAMES.index(name)


def _write_outputs(svg: _Svg, csv_text: str, out_svg: str, out_csv: str | None) -> None:
    if out_csv is None:
        out_csv = default_csv_path(out_svg)
    for path in (out_svg, out_csv):
        parent = os.path.dirname(os.path.abspath(path))
        os.makedirs(parent, exist_ok=True)
    with open(out_svg, "w", newline="") as fh:
        fh.write(svg.render())
    with open(out_csv, "w", newline="") as fh:
        fh.write(csv_text)
