"""CSV, SVG and PGM emission for benchmark reports.

All renderers build their output deterministically from the report values, so
re-running emission on the same report is byte-identical.  Plots are
self-contained SVG with an embedded legend; no plotting package is involved.
"""

from __future__ import annotations

import math
import os

import numpy as np

from .experiment import PsnrReport

__all__ = ["emit_reports", "write_pgm"]

# viridis endpoints and midpoint, enough for a readable value ramp
_RAMP = ((68, 1, 84), (33, 145, 140), (253, 231, 37))
_LINE_COLORS = (
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf",
)


def _write_text(path: str, text: str) -> str:
    try:
        with open(path, "w", encoding="ascii", newline="\n") as f:
            f.write(text)
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc}") from exc
    return path


def _fmt(value: float) -> str:
    return "inf" if math.isinf(value) else f"{value:.6f}"


def _ramp_color(t: float) -> str:
    t = min(max(t, 0.0), 1.0)
    if t <= 0.5:
        lo, hi, u = _RAMP[0], _RAMP[1], t * 2.0
    else:
        lo, hi, u = _RAMP[1], _RAMP[2], (t - 0.5) * 2.0
    rgb = [round(a + (b - a) * u) for a, b in zip(lo, hi)]
    return "#{:02x}{:02x}{:02x}".format(*rgb)


def _finite_range(values) -> tuple[float, float]:
    finite = [v for v in values if math.isfinite(v)]
    if not finite:
        return 0.0, 1.0
    lo, hi = min(finite), max(finite)
    if lo == hi:
        hi = lo + 1.0
    return lo, hi


def _psnr_table_csv(report: PsnrReport) -> str:
    lines = ["variant,d,psnr_db"]
    for name in report.variant_names:
        for d in report.dims:
            lines.append(f"{name},{d},{_fmt(report.aggregate_db[name][d])}")
    return "\n".join(lines) + "\n"


def _heatmap_svg(report: PsnrReport) -> str:
    cell_w, cell_h = 64, 26
    left, top = 130, 46
    n_rows = len(report.variant_names)
    n_cols = len(report.dims)
    width = left + n_cols * cell_w + 40
    height = top + n_rows * cell_h + 70
    values = [
        report.aggregate_db[n][d] for n in report.variant_names for d in report.dims
    ]
    lo, hi = _finite_range(values)

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'font-family="monospace" font-size="11">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
        f'<text x="{left}" y="18" font-size="13">aggregate PSNR (dB) by variant and '
        "feature dimension</text>",
    ]
    for j, d in enumerate(report.dims):
        out.append(
            f'<text x="{left + j * cell_w + cell_w // 2}" y="{top - 8}" '
            f'text-anchor="middle">{d}</text>'
        )
    for i, name in enumerate(report.variant_names):
        y = top + i * cell_h
        out.append(
            f'<text x="{left - 8}" y="{y + cell_h - 8}" text-anchor="end">{name}</text>'
        )
        for j, d in enumerate(report.dims):
            v = report.aggregate_db[name][d]
            t = 1.0 if math.isinf(v) else (v - lo) / (hi - lo)
            x = left + j * cell_w
            out.append(
                f'<rect x="{x}" y="{y}" width="{cell_w}" height="{cell_h}" '
                f'fill="{_ramp_color(t)}" stroke="white"/>'
            )
            text_fill = "white" if t < 0.55 else "black"
            out.append(
                f'<text x="{x + cell_w // 2}" y="{y + cell_h - 8}" '
                f'text-anchor="middle" fill="{text_fill}" font-size="9">{v:.1f}</text>'
            )
    # legend: gradient bar with end labels
    ly = top + n_rows * cell_h + 24
    steps = 48
    bar_w = 240
    for s in range(steps):
        out.append(
            f'<rect x="{left + s * bar_w // steps}" y="{ly}" '
            f'width="{bar_w // steps + 1}" height="12" '
            f'fill="{_ramp_color(s / (steps - 1))}"/>'
        )
    out.append(f'<text x="{left}" y="{ly + 26}" text-anchor="middle">{lo:.1f}</text>')
    out.append(
        f'<text x="{left + bar_w}" y="{ly + 26}" text-anchor="middle">{hi:.1f}</text>'
    )
    out.append(f'<text x="{left + bar_w + 16}" y="{ly + 11}">dB</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _full_length_variants(report: PsnrReport) -> list[str]:
    return [
        n
        for n in report.variant_names
        if len(report.per_image_db[n][report.dims[0]]) == report.query_count
    ]


def _per_image_csv(report: PsnrReport, d: int, order: np.ndarray, names) -> str:
    lines = ["sorted_rank,image_id," + ",".join(names)]
    for rank, img in enumerate(order, start=1):
        vals = ",".join(_fmt(report.per_image_db[n][d][img]) for n in names)
        lines.append(f"{rank},{img},{vals}")
    return "\n".join(lines) + "\n"


def _per_image_svg(report: PsnrReport, d: int, order: np.ndarray, names) -> str:
    width, height = 680, 400
    left, right, top, bottom = 56, 16, 40, 36
    plot_w = width - left - right
    plot_h = height - top - bottom
    n = len(order)
    values = [
        report.per_image_db[name][d][img] for name in names for img in order
    ]
    lo, hi = _finite_range(values)
    pad = 0.05 * (hi - lo)
    lo, hi = lo - pad, hi + pad

    def sx(rank: int) -> float:
        return left + plot_w * rank / max(n - 1, 1)

    def sy(v: float) -> float:
        v = hi if math.isinf(v) else v  # off-scale points pinned to the top
        return top + plot_h * (1.0 - (v - lo) / (hi - lo))

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'font-family="monospace" font-size="11">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
        f'<text x="{left}" y="18" font-size="13">per-image PSNR (dB) at d={d}, '
        f"sorted by {report.reference_variant()}</text>",
        f'<rect x="{left}" y="{top}" width="{plot_w}" height="{plot_h}" '
        f'fill="none" stroke="#888"/>',
    ]
    for k in range(5):
        v = lo + (hi - lo) * k / 4
        y = sy(v)
        out.append(
            f'<line x1="{left}" y1="{y:.1f}" x2="{left + plot_w}" y2="{y:.1f}" '
            f'stroke="#ddd"/>'
        )
        out.append(
            f'<text x="{left - 6}" y="{y + 4:.1f}" text-anchor="end">{v:.1f}</text>'
        )
    out.append(
        f'<text x="{left + plot_w // 2}" y="{height - 8}" text-anchor="middle">'
        "query images, sorted rank</text>"
    )
    for vi, name in enumerate(names):
        color = _LINE_COLORS[vi % len(_LINE_COLORS)]
        pts = " ".join(
            f"{sx(r):.1f},{sy(report.per_image_db[name][d][img]):.1f}"
            for r, img in enumerate(order)
        )
        out.append(f'<polyline points="{pts}" fill="none" stroke="{color}"/>')
        lx = left + 10
        ly = top + 16 + 14 * vi
        out.append(
            f'<line x1="{lx}" y1="{ly - 4}" x2="{lx + 18}" y2="{ly - 4}" '
            f'stroke="{color}" stroke-width="2"/>'
        )
        out.append(f'<text x="{lx + 24}" y="{ly}">{name}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def emit_reports(report: PsnrReport, out_dir) -> list[str]:
    """Write psnr_table.csv, psnr_heatmap.svg and per-d per-image CSV/SVG files.

    Per-image files cover the variants run on the full query set, rows ordered
    by ascending reference-variant (PCA) PSNR; image_id is the 0-based query
    index.  Returns the written paths.
    """
    os.makedirs(out_dir, exist_ok=True)
    paths = [
        _write_text(os.path.join(out_dir, "psnr_table.csv"), _psnr_table_csv(report)),
        _write_text(os.path.join(out_dir, "psnr_heatmap.svg"), _heatmap_svg(report)),
    ]
    names = _full_length_variants(report)
    for d in report.dims:
        order = report.sort_order(d)
        paths.append(
            _write_text(
                os.path.join(out_dir, f"per_image_d{d}.csv"),
                _per_image_csv(report, d, order, names),
            )
        )
        paths.append(
            _write_text(
                os.path.join(out_dir, f"per_image_d{d}.svg"),
                _per_image_svg(report, d, order, names),
            )
        )
    return paths


def write_pgm(path, image: np.ndarray) -> str:
    """Write a 2-d uint8 array as a binary PGM (P5, maxval 255)."""
    img = np.asarray(image)
    if img.ndim != 2 or img.dtype != np.uint8:
        raise ValueError(f"expected a 2-d uint8 image, got {img.dtype} {img.shape}")
    header = f"P5\n{img.shape[1]} {img.shape[0]}\n255\n".encode("ascii")
    try:
        with open(path, "wb") as f:
            f.write(header + img.tobytes())
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc}") from exc
    return str(path)
