#!/usr/bin/env python3
"""Render convergence figures from a harness run.csv.

One solid line per method (worst principal angle vs iteration), dashed lines
for bound curves, log y-axis by default.  The script only reads the CSV; it
has no dependency on the library that produced it.

Usage: plot_run.py --csv PATH --out PATH [--linear] [--no-bounds]
"""

from __future__ import annotations

import argparse
import csv
from collections import defaultdict
from dataclasses import dataclass, field

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

EXPECTED_COLUMNS = (
    "kind", "label", "t", "dim", "theta_max", "theta_all", "tan_norm", "elapsed_s",
)

# exact zeros (saturated runs) cannot sit on a log axis
LOG_FLOOR = 1e-17

METHOD_LABELS = {
    "optimal": "optimal expansion",
    "block-krylov": "block Krylov",
    "rr": "Rayleigh-Ritz",
    "refined-rr": "refined Rayleigh-Ritz",
    "jia-rr": "residual Rayleigh-Ritz",
}


class SchemaMismatch(Exception):
    """The CSV header does not match the harness schema."""


@dataclass
class PlotSpec:
    csv_path: str
    out_path: str
    log_scale: bool = True
    include_bounds: bool = True
    label_map: dict = field(default_factory=lambda: dict(METHOD_LABELS))


def read_run(path):
    """Parse run.csv into observed and bound series keyed by label."""
    observed = defaultdict(list)  # label -> [(t, theta_max)]
    bounds = defaultdict(list)  # label -> [(t, tan_norm)]
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        header = tuple(reader.fieldnames or ())
        missing = [c for c in EXPECTED_COLUMNS if c not in header]
        if missing:
            raise SchemaMismatch(
                f"missing column(s) {', '.join(missing)} in header {header}"
            )
        for row in reader:
            t = int(row["t"])
            if row["kind"] == "observed":
                observed[row["label"]].append((t, float(row["theta_max"])))
            elif row["kind"] == "bound":
                bounds[row["label"]].append((t, float(row["tan_norm"])))
            else:
                raise SchemaMismatch(f"unknown row kind {row['kind']!r}")
    return observed, bounds


def render(spec: PlotSpec) -> str:
    observed, bounds = read_run(spec.csv_path)
    if not observed and not bounds:
        raise SchemaMismatch("CSV contains no data rows")

    fig, ax = plt.subplots(figsize=(7, 5))
    clamped = False
    for label in sorted(observed):
        series = sorted(observed[label])
        ts = [t for t, _ in series]
        ys = [y for _, y in series]
        if spec.log_scale:
            clamped |= any(y <= 0 for y in ys)
            ys = [max(y, LOG_FLOOR) for y in ys]
        ax.plot(ts, ys, label=spec.label_map.get(label, label))
    if spec.include_bounds:
        for label in sorted(bounds):
            series = sorted(bounds[label])
            ts = [t for t, _ in series]
            ys = [max(y, LOG_FLOOR) if spec.log_scale else y for _, y in series]
            ax.plot(ts, ys, linestyle="--", label=f"UB: {label}")

    if spec.log_scale:
        ax.set_yscale("log")
    ax.set_xlabel("iteration t")
    ax.set_ylabel(r"$\theta_{\max}$ (observed) / bound value")
    title = "Worst principal angle to the target per iteration"
    if clamped:
        title += "\n(exact zeros shown at 1e-17)"
    ax.set_title(title)
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(spec.out_path)
    plt.close(fig)
    return spec.out_path


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--csv", required=True, help="run.csv produced by the harness")
    parser.add_argument("--out", required=True, help="output image (format by extension)")
    parser.add_argument("--linear", action="store_true", help="linear y-axis instead of log")
    parser.add_argument("--no-bounds", action="store_true", help="omit bound curves")
    args = parser.parse_args(argv)
    spec = PlotSpec(
        csv_path=args.csv,
        out_path=args.out,
        log_scale=not args.linear,
        include_bounds=not args.no_bounds,
    )
    try:
        render(spec)
    except SchemaMismatch as exc:
        parser.exit(2, f"schema mismatch: {exc}\n")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
