"""Log-log runtime scaling figure from a bench CSV."""

from __future__ import annotations

import sys

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from .schema import BENCH_COLUMNS, SchemaError, read_rows


def fit_slope(ns, values) -> float:
    """Least-squares slope on log-log axes (same fit the bench reports)."""
    xs = np.log(np.asarray(ns, dtype=float))
    ys = np.log(np.maximum(np.asarray(values, dtype=float), 1e-9))
    return float(np.polyfit(xs, ys, 1)[0])


def plot_scaling(csv_path: str, out_path: str) -> float | None:
    """Wall time vs n on log-log axes with the fitted slope annotated."""
    rows = read_rows(csv_path, BENCH_COLUMNS)
    by_decoder: dict[str, list[dict]] = {}
    for row in rows:
        by_decoder.setdefault(row["decoder"], []).append(row)

    fig, ax = plt.subplots(figsize=(5.4, 4.0), dpi=160)
    slope = None
    for name, points in sorted(by_decoder.items()):
        points = sorted(points, key=lambda r: int(r["n"]))
        ns = [int(r["n"]) for r in points]
        secs = [float(r["seconds"]) for r in points]
        if len(points) >= 2:
            slope = fit_slope(ns, secs)
            label = f"{name} (slope {slope:.3f})"
        else:
            label = name
        ax.plot(ns, [max(s, 1e-9) for s in secs], marker="s", label=label)
    ax.set_xscale("log")
    ax.set_yscale("log")
    ax.set_xlabel("qubits n")
    ax.set_ylabel("seconds per decode")
    ax.grid(True, which="both", linestyle=":", linewidth=0.5)
    ax.legend(fontsize=8)
    if slope is not None:
        ax.set_title(f"fitted log-log slope {slope:.6f}", fontsize=9)
    fig.tight_layout()
    if out_path.endswith(".svg"):
        fig.savefig(out_path, metadata={"Date": None})
    else:
        fig.savefig(out_path)
    plt.close(fig)
    return slope


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    if len(argv) != 2:
        print("usage: plot-scaling INPUT.csv OUTPUT.(png|svg)", file=sys.stderr)
        return 2
    try:
        plot_scaling(argv[0], argv[1])
    except (SchemaError, FileNotFoundError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(f"wrote {argv[1]}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
