"""Logical-error-rate curves from a sweep CSV."""

from __future__ import annotations

import sys

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from .schema import SWEEP_COLUMNS, SchemaError, read_rows

FLOOR = 1e-12  # keeps zero rates representable on the log axis


def plot_threshold(csv_path: str, out_path: str) -> None:
    """One curve per L (rate vs p, CI bands), bounds dashed, log y."""
    rows = read_rows(csv_path, SWEEP_COLUMNS)
    data: dict[int, list[dict]] = {}
    bounds: dict[tuple[int, str], list[dict]] = {}
    for row in rows:
        L = int(row["L"])
        if row["decoder"].startswith("bound:"):
            bounds.setdefault((L, row["decoder"]), []).append(row)
        else:
            data.setdefault(L, []).append(row)
    if not data and not bounds:
        raise SchemaError(f"{csv_path}: no plottable rows")

    fig, ax = plt.subplots(figsize=(6.0, 4.2), dpi=160)
    colors = plt.rcParams["axes.prop_cycle"].by_key()["color"]
    for i, L in enumerate(sorted(data)):
        points = sorted(data[L], key=lambda r: float(r["p"]))
        ps = [float(r["p"]) for r in points]
        rates = [max(float(r["rate"]), FLOOR) for r in points]
        lo = [max(float(r["ci_lo"]), FLOOR) for r in points]
        hi = [max(float(r["ci_hi"]), FLOOR) for r in points]
        color = colors[i % len(colors)]
        ax.plot(ps, rates, marker="o", color=color, label=f"L = {L}")
        ax.fill_between(ps, lo, hi, color=color, alpha=0.2, linewidth=0)
    for (L, kind), points in sorted(bounds.items()):
        points = sorted(points, key=lambda r: float(r["p"]))
        ps = [float(r["p"]) for r in points]
        rates = [max(float(r["rate"]), FLOOR) for r in points]
        ax.plot(ps, rates, linestyle="--", linewidth=1.0,
                label=f"{kind.split(':', 1)[1]} L = {L}")
    ax.set_yscale("log")
    ax.set_xlabel("physical error rate p")
    ax.set_ylabel("logical error rate")
    ax.grid(True, which="both", linestyle=":", linewidth=0.5)
    ax.legend(fontsize=8)
    fig.tight_layout()
    _save(fig, out_path)
    plt.close(fig)


def _save(fig, out_path: str) -> None:
    if out_path.endswith(".svg"):
        fig.savefig(out_path, metadata={"Date": None})
    else:
        fig.savefig(out_path)


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    if len(argv) != 2:
        print("usage: plot-threshold INPUT.csv OUTPUT.(png|svg)", file=sys.stderr)
        return 2
    try:
        plot_threshold(argv[0], argv[1])
    except (SchemaError, FileNotFoundError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(f"wrote {argv[1]}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
