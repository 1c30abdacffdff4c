"""Scaling measurements over a growing tower of wreath products.

The family starts at the symmetric group of degree five acted on by a
swap of two copies, degree ten, and doubles the degree at each level by
wrapping the previous group in another two-block wreath product.  Each
level times the construction of the control subgroup; the results go to
a CSV table and a log-log plot with a fitted slope.
"""

import csv
import os
import time

import numpy as np

from . import constructions as cons
from .control import control_subgroup
from .group import Group


def scaling_family(levels: int) -> list[Group]:
    """Wreath tower members of degree 10 * 2**i for i below levels."""
    if levels < 1:
        raise ValueError("levels must be at least 1")
    out = []
    K = cons.wreath(cons.sym(5), cons.cyclic(2))
    for _ in range(levels):
        out.append(K)
        K = cons.wreath(K, cons.cyclic(2))
    return out


def run_scaling(levels: int = 6, seed: int = 0) -> list[dict]:
    rows = []
    for K in scaling_family(levels):
        t = time.perf_counter()
        res = control_subgroup(K, seed=seed)
        dt = time.perf_counter() - t
        rows.append({
            "degree": K.degree,
            "seconds": dt,
            "group_order": str(K.order()),
            "control_order": str(res.M.order()),
            "conclusion": res.conclusion,
        })
    return rows


def fit_slope(rows: list[dict]) -> float:
    """Least-squares slope of log time against log degree."""
    pts = [(r["degree"], r["seconds"]) for r in rows if r["seconds"] > 0]
    if len(pts) < 2:
        raise ValueError("need at least two timed rows to fit a slope")
    x = np.log([p[0] for p in pts])
    y = np.log([p[1] for p in pts])
    return float(np.polyfit(x, y, 1)[0])


def write_csv(rows: list[dict], path: str) -> None:
    fields = ["degree", "seconds", "group_order", "control_order",
              "conclusion"]
    with open(path, "w", newline="", encoding="utf-8") as f:
        w = csv.DictWriter(f, fieldnames=fields)
        w.writeheader()
        for r in rows:
            w.writerow({**r, "seconds": f"{r['seconds']:.6f}"})


def write_plot(rows: list[dict], slope: float, path: str) -> None:
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    deg = [r["degree"] for r in rows]
    sec = [max(r["seconds"], 1e-6) for r in rows]
    fig, ax = plt.subplots(figsize=(6, 4.5))
    ax.loglog(deg, sec, "o-", color="tab:blue")
    ax.set_xlabel("degree")
    ax.set_ylabel("seconds")
    ax.set_title("control subgroup construction time")
    ax.grid(True, which="both", alpha=0.3)
    ax.annotate(f"fitted slope {slope:.2f}",
                xy=(0.05, 0.92), xycoords="axes fraction")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def scaling_report(out_dir: str, levels: int = 6, seed: int = 0) -> dict:
    """Run the family and drop scaling.csv and scaling.png in out_dir."""
    os.makedirs(out_dir, exist_ok=True)
    rows = run_scaling(levels, seed)
    slope = fit_slope(rows)
    csv_path = os.path.join(out_dir, "scaling.csv")
    png_path = os.path.join(out_dir, "scaling.png")
    write_csv(rows, csv_path)
    write_plot(rows, slope, png_path)
    return {"rows": rows, "slope": slope, "csv": csv_path, "png": png_path}
