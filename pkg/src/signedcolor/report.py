"""CSV tables and matplotlib figures for the ``bench`` and ``audit-claims`` commands."""

from __future__ import annotations

import csv
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

BENCH_FIELDS = ("family", "n", "m", "seed", "method", "ok", "seconds", "chi_fb")
AUDIT_FIELDS = ("claim", "kind", "signatures", "shapes", "attempts", "uncovered", "failures", "status")


def write_csv(path, fields, rows) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="") as fh:
        w = csv.DictWriter(fh, fieldnames=list(fields))
        w.writeheader()
        for row in rows:
            w.writerow({k: row.get(k, "") for k in fields})
    return path


def read_csv(path) -> list[dict]:
    with Path(path).open(newline="") as fh:
        return list(csv.DictReader(fh))


def bench_figure(rows, path) -> Path:
    """Runtime against n, one series per method."""
    fig, ax = plt.subplots(figsize=(6, 4))
    methods = sorted({r["method"] for r in rows})
    for method in methods:
        pts = [(int(r["n"]), float(r["seconds"])) for r in rows if r["method"] == method]
        ax.scatter([p[0] for p in pts], [p[1] for p in pts], s=12, label=method)
    ax.set_xlabel("vertices")
    ax.set_ylabel("seconds")
    ax.set_title("coloring time")
    if methods:
        ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return Path(path)


def audit_figure(rows, path) -> Path:
    """Template instantiations per configuration kind, failures stacked in red."""
    fig, ax = plt.subplots(figsize=(8, 4))
    kinds = [r["kind"] for r in rows]
    att = [int(r["attempts"]) for r in rows]
    bad = [int(r["failures"]) for r in rows]
    ax.bar(kinds, att, color="tab:blue", label="valid")
    ax.bar(kinds, bad, color="tab:red", label="invalid")
    ax.set_yscale("log")
    ax.set_ylabel("instantiations")
    ax.tick_params(axis="x", labelrotation=45)
    for lab in ax.get_xticklabels():
        lab.set_horizontalalignment("right")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return Path(path)


def bench_report(rows, outdir) -> tuple[Path, Path]:
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    table = write_csv(outdir / "bench.csv", BENCH_FIELDS, rows)
    return table, bench_figure(read_csv(table), outdir / "bench.png")


def audit_report(rows, outdir) -> tuple[Path, Path]:
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    table = write_csv(outdir / "audit.csv", AUDIT_FIELDS, rows)
    return table, audit_figure(read_csv(table), outdir / "audit.png")
