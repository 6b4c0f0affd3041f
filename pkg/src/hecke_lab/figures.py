"""Figure and CSV rendering for suite reports.

Each report gets a delimited data file alongside the JSON/markdown, and a
PNG figure when the suite produces a numeric series worth plotting.
Matplotlib is imported lazily so the exact-arithmetic paths stay light.
"""

from __future__ import annotations

import csv
from pathlib import Path

from .reports import VerificationReport


def _complex_parts(v):
    if isinstance(v, complex):
        return v.real, v.imag
    return float(v), 0.0


def write_csv(report: VerificationReport, path: Path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        if report.suite == "theorem2":
            w.writerow(["n", "residual", "lhs_re", "lhs_im", "main_re", "main_im",
                        "group", "sector"])
            for item, res in zip(report.witnesses, report.residuals):
                if "n" not in item:
                    continue
                lr, li = _complex_parts(item["lhs"])
                mr, mi = _complex_parts(item["main"])
                w.writerow([item["n"], res, lr, li, mr, mi,
                            item["group"], item["sector"]])
        elif report.residuals:
            w.writerow(["index", "residual"])
            for i, r in enumerate(report.residuals):
                w.writerow([i, r])
        else:
            w.writerow(["key", "value"])
            w.writerow(["status", report.status])
            for k, v in sorted(report.counts.items()):
                w.writerow([k, v])


def write_figure(report: VerificationReport, path: Path) -> bool:
    """Render the suite's figure; returns False when there is nothing to plot."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(6.0, 3.8))
    drew = False
    if report.suite == "theorem2":
        ns = [it["n"] for it in report.witnesses if "n" in it]
        rs = [float(r) for r in report.residuals]
        if ns and rs:
            ax.semilogy(ns[: len(rs)], rs, "o-", label="|average - main term|")
            main = abs(complex(next(it["main"] for it in report.witnesses if "n" in it)))
            frac = report.config.get("final_fraction", 0.05)
            ax.axhline(frac * main, color="tab:red", linestyle="--",
                       label=f"{frac:g} x |main term|")
            ax.set_xlabel("conductor exponent n")
            ax.set_ylabel("residual")
            ax.set_xticks(ns)
            ax.legend()
            drew = True
    elif report.residuals:
        vals = [float(r) for r in report.residuals]
        ax.semilogy(range(len(vals)), vals, ".", markersize=4)
        ax.set_xlabel("case index")
        ax.set_ylabel("error")
        drew = True
    elif report.counts:
        keys = sorted(report.counts)
        ax.bar(range(len(keys)), [report.counts[k] for k in keys], color="tab:blue")
        ax.set_xticks(range(len(keys)))
        ax.set_xticklabels(keys, rotation=20, ha="right", fontsize=8)
        drew = True
    if drew:
        ax.set_title(f"{report.suite}: {report.status}")
        fig.tight_layout()
        fig.savefig(path, dpi=120, metadata={"Software": "hecke-lab"})
    plt.close(fig)
    return drew


def render_report_files(report: VerificationReport, outdir: Path) -> list[Path]:
    outdir.mkdir(parents=True, exist_ok=True)
    written = []
    jpath = outdir / f"{report.suite}.json"
    jpath.write_bytes(report.to_bytes())
    written.append(jpath)
    mpath = outdir / f"{report.suite}.md"
    mpath.write_text(report.to_markdown())
    written.append(mpath)
    cpath = outdir / f"{report.suite}.csv"
    write_csv(report, cpath)
    written.append(cpath)
    fpath = outdir / f"{report.suite}.png"
    if write_figure(report, fpath):
        written.append(fpath)
    return written
