"""Render per-suite diagnostic figures next to the delimited report output.

One PNG per suite, p on the x axis and the suite's headline quantity on the
y axis (deficit ratios, identity residuals, sum-free density, Wiener norm).
Figures are a convenience view of the CSV/JSON artifacts, which remain the
canonical hand-off.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

from .report import VerificationReport  # noqa: E402


def _scatter(ax, xs, ys, **kw):
    ax.scatter(xs, ys, s=14, alpha=0.8, **kw)


def _pick(report, meta_key):
    xs, ys = [], []
    for c in report.cases:
        v = c.metadata.get(meta_key)
        if v is not None and c.p > 0:
            xs.append(c.p)
            ys.append(v)
    return xs, ys


def _render_lemma31(report, ax):
    for cls, color in ((1, "tab:blue"), (3, "tab:red")):
        xs = [c.p for c in report.cases if c.metadata.get("residue_class") == cls]
        ys = [c.metadata["ratio_sqrt_p"] for c in report.cases
              if c.metadata.get("residue_class") == cls]
        _scatter(ax, xs, ys, label=f"p = {cls} mod 4", color=color)
    ax.axhline(0.0, color="black", lw=0.8)
    ax.set_ylabel("interval deficit / sqrt(p)")
    ax.legend(fontsize=8)


def _render_prop41(report, ax):
    xs, ys = _pick(report, "ratio_lower_sum_log2sq_over_p")
    _scatter(ax, xs, ys, color="tab:green")
    ax.set_yscale("log")
    ax.set_ylabel("sum delta^2 * log2(p)^2 / p")


def _render_thm32(report, ax):
    xs, ys = _pick(report, "charsum_over_psi_sqrt_p")
    _scatter(ax, xs, ys, color="tab:purple")
    ax.set_ylabel("|sum rho over A| / (psi sqrt(p))")


def _render_thm43(report, ax):
    xs, ys = _pick(report, "l2_over_psi_sq_p")
    _scatter(ax, xs, ys, color="tab:orange")
    if ys and max(ys) > 0:
        ax.set_yscale("log")
    ax.set_ylabel("folded L2 stat / (psi^2 p)")


def _render_sf_gamma(report, ax):
    xs, ys = _pick(report, "ratio")
    _scatter(ax, xs, ys, color="tab:brown")
    ax.axhline(1 / 3, color="black", lw=0.8, ls="--", label="1/3")
    ax.set_ylabel("sf(Gamma) / |Gamma|")
    ax.legend(fontsize=8)


def _render_wiener(report, ax):
    xs = [c.p for c in report.cases if c.case_id.startswith("qnorm")]
    ys = [c.metadata.get("rw") for c in report.cases if c.case_id.startswith("qnorm")]
    _scatter(ax, xs, ys, color="tab:cyan")
    ax.axhline(1.0, color="black", lw=0.8, ls="--", label="1")
    ax.set_ylabel("real-part Wiener norm of Q")
    ax.legend(fontsize=8)


def _render_default(report, ax):
    xs = [c.p for c in report.cases if c.p > 0]
    ys = [max(c.abs_err, 1e-18) for c in report.cases if c.p > 0]
    _scatter(ax, xs, ys, color="tab:gray")
    ax.set_yscale("log")
    ax.set_ylabel("absolute residual")


_RENDERERS = {
    "lemma31": _render_lemma31,
    "prop41": _render_prop41,
    "thm32": _render_thm32,
    "thm43": _render_thm43,
    "sf_gamma": _render_sf_gamma,
    "wiener": _render_wiener,
}


def render_report_figures(reports: list[VerificationReport] | VerificationReport,
                          outdir: str | Path) -> list[Path]:
    """One fig_<suite>.png per report, written into outdir."""
    if isinstance(reports, VerificationReport):
        reports = [reports]
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    written = []
    for rep in reports:
        fig, ax = plt.subplots(figsize=(6.0, 3.6))
        _RENDERERS.get(rep.suite, _render_default)(rep, ax)
        summary = rep.summary
        ax.set_xlabel("p")
        ax.set_title(f"{rep.suite}: {summary['passed']}/{summary['total']} cases pass",
                     fontsize=10)
        fig.tight_layout()
        path = outdir / f"fig_{rep.suite}.png"
        fig.savefig(path, dpi=150)
        plt.close(fig)
        written.append(path)
    return written
