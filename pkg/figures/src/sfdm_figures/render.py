"""One rendering function per figure.

Each function takes the data directory and output directory, loads the
documented CSVs, and writes a single PNG. Expected input files (all produced
by the sfdm CLI):

    figure 1: synth_pc.csv, synth_step.csv        (sfdm synth)
    figure 2: tail_alpha0.5.csv, tail_alpha0.8.csv (sfdm tail)
    figure 3: oobe_sweep.csv                      (sfdm oobe-sweep)
    figure 4: evm_sweep.csv                       (sfdm evm-sweep)
    figure 5: evm_mc_dmax0.005.csv, evm_mc_dmax0.01.csv (sfdm evm-mc)
    figure 6: window_tradeoff.csv                 (sfdm window-tradeoff)
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

from .csvio import load_csv

STYLE = {"pc": dict(color="tab:red", label="PC"),
         "step": dict(color="tab:blue", label="SFDM")}


def _save(fig, out_dir, name) -> Path:
    out = Path(out_dir) / name
    out.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(out, dpi=150, bbox_inches="tight")
    plt.close(fig)
    return out


def render_fig1(data_dir, out_dir) -> Path:
    """Continuous-time trajectories of both realizations."""
    data = {r: load_csv(Path(data_dir) / f"synth_{r}.csv", "synth")
            for r in ("pc", "step")}
    fig, (ax_f, ax_re) = plt.subplots(2, 1, figsize=(7, 5), sharex=True)
    for r, d in data.items():
        d.require("t", "re", "inst_freq")
        ax_f.plot(d.table.floats("t"), d.table.floats("inst_freq"),
                  lw=1.0, **STYLE[r])
        ax_re.plot(d.table.floats("t"), d.table.floats("re"),
                   lw=1.0, **STYLE[r])
    ax_f.set_ylabel("instantaneous frequency / B")
    ax_f.legend(loc="upper right")
    ax_re.set_ylabel("Re s(t)")
    ax_re.set_xlabel("t B")
    alpha = data["pc"].meta.get("alpha", "?")
    ax_f.set_title(f"Continuous-time realizations (alpha = {alpha})")
    return _save(fig, out_dir, "fig1_trajectories.png")


def render_fig2(data_dir, out_dir) -> Path:
    """Finite-band tail coefficient vs band edge, with predicted levels."""
    files = [("tail_alpha0.5.csv", "alpha = 0.5"),
             ("tail_alpha0.8.csv", "alpha = 0.8")]
    fig, axes = plt.subplots(1, 2, figsize=(9, 3.6), sharey=True)
    for ax, (name, title) in zip(axes, files):
        d = load_csv(Path(data_dir) / name, "tail")
        d.require("F_over_B", "chat_pc", "chat_step", "chat_pc_pred",
                  "chat_step_pred")
        f = d.table.floats("F_over_B")
        for r in ("pc", "step"):
            ax.plot(f, d.table.floats(f"chat_{r}"), marker="o", ms=3,
                    **STYLE[r])
            ax.axhline(d.table.floats(f"chat_{r}_pred")[0],
                       color=STYLE[r]["color"], ls="--", lw=0.8)
        ax.set_xscale("log")
        ax.set_xlabel("F / B")
        ax.set_title(title)
    axes[0].set_ylabel("tail coefficient")
    axes[0].legend()
    return _save(fig, out_dir, "fig2_tail_coefficient.png")


def render_fig3(data_dir, out_dir) -> Path:
    """Out-of-band energy ratio versus the normalized chirp rate."""
    d = load_csv(Path(data_dir) / "oobe_sweep.csv", "oobe-sweep")
    d.require("alpha", "oobe_pc", "oobe_step")
    fig, ax = plt.subplots(figsize=(6, 4))
    alpha = d.table.floats("alpha")
    for r in ("pc", "step"):
        ax.plot(alpha, d.table.floats(f"oobe_{r}"), marker=".", **STYLE[r])
    ax.set_yscale("log")
    ax.set_xlabel("alpha")
    ax.set_ylabel("OOBE ratio")
    ax.legend()
    return _save(fig, out_dir, "fig3_oobe_vs_alpha.png")


def render_fig4(data_dir, out_dir) -> Path:
    """Receiver EVM across the fractional-delay sweep."""
    d = load_csv(Path(data_dir) / "evm_sweep.csv", "evm-sweep")
    d.require("epsilon", "evm_pc", "evm_step")
    fig, ax = plt.subplots(figsize=(6.5, 4))
    eps = d.table.floats("epsilon")
    for r in ("pc", "step"):
        ax.plot(eps, d.table.floats(f"evm_{r}"), lw=1.0, **STYLE[r])
    ax.set_yscale("log")
    ax.set_xlabel("fractional delay epsilon")
    ax.set_ylabel("EVM")
    ax.legend()
    return _save(fig, out_dir, "fig4_evm_sweep.png")


def render_fig5(data_dir, out_dir) -> Path:
    """EVM distribution box plot with 99th-percentile markers."""
    files = ["evm_mc_dmax0.005.csv", "evm_mc_dmax0.01.csv"]
    fig, ax = plt.subplots(figsize=(7, 4))
    series, labels, p99s = [], [], []
    for name in files:
        d = load_csv(Path(data_dir) / name, "evm-mc")
        d.require("trial", "evm_pc", "evm_step")
        d.require("realization", "p99", summary=True)
        dmax = d.meta.get("delta_max", "?")
        by_real = dict(zip(d.summary.columns["realization"],
                           d.summary.floats("p99")))
        for r in ("pc", "step"):
            series.append(d.table.floats(f"evm_{r}"))
            labels.append(f"{STYLE[r]['label']}\ndmax={dmax}")
            p99s.append(by_real[r])
    ax.boxplot(series, tick_labels=labels, whis=(1, 99), showfliers=False)
    ax.plot(range(1, len(p99s) + 1), p99s, "v", color="k", ms=7,
            label="99th percentile")
    ax.set_yscale("log")
    ax.set_ylabel("EVM")
    ax.legend(loc="upper left")
    return _save(fig, out_dir, "fig5_evm_distribution.png")


def render_fig6(data_dir, out_dir) -> Path:
    """Windowed out-of-band energy against sample distortion."""
    d = load_csv(Path(data_dir) / "window_tradeoff.csv", "window-tradeoff")
    d.require("rho", "evm_win_db", "oobe_full_pc", "oobe_full_step",
              "oobe_far_pc", "oobe_far_step")
    rho = d.table.floats("rho")
    fig, (ax_o, ax_e) = plt.subplots(2, 1, figsize=(6.5, 6), sharex=True)
    for r in ("pc", "step"):
        style = dict(STYLE[r])
        label = style.pop("label")
        ax_o.plot(rho, d.table.floats(f"oobe_full_{r}"), marker="o", ms=4,
                  label=f"{label} full", **style)
        ax_o.plot(rho, d.table.floats(f"oobe_far_{r}"), marker="s", ms=4,
                  ls=":", label=f"{label} far-out", **style)
    ax_o.set_yscale("log")
    ax_o.set_ylabel("OOBE ratio")
    ax_o.legend(fontsize=8)
    # the identity window (rho = 0) has no finite distortion level in dB
    finite = [(x, y) for x, y in zip(rho, d.table.floats("evm_win_db"))
              if y != float("-inf")]
    ax_e.plot(*zip(*finite), marker="o", ms=4, color="k")
    ax_e.set_xlabel("edge length rho (sampling intervals)")
    ax_e.set_ylabel("sample distortion (dB)")
    return _save(fig, out_dir, "fig6_window_tradeoff.png")


RENDERERS = {1: render_fig1, 2: render_fig2, 3: render_fig3,
             4: render_fig4, 5: render_fig5, 6: render_fig6}
