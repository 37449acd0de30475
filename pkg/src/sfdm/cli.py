"""Experiment orchestration CLI.

Every figure-level experiment is a subcommand that writes a CSV with a
parameter comment row and a header row. Float columns use 17 significant
digits so downstream diffs are byte-stable for a fixed seed.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from . import (channel, discontinuity, params as params_mod, receiver,
               spectrum, synthesis, windowing)
from .channel import ChannelPath
from .errors import SfdmError
from .params import WaveformParams


def _fmt(value) -> str:
    if isinstance(value, (float, np.floating)):
        return f"{value:.17g}"
    return str(value)


def write_csv(path, meta: dict, columns: list[str], rows,
              summary: tuple[list[str], list] | None = None) -> None:
    """Write a CSV with a leading parameter comment and optional summary table."""
    lines = ["# sfdm " + " ".join(f"{k}={_fmt(v)}" for k, v in meta.items())]
    lines.append(",".join(columns))
    for row in rows:
        lines.append(",".join(_fmt(v) for v in row))
    if summary is not None:
        sum_cols, sum_rows = summary
        lines.append("")
        lines.append(",".join(sum_cols))
        for row in sum_rows:
            lines.append(",".join(_fmt(v) for v in row))
    Path(path).write_text("\n".join(lines) + "\n")


def _params_from_args(args) -> WaveformParams:
    if getattr(args, "config", None):
        base = params_mod.load_config(args.config)
        n = args.n if args.n is not None else base.n
        bandwidth = args.bandwidth if args.bandwidth is not None else base.bandwidth
        c2 = args.c2 if args.c2 is not None else base.c2
        if args.alpha is not None:
            return params_mod.derive(n, bandwidth, c2=c2, alpha=args.alpha)
        return params_mod.derive(n, bandwidth, c1=base.c1, c2=c2)
    n = args.n if args.n is not None else 64
    bandwidth = args.bandwidth if args.bandwidth is not None else 1.0
    c2 = args.c2 if args.c2 is not None else 0.0
    alpha = args.alpha if args.alpha is not None else 0.8
    return params_mod.derive(n, bandwidth, c2=c2, alpha=alpha)


def _add_common(sub):
    sub.add_argument("--n", type=int, default=None)
    sub.add_argument("--alpha", type=float, default=None)
    sub.add_argument("--bandwidth", type=float, default=None)
    sub.add_argument("--c2", type=float, default=None)
    sub.add_argument("--config", type=str, default=None,
                     help="key=value parameter file")
    sub.add_argument("--threads", type=int, default=0,
                     help="worker count (0 = auto); computation is "
                          "vectorized, the flag is accepted for "
                          "compatibility")


def _meta(args, p: WaveformParams, **extra) -> dict:
    meta = {"n": p.n, "bandwidth": p.bandwidth, "alpha": p.alpha, "c2": p.c2}
    meta.update(extra)
    return meta


# ---------------------------------------------------------------- subcommands

def _cmd_synth(args) -> int:
    p = _params_from_args(args)
    kind, theta = synthesis.parse_realization(args.realization)
    wavs = synthesis.subcarrier_waveforms(args.realization, p)
    if args.data.startswith("impulse:"):
        x = np.zeros(p.n, dtype=complex)
        x[int(args.data.split(":", 1)[1])] = 1.0
    elif args.data.startswith("random:"):
        rng = np.random.default_rng(int(args.data.split(":", 1)[1]))
        x = (rng.standard_normal(p.n) + 1j * rng.standard_normal(p.n)) \
            / np.sqrt(2.0)
    elif args.data == "ones":
        x = np.ones(p.n, dtype=complex)
    else:
        raise SfdmError(f"unknown data spec {args.data!r}")
    t = np.arange(p.n * args.oversample) / (p.bandwidth * args.oversample)
    coeff = x * np.exp(2j * np.pi * p.c2 * np.arange(p.n) ** 2) / np.sqrt(p.n)
    s = np.zeros(t.shape, dtype=complex)
    num = np.zeros(t.shape, dtype=complex)
    for m, w in enumerate(wavs):
        g = coeff[m] * w.value(t)
        s += g
        num += g * w.inst_freq(t)
    with np.errstate(invalid="ignore", divide="ignore"):
        inst = np.real(num / s)
    inst[~np.isfinite(inst)] = 0.0
    rows = zip(t, s.real, s.imag, inst)
    write_csv(args.out, _meta(args, p, realization=args.realization,
                              data=args.data, oversample=args.oversample),
              ["t", "re", "im", "inst_freq"], rows)
    return 0


def _cmd_jumps(args) -> int:
    p = _params_from_args(args)
    rows = [(ev.m, ev.r, ev.t, ev.jump_sq)
            for m in range(p.n) for ev in discontinuity.wrap_events(m, p)]
    write_csv(args.out, _meta(args, p), ["m", "r", "t", "jump_sq"], rows)
    return 0


def _cmd_spectrum(args) -> int:
    p = _params_from_args(args)
    b = p.bandwidth
    grid = spectrum.frequency_grid(p, args.f_lo * b, args.f_hi * b)
    esd = {r: spectrum.average_esd(r, grid, p).esd for r in ("pc", "step")}
    fb = grid / b
    rows = zip(fb, esd["pc"], esd["step"],
               fb**2 * esd["pc"], fb**2 * esd["step"])
    write_csv(args.out, _meta(args, p, f_lo=args.f_lo, f_hi=args.f_hi),
              ["f_over_B", "esd_pc", "esd_step", "comp_pc", "comp_step"],
              rows)
    return 0


def _cmd_oobe_sweep(args) -> int:
    alphas = np.arange(args.alpha_min,
                       args.alpha_max + 0.5 * args.alpha_step,
                       args.alpha_step)
    n = args.n if args.n is not None else 64
    bandwidth = args.bandwidth if args.bandwidth is not None else 1.0
    rows = []
    for a in alphas:
        p = params_mod.derive(n, bandwidth, alpha=float(a),
                              c2=args.c2 or 0.0)
        rows.append((a,
                     spectrum.oobe_ratio("pc", p, args.f_max * bandwidth),
                     spectrum.oobe_ratio("step", p, args.f_max * bandwidth)))
    meta = {"n": n, "bandwidth": bandwidth, "alpha_min": args.alpha_min,
            "alpha_max": args.alpha_max, "alpha_step": args.alpha_step,
            "f_max": args.f_max}
    write_csv(args.out, meta, ["alpha", "oobe_pc", "oobe_step"], rows)
    return 0


def _cmd_tail(args) -> int:
    p = _params_from_args(args)
    b = p.bandwidth
    f_upper = args.f_max * b
    f_values = np.geomspace(args.f_min * b, f_upper / 2.0, args.points)
    pred = {r: spectrum.predicted_tail_coefficient(r, p)
            for r in ("pc", "step")}
    rows = []
    for f in f_values:
        rows.append((f / b,
                     spectrum.tail_coefficient("pc", f, f_upper, p).c_hat,
                     spectrum.tail_coefficient("step", f, f_upper, p).c_hat,
                     pred["pc"], pred["step"]))
    write_csv(args.out,
              _meta(args, p, f_min=args.f_min, f_max=args.f_max),
              ["F_over_B", "chat_pc", "chat_step", "chat_pc_pred",
               "chat_step_pred"], rows)
    return 0


def _parse_paths(spec: str, bandwidth: float) -> list[ChannelPath]:
    paths = []
    for part in spec.split(";"):
        h_re, h_im, tau, nu = (float(v) for v in part.split(","))
        paths.append(ChannelPath(gain=h_re + 1j * h_im, delay=tau,
                                 doppler=nu))
    return paths


def _cmd_channel_nmse(args) -> int:
    p = _params_from_args(args)
    paths = _parse_paths(args.paths, p.bandwidth)
    t_cpp = args.tcpp / p.bandwidth
    h_pc = channel.sampled_channel_matrix("pc", paths, p, t_cpp).entries
    h_step = channel.sampled_channel_matrix("step", paths, p, t_cpp).entries
    nmse = channel.channel_nmse(paths, p, t_cpp)
    print(f"nmse={nmse:.17g} delta_h_fro={np.linalg.norm(h_step - h_pc):.17g}")
    return 0


def _cmd_evm_sweep(args) -> int:
    p = _params_from_args(args)
    eps = np.arange(args.points) / args.points
    res = receiver.single_path_sweep(p, d=args.d, eps_grid=eps,
                                     delta_eps=args.delta_eps,
                                     snr_db=args.snr_db)
    rows = zip(res["eps"], res["evm_pc"], res["evm_step"])
    write_csv(args.out,
              _meta(args, p, d=args.d, delta_eps=args.delta_eps,
                    snr_db=args.snr_db, points=args.points),
              ["epsilon", "evm_pc", "evm_step"], rows)
    return 0


def _cmd_evm_mc(args) -> int:
    p = _params_from_args(args)
    res = receiver.multipath_ensemble(p, n_trials=args.trials,
                                      delta_max=args.delta_max,
                                      snr_db=args.snr_db, seed=args.seed)
    rows = [(i, res["evm_pc"][i], res["evm_step"][i])
            for i in range(args.trials)]
    summary_rows = [(r, res["summary"][r]["median"], res["summary"][r]["p99"],
                     res["summary"][r]["max"]) for r in ("pc", "step")]
    write_csv(args.out,
              _meta(args, p, delta_max=args.delta_max, snr_db=args.snr_db,
                    trials=args.trials, seed=args.seed),
              ["trial", "evm_pc", "evm_step"], rows,
              summary=(["realization", "median", "p99", "max"], summary_rows))
    return 0


def _cmd_window_tradeoff(args) -> int:
    p = _params_from_args(args)
    rhos = [float(v) for v in args.rhos.split(",")]
    f_max = args.fmax * p.bandwidth
    rows = []
    for rho in rhos:
        w = windowing.EdgeWindow(rho=rho, params=p)
        evm = windowing.window_sample_evm(w)
        evm_db = 20.0 * np.log10(evm) if evm > 0 else float("-inf")
        rows.append((
            rho, evm_db,
            windowing.windowed_oobe("pc", w, p, "full", f_max),
            windowing.windowed_oobe("step", w, p, "full", f_max),
            windowing.windowed_oobe("pc", w, p, "far_out", f_max),
            windowing.windowed_oobe("step", w, p, "far_out", f_max)))
    write_csv(args.out, _meta(args, p, rhos=args.rhos, fmax=args.fmax),
              ["rho", "evm_win_db", "oobe_full_pc", "oobe_full_step",
               "oobe_far_pc", "oobe_far_step"], rows)
    return 0


def _cmd_selftest(args) -> int:
    """Quick invariant suite; exits nonzero on any failure."""
    failures = []

    def check(name, ok):
        print(f"{'PASS' if ok else 'FAIL'} {name}")
        if not ok:
            failures.append(name)

    p = params_mod.derive(64, alpha=0.8)
    rng = np.random.default_rng(7)
    x = rng.standard_normal(p.n) + 1j * rng.standard_normal(p.n)
    s = synthesis.idaft_modulate(x, p)
    check("idaft unitary",
          abs(np.linalg.norm(s) - np.linalg.norm(x)) < 1e-10)
    t_n = np.arange(p.n) / p.bandwidth
    ok = True
    for m in (0, 13, 63):
        ref = np.exp(2j * np.pi * (p.c1 * np.arange(p.n) ** 2
                                   + m * np.arange(p.n) / p.n))
        for r in ("pc", "step"):
            g = synthesis.build_subcarrier(m, r, p).value(t_n)
            ok &= bool(np.max(np.abs(g - ref)) < 1e-9)
    check("sampling equivalence", ok)
    check("continuity criterion",
          discontinuity.is_continuous(params_mod.derive(64, alpha=0.5))
          and not discontinuity.is_continuous(p))
    ev = discontinuity.wrap_events(63, p)
    check("jump closed form",
          abs(ev[0].jump_sq - (2.0 + np.sqrt(2.0))) < 1e-10)
    pred = spectrum.predicted_tail_coefficient("pc", p)
    check("tail prediction > 1", pred > 1.0)
    grid = spectrum.frequency_grid(p, -3.0, 4.0)
    esd = spectrum.average_esd("pc", grid, p).esd
    check("esd nonnegative", bool(np.all(esd >= 0.0)))
    paths = [ChannelPath(1.0, 3.0 / p.bandwidth)]
    check("integer-delay equivalence",
          channel.channel_nmse(paths, p, 8.0 / p.bandwidth) < 1e-20)
    w = windowing.EdgeWindow(rho=2.0, params=p)
    check("window sample distortion",
          abs(windowing.window_sample_evm(w) ** 2 - 1.5 / 64.0) < 1e-12)
    return 1 if failures else 0


# --------------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sfdm",
        description="Continuous-time AFDM waveform experiments "
                    "(wrapped-chirp PC vs stepped SFDM)")
    subs = parser.add_subparsers(dest="command", required=True)

    sp = subs.add_parser("synth", help="sample a transmitted block")
    _add_common(sp)
    sp.add_argument("--realization", default="step",
                    help="pc | step | theta:<v>")
    sp.add_argument("--data", default="ones",
                    help="impulse:<m> | random:<seed> | ones")
    sp.add_argument("--oversample", type=int, default=16)
    sp.add_argument("--out", default="synth.csv")
    sp.set_defaults(func=_cmd_synth)

    sp = subs.add_parser("jumps", help="list internal wrapping events")
    _add_common(sp)
    sp.add_argument("--out", default="jumps.csv")
    sp.set_defaults(func=_cmd_jumps)

    sp = subs.add_parser("spectrum", help="average ESD of both realizations")
    _add_common(sp)
    sp.add_argument("--f-lo", type=float, default=-3.0,
                    help="lower edge in units of B")
    sp.add_argument("--f-hi", type=float, default=4.0)
    sp.add_argument("--out", default="spectrum.csv")
    sp.set_defaults(func=_cmd_spectrum)

    sp = subs.add_parser("oobe-sweep", help="OOBE ratio vs alpha")
    _add_common(sp)
    sp.add_argument("--alpha-min", type=float, default=0.05)
    sp.add_argument("--alpha-max", type=float, default=1.5)
    sp.add_argument("--alpha-step", type=float, default=0.025)
    sp.add_argument("--f-max", type=float, default=50.0,
                    help="integration edge in units of B")
    sp.add_argument("--out", default="oobe_sweep.csv")
    sp.set_defaults(func=_cmd_oobe_sweep)

    sp = subs.add_parser("tail", help="finite-band tail coefficient vs F")
    _add_common(sp)
    sp.add_argument("--f-min", type=float, default=2.0)
    sp.add_argument("--f-max", type=float, default=200.0)
    sp.add_argument("--points", type=int, default=10)
    sp.add_argument("--out", default="tail.csv")
    sp.set_defaults(func=_cmd_tail)

    sp = subs.add_parser("channel-nmse",
                         help="matrix mismatch for an explicit channel")
    _add_common(sp)
    sp.add_argument("--paths", required=True,
                    help='"h_re,h_im,tau,nu;..." per path')
    sp.add_argument("--tcpp", type=float, default=8.0,
                    help="prefix length in sampling intervals")
    sp.set_defaults(func=_cmd_channel_nmse)

    sp = subs.add_parser("evm-sweep", help="single-path fractional-delay EVM")
    _add_common(sp)
    sp.add_argument("--d", type=int, default=4)
    sp.add_argument("--delta-eps", type=float, default=0.005)
    sp.add_argument("--snr-db", type=float, default=35.0)
    sp.add_argument("--points", type=int, default=512)
    sp.add_argument("--out", default="evm_sweep.csv")
    sp.set_defaults(func=_cmd_evm_sweep)

    sp = subs.add_parser("evm-mc", help="random three-path EVM ensemble")
    _add_common(sp)
    sp.add_argument("--delta-max", type=float, default=0.005)
    sp.add_argument("--snr-db", type=float, default=35.0)
    sp.add_argument("--trials", type=int, default=2000)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--out", default="evm_mc.csv")
    sp.set_defaults(func=_cmd_evm_mc)

    sp = subs.add_parser("window-tradeoff",
                         help="windowed OOBE vs sample distortion")
    _add_common(sp)
    sp.add_argument("--rhos", default="0,1,2,3,4,5,6,8,10,12,16,20")
    sp.add_argument("--fmax", type=float, default=40.0,
                    help="integration edge in units of B")
    sp.add_argument("--out", default="window_tradeoff.csv")
    sp.set_defaults(func=_cmd_window_tradeoff)

    sp = subs.add_parser("selftest", help="run the built-in invariant suite")
    _add_common(sp)
    sp.set_defaults(func=_cmd_selftest)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SfdmError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
