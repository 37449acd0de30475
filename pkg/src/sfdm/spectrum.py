"""Exact subcarrier spectra, average ESD, OOBE ratio and tail coefficients.

The finite-block transform of every basis function is a sum of closed-form
segment integrals: a sinc term per linear-phase segment and a Fresnel-integral
difference per quadratic-phase segment. ESD/OOBE integrals are trapezoid sums
on a grid fine enough to resolve the 1/T-scale ripple of the spectra, with
the region beyond the integration edge appended analytically from the
high-frequency tail coefficient.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.special

from . import discontinuity, synthesis
from .errors import IndexOutOfRange, InvalidParam
from .params import WaveformParams
from .synthesis import PhaseSegment, SubcarrierWaveform


@dataclass(frozen=True)
class EsdResult:
    """Average energy spectral density sampled on a frequency grid."""

    freq_grid: np.ndarray
    esd: np.ndarray
    realization: str


@dataclass(frozen=True)
class TailCoefficient:
    """Normalized finite-band tail coefficient over F < |f| < F_max."""

    f_lower: float
    f_upper: float
    c_hat: float


def fresnel(u):
    """Complex Fresnel integral ``int_0^u exp(j pi v^2 / 2) dv``.

    Odd in ``u``; tends to ``(1+j)/2`` as ``u -> +inf``. Backed by the
    scipy/cephes rational approximations.
    """
    s, c = scipy.special.fresnel(np.asarray(u, dtype=float))
    out = c + 1j * s
    return out if out.shape else complex(out)


def _segment_ft(seg: PhaseSegment, f, t_start=None, t_end=None):
    """``int_{ta}^{tb} exp{j 2 pi (a0 + a1 t + a2 t^2 - f t)} dt`` for a
    (possibly clipped) phase segment; vectorized over ``f``."""
    f = np.asarray(f, dtype=float)
    ta = seg.t_start if t_start is None else t_start
    tb = seg.t_end if t_end is None else t_end
    beta = seg.a1 - f
    if seg.a2 == 0.0:
        width = tb - ta
        center = 0.5 * (ta + tb)
        return width * np.exp(2j * np.pi * (seg.a0 + beta * center)) \
            * np.sinc(beta * width)
    k = 2.0 * seg.a2  # continuous chirp rate K
    root = np.sqrt(2.0 * k)
    shift = beta / k
    phase = np.exp(2j * np.pi * seg.a0) * np.exp(-1j * np.pi * beta**2 / k)
    return phase * (fresnel(root * (tb + shift)) -
                    fresnel(root * (ta + shift))) / root


def subcarrier_spectrum(w: SubcarrierWaveform, f):
    """Finite-block transform ``G_m(f) = int_0^T g_m(t) e^{-j2pi f t} dt``
    (the CPP region, if present, is excluded)."""
    f = np.asarray(f, dtype=float)
    out = np.zeros(f.shape, dtype=complex)
    for seg in w.segments:
        if seg.t_start < 0.0:
            continue
        out += _segment_ft(seg, f)
    return out if out.shape else complex(out)


def spectrum_step(m: int, f, p: WaveformParams):
    """Exact transform of the stepped basis function (sinc sum)."""
    return subcarrier_spectrum(synthesis.build_step_subcarrier(m, p), f)


def spectrum_pc(m: int, f, p: WaveformParams):
    """Exact transform of the wrapped-chirp basis function (Fresnel sum)."""
    return subcarrier_spectrum(synthesis.build_pc_subcarrier(m, p), f)


def average_esd(realization: str, freq_grid, p: WaveformParams,
                waveforms: list[SubcarrierWaveform] | None = None) -> EsdResult:
    """``Phi(f) = (1/N) sum_m |G_m(f)|^2`` on the given grid.

    The c2 parameter has no effect: it enters the block only as a constant
    per-subcarrier phase.
    """
    freq_grid = np.asarray(freq_grid, dtype=float)
    if freq_grid.ndim != 1 or np.any(np.diff(freq_grid) <= 0):
        raise InvalidParam("freq_grid must be strictly increasing 1-D")
    if waveforms is None:
        waveforms = synthesis.subcarrier_waveforms(realization, p)
    esd = np.zeros_like(freq_grid)
    for w in waveforms:
        esd += np.abs(subcarrier_spectrum(w, freq_grid)) ** 2
    return EsdResult(freq_grid=freq_grid, esd=esd / p.n,
                     realization=realization)


def predicted_tail_coefficient(realization: str, p: WaveformParams) -> float:
    """Normalized coefficient of the two-sided 1/(pi^2 F) tail.

    1 for the stepped realization (endpoint truncation only); the wrapped
    realization adds ``(2/N) sum_m sum_r sin^2(pi (N r - m)/(2 alpha))``.
    """
    kind, _ = synthesis.parse_realization(realization) \
        if ":" in realization else (realization, None)
    if kind in ("step", "theta"):
        return 1.0
    if kind != "pc":
        raise InvalidParam(f"unknown realization {realization!r}")
    jump_total = sum(ev.jump_sq for m in range(p.n)
                     for ev in discontinuity.wrap_events(m, p))
    # jump_sq = 4 sin^2(...), so (2/N) sum sin^2 = jump_total / (2 N)
    return 1.0 + jump_total / (2.0 * p.n)


def frequency_grid(p: WaveformParams, f_lo: float, f_hi: float,
                   fine_span: float | None = None) -> np.ndarray:
    """Integration grid on [f_lo, f_hi].

    Step B/(16N) within ``fine_span`` of the nominal band (spectral features
    have scale 1/T = B/N), B/(8N) elsewhere; the far grid still oversamples
    the e^{j2pi f T} ripple of |G|^2 eightfold.
    """
    b, n = p.bandwidth, p.n
    if fine_span is None:
        fine_span = 5.0 * b
    fine = b / (16 * n)
    coarse = b / (8 * n)
    lo_f, hi_f = -fine_span, b + fine_span
    pieces = []
    if f_lo < lo_f:
        pieces.append(np.arange(f_lo, min(lo_f, f_hi), coarse))
    a = max(f_lo, lo_f)
    bnd = min(f_hi, hi_f)
    if a < bnd:
        pieces.append(np.arange(a, bnd, fine))
    if f_hi > hi_f:
        pieces.append(np.arange(max(f_lo, hi_f), f_hi, coarse))
    grid = np.unique(np.concatenate(pieces + [np.asarray([f_hi])]))
    return grid


def _integrate_esd(realization, p, regions, waveforms=None):
    """Trapezoid integral of the ESD over a list of (lo, hi) regions."""
    total = 0.0
    for lo, hi in regions:
        grid = frequency_grid(p, lo, hi)
        res = average_esd(realization, grid, p, waveforms)
        total += np.trapezoid(res.esd, grid)
    return total


def oobe_ratio(realization: str, p: WaveformParams,
               f_max: float | None = None) -> float:
    """Normalized OOBE ratio ``(1/T) int_{R \\ [0,B)} Phi df``.

    Integrates numerically over [-F_max, 0) and [B, F_max + B) and appends
    the analytic 1/F tail beyond both edges.
    """
    b = p.bandwidth
    if f_max is None:
        f_max = 50.0 * b
    if f_max < 10.0 * b:
        raise InvalidParam("f_max must be at least 10 B")
    c = predicted_tail_coefficient(realization, p)
    num = _integrate_esd(realization, p,
                         [(-f_max, 0.0), (b, f_max + b)])
    # one-sided analytic tails beyond each integration edge
    num += c / (2.0 * np.pi**2 * f_max) + c / (2.0 * np.pi**2 * (f_max + b))
    return num / p.block_duration


def tail_coefficient(realization: str, f_lower: float, f_upper: float,
                     p: WaveformParams) -> TailCoefficient:
    """Finite-band normalized tail coefficient
    ``pi^2 int_{F<|f|<F_max} Phi df / (1/F - 1/F_max)``."""
    b = p.bandwidth
    if not b <= f_lower < f_upper:
        raise InvalidParam(
            f"need B <= F < F_max, got F={f_lower}, F_max={f_upper}")
    num = _integrate_esd(realization, p,
                         [(-f_upper, -f_lower), (f_lower, f_upper)])
    c_hat = np.pi**2 * num / (1.0 / f_lower - 1.0 / f_upper)
    return TailCoefficient(f_lower=f_lower, f_upper=f_upper, c_hat=c_hat)


def total_energy(realization: str, p: WaveformParams,
                 f_max: float | None = None) -> float:
    """Two-sided ESD integral over [-F_max, F_max + B] plus analytic tails;
    equals the block duration T by Parseval."""
    b = p.bandwidth
    if f_max is None:
        f_max = 40.0 * b
    c = predicted_tail_coefficient(realization, p)
    total = _integrate_esd(realization, p, [(-f_max, f_max + b)])
    total += c / (2.0 * np.pi**2 * f_max) + c / (2.0 * np.pi**2 * (f_max + b))
    return total
