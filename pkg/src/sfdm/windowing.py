"""Raised-cosine edge windowing baseline.

The taper is a sum of three complex exponentials
(1/2 - e^{j2pi mu t}/4 - e^{-j2pi mu t}/4 with mu = B/(2 rho)), so the
windowed subcarrier transform is still a finite sum of the closed-form
segment integrals used for the unwindowed spectra, evaluated at shifted
frequencies. No oversampling or generic quadrature is needed.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import discontinuity, spectrum, synthesis
from .errors import IndexOutOfRange, InvalidParam, OutOfDomain
from .params import WaveformParams
from .spectrum import _segment_ft
from .synthesis import SubcarrierWaveform


@dataclass(frozen=True)
class EdgeWindow:
    """Raised-cosine edge taper over one block.

    ``rho`` is the edge length in sampling intervals; ``rho = 0`` is the
    identity window.
    """

    rho: float
    params: WaveformParams

    def __post_init__(self):
        if not 0.0 <= self.rho <= self.params.n / 2:
            raise InvalidParam(f"rho must lie in [0, N/2], got {self.rho}")

    @property
    def edge_duration(self) -> float:
        return self.rho / self.params.bandwidth

    def value(self, t):
        """Window value at time t in [0, T)."""
        p = self.params
        t = np.asarray(t, dtype=float)
        scalar = t.ndim == 0
        tt = np.atleast_1d(t)
        if np.any(tt < 0.0) or np.any(tt >= p.block_duration):
            raise OutOfDomain("window argument outside [0, T)")
        out = np.ones_like(tt)
        if self.rho > 0.0:
            edge = self.edge_duration
            left = tt < edge
            right = tt >= p.block_duration - edge
            out[left] = 0.5 * (1.0 - np.cos(np.pi * tt[left] / edge))
            out[right] = 0.5 * (1.0 - np.cos(
                np.pi * (p.block_duration - tt[right]) / edge))
        return float(out[0]) if scalar else out


def window_value(w: EdgeWindow, t):
    return w.value(t)


def window_sample_evm(w: EdgeWindow) -> float:
    """Sample-distortion EVM of the windowed block:
    ``EVM_win^2 = (1/N) sum_n |w(n/B) - 1|^2``."""
    p = w.params
    samples = w.value(np.arange(p.n) / p.bandwidth)
    return float(np.sqrt(np.sum(np.abs(samples - 1.0) ** 2) / p.n))


def windowed_subcarrier_spectrum(wav: SubcarrierWaveform, w: EdgeWindow, f):
    """Exact transform of ``w(t) g_m(t)`` over the data block.

    Splits each phase segment at the taper boundaries and expands the cosine
    branches into frequency-shifted copies of the segment integral.
    """
    p = w.params
    f = np.asarray(f, dtype=float)
    if w.rho == 0.0:
        return spectrum.subcarrier_spectrum(wav, f)
    edge = w.edge_duration
    T = p.block_duration
    mu = p.bandwidth / (2.0 * w.rho)  # cosine branch frequency, Hz
    # constant phase of the right-taper exponentials: e^{+-j 2 pi mu T}
    rot = np.exp(2j * np.pi * mu * T)
    out = np.zeros(f.shape, dtype=complex)
    for seg in wav.segments:
        if seg.t_start < 0.0:
            continue
        cuts = sorted({seg.t_start, seg.t_end} |
                      {c for c in (edge, T - edge)
                       if seg.t_start < c < seg.t_end})
        for ta, tb in zip(cuts[:-1], cuts[1:]):
            mid = 0.5 * (ta + tb)
            if mid < edge:  # left taper: 1/2 - cos(pi t / edge)/2
                out += 0.5 * _segment_ft(seg, f, ta, tb)
                out -= 0.25 * _segment_ft(seg, f - mu, ta, tb)
                out -= 0.25 * _segment_ft(seg, f + mu, ta, tb)
            elif mid >= T - edge:  # right taper: cos(pi (T-t)/edge)
                out += 0.5 * _segment_ft(seg, f, ta, tb)
                out -= 0.25 * rot * _segment_ft(seg, f + mu, ta, tb)
                out -= 0.25 * np.conj(rot) * _segment_ft(seg, f - mu, ta, tb)
            else:
                out += _segment_ft(seg, f, ta, tb)
    return out if out.shape else complex(out)


def windowed_esd(realization: str, w: EdgeWindow, freq_grid,
                 p: WaveformParams,
                 waveforms: list[SubcarrierWaveform] | None = None):
    """Average ESD of the windowed block on the given grid."""
    freq_grid = np.asarray(freq_grid, dtype=float)
    if waveforms is None:
        waveforms = synthesis.subcarrier_waveforms(realization, p)
    esd = np.zeros_like(freq_grid)
    for wav in waveforms:
        esd += np.abs(windowed_subcarrier_spectrum(wav, w, freq_grid)) ** 2
    return esd / p.n


def windowed_tail_coefficient(m: int, w: EdgeWindow,
                              p: WaveformParams) -> float:
    """Per-subcarrier tail coefficient of the windowed waveform:
    ``|w(0+)|^2 + |w(T-)|^2 + sum_r |w(t_r)|^2 |dg_r|^2``.

    For rho > 0 the endpoint terms vanish (the taper starts at zero); each
    internal jump is scaled by the window value at its wrap instant.
    """
    if not 0 <= m < p.n:
        raise IndexOutOfRange(f"subcarrier index {m} outside 0..{p.n - 1}")
    endpoints = 2.0 if w.rho == 0.0 else 0.0
    jumps = sum(float(w.value(ev.t)) ** 2 * ev.jump_sq
                for ev in discontinuity.wrap_events(m, p))
    return endpoints + jumps


def _windowed_two_sided_coeff(realization: str, w: EdgeWindow,
                              p: WaveformParams) -> float:
    """Normalized coefficient of the two-sided 1/(pi^2 F) ESD tail of the
    windowed block (1 recovers the unwindowed stepped value)."""
    kind = realization.split(":", 1)[0]
    if kind == "pc":
        total = sum(windowed_tail_coefficient(m, w, p) for m in range(p.n))
    else:
        total = p.n * (2.0 if w.rho == 0.0 else 0.0)
    return total / (2.0 * p.n)


def windowed_oobe(realization: str, w: EdgeWindow, p: WaveformParams,
                  band: str = "full", f_max: float | None = None) -> float:
    """OOBE ratio of the windowed block.

    ``band="full"`` integrates R \\ [0, B); ``band="far_out"`` integrates
    f/B < -0.5 and f/B > 1.5. The region beyond the integration edges is
    appended analytically from the windowed tail coefficient.
    """
    b = p.bandwidth
    if f_max is None:
        f_max = 40.0 * b
    if band == "full":
        regions = [(-f_max, 0.0), (b, f_max + b)]
    elif band == "far_out":
        regions = [(-f_max, -0.5 * b), (1.5 * b, f_max + 1.5 * b)]
    else:
        raise InvalidParam(f"unknown band {band!r}")
    waveforms = synthesis.subcarrier_waveforms(realization, p)
    total = 0.0
    for lo, hi in regions:
        grid = spectrum.frequency_grid(p, lo, hi)
        total += np.trapezoid(windowed_esd(realization, w, grid, p,
                                           waveforms), grid)
    c = _windowed_two_sided_coeff(realization, w, p)
    left_edge, right_edge = abs(regions[0][0]), regions[1][1]
    total += c / (2.0 * np.pi**2 * left_edge)
    total += c / (2.0 * np.pi**2 * right_edge)
    return total / p.block_duration
