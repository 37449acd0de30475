"""Continuous-time doubly selective propagation and Nyquist-rate sampling.

The sampled channel matrix evaluates the CPP-extended basis waveforms exactly
at the (generally off-grid) delayed receiver times; no interpolation is
involved. Doppler enters as ``exp(j 2 pi nu t_n)`` per receiver sample, as
the sampled input-output relation prescribes.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import synthesis
from .errors import DelayExceedsCpp, DimensionMismatch
from .params import WaveformParams
from .synthesis import SubcarrierWaveform


@dataclass(frozen=True)
class ChannelPath:
    """One propagation path: complex gain, delay (s, >= 0), Doppler (Hz)."""

    gain: complex
    delay: float
    doppler: float = 0.0


@dataclass(frozen=True)
class SampledChannelMatrix:
    """N x N sampled input-output matrix for one realization."""

    entries: np.ndarray
    realization: str


def _check_paths(paths, t_cpp):
    for path in paths:
        if path.delay < 0:
            raise DelayExceedsCpp(f"negative delay {path.delay}")
        if not path.delay < t_cpp:
            raise DelayExceedsCpp(
                f"delay {path.delay} not covered by prefix {t_cpp}")


def sampled_channel_matrix(realization: str, paths: list[ChannelPath],
                           p: WaveformParams, t_cpp: float,
                           waveforms: list[SubcarrierWaveform] | None = None
                           ) -> SampledChannelMatrix:
    """``H[n, m] = sum_l h_l e^{j2pi nu_l t_n} u_m_tx(t_n - tau_l)``.

    Prebuilt CPP-extended ``waveforms`` may be supplied to amortize
    construction across many channel draws.
    """
    _check_paths(paths, t_cpp)
    if waveforms is None:
        waveforms = synthesis.subcarrier_waveforms(realization, p, t_cpp)
    t_n = np.arange(p.n) / p.bandwidth
    scale = np.exp(2j * np.pi * p.c2 * np.arange(p.n) ** 2) / np.sqrt(p.n)
    h = np.zeros((p.n, p.n), dtype=complex)
    for path in paths:
        rot = path.gain * np.exp(2j * np.pi * path.doppler * t_n)
        t_rx = t_n - path.delay
        for m, w in enumerate(waveforms):
            h[:, m] += rot * w.value(t_rx)
    h *= scale[None, :]
    return SampledChannelMatrix(entries=h, realization=realization)


def channel_nmse(paths: list[ChannelPath], p: WaveformParams,
                 t_cpp: float) -> float:
    """Normalized mismatch ``||H_step - H_pc||_F^2 / ||H_pc||_F^2``.

    Also asserts the unitary-invariance identity
    ``||A^H dH||_F = ||dH||_F`` as an internal consistency check.
    """
    h_pc = sampled_channel_matrix("pc", paths, p, t_cpp).entries
    h_step = sampled_channel_matrix("step", paths, p, t_cpp).entries
    dh = h_step - h_pc
    dh_norm_sq = np.linalg.norm(dh) ** 2
    dg_norm_sq = np.linalg.norm(synthesis.idaft_matrix(p).conj().T @ dh) ** 2
    assert abs(dg_norm_sq - dh_norm_sq) <= 1e-9 * max(1.0, dh_norm_sq)
    return dh_norm_sq / np.linalg.norm(h_pc) ** 2


def daft_demod(r, p: WaveformParams) -> np.ndarray:
    """Apply the conjugate-transpose modulation matrix (standard demodulation)."""
    r = np.asarray(r, dtype=complex)
    if r.shape != (p.n,):
        raise DimensionMismatch(f"expected {p.n} samples, got shape {r.shape}")
    return synthesis.idaft_matrix(p).conj().T @ r
