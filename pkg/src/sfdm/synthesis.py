"""Discrete block modulation and exact continuous-time basis waveforms.

Each basis function is stored as an ordered list of phase-polynomial segments
(phase in cycles), never as an oversampled array. The wrapped-chirp (PC)
realization has quadratic-phase segments split at the closed-form wrap
instants; the stepped (SFDM) realization has one linear-phase segment per
sampling interval with the phase accumulated continuously.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from . import discontinuity
from .errors import (DimensionMismatch, IndexOutOfRange, InvalidParam,
                     OutOfDomain)
from .params import WaveformParams

TWO_PI = 2.0 * np.pi


@dataclass(frozen=True)
class PhaseSegment:
    """Phase polynomial ``a0 + a1 t + a2 t^2`` (cycles) on ``[t_start, t_end)``."""

    t_start: float
    t_end: float
    a0: float
    a1: float
    a2: float

    def phase(self, t):
        return self.a0 + t * (self.a1 + self.a2 * t)

    def inst_freq(self, t):
        return self.a1 + 2.0 * self.a2 * t


@dataclass(frozen=True)
class SubcarrierWaveform:
    """Exact piecewise trajectory of one basis function.

    The segments partition ``[-cpp_duration, T)`` with no gaps or overlaps.
    Values at segment boundaries are right-continuous; left limits are
    available through the ``*_left`` evaluators.
    """

    m: int
    realization: str  # "pc" | "step" | "theta"
    segments: tuple[PhaseSegment, ...]
    cpp_duration: float = 0.0
    theta: float | None = None

    @cached_property
    def _bounds(self) -> np.ndarray:
        b = [s.t_start for s in self.segments]
        b.append(self.segments[-1].t_end)
        return np.asarray(b)

    @cached_property
    def _coef(self) -> np.ndarray:
        return np.asarray([[s.a0, s.a1, s.a2] for s in self.segments])

    @property
    def t_min(self) -> float:
        return self.segments[0].t_start

    @property
    def t_max(self) -> float:
        return self.segments[-1].t_end

    def _segment_index(self, t: np.ndarray, side: str) -> np.ndarray:
        # side="right": value at t belongs to the segment starting there
        # (right-continuous); side="left": one-sided limit from below.
        idx = np.searchsorted(self._bounds, t, side=side) - 1
        return np.clip(idx, 0, len(self.segments) - 1)

    def _phase_at(self, t, side: str):
        t = np.asarray(t, dtype=float)
        lo = self.t_min if side == "right" else np.nextafter(self.t_min, np.inf)
        if np.any(t < lo) or np.any(t > self.t_max) or \
                (side == "right" and np.any(t >= self.t_max)):
            raise OutOfDomain(
                f"time outside [{self.t_min}, {self.t_max}) for m={self.m}")
        a0, a1, a2 = self._coef[self._segment_index(t, side)].T
        return a0 + t * (a1 + a2 * t)

    def phase(self, t):
        """Phase in cycles, right-continuous at internal boundaries."""
        return self._phase_at(t, "right")

    def phase_left(self, t):
        """One-sided phase limit from below (left limit at boundaries)."""
        return self._phase_at(t, "left")

    def value(self, t):
        """Complex envelope ``exp(j 2 pi phase)``, right-continuous."""
        return np.exp(2j * np.pi * self._phase_at(t, "right"))

    def value_left(self, t):
        """One-sided envelope limit from below."""
        return np.exp(2j * np.pi * self._phase_at(t, "left"))

    def inst_freq(self, t):
        """Instantaneous frequency ``a1 + 2 a2 t`` in Hz (right-continuous)."""
        t = np.asarray(t, dtype=float)
        _, a1, a2 = self._coef[self._segment_index(t, "right")].T
        return a1 + 2.0 * a2 * t


def idaft_matrix(p: WaveformParams) -> np.ndarray:
    """Unitary modulation matrix A[n, m] = exp{j2pi(c2 m^2 + c1 n^2 + mn/N)}/sqrt(N)."""
    n = np.arange(p.n)[:, None]
    m = np.arange(p.n)[None, :]
    phase = p.c2 * m**2 + p.c1 * n**2 + (m * n) / p.n
    return np.exp(2j * np.pi * phase) / np.sqrt(p.n)


def idaft_modulate(x, p: WaveformParams) -> np.ndarray:
    """Map a length-N symbol block to the N time samples of the block."""
    x = np.asarray(x, dtype=complex)
    if x.shape != (p.n,):
        raise DimensionMismatch(f"expected {p.n} symbols, got shape {x.shape}")
    return idaft_matrix(p) @ x


def build_pc_subcarrier(m: int, p: WaveformParams) -> SubcarrierWaveform:
    """Wrapped-chirp basis function: quadratic-phase segments of constant
    wrap count, split at the closed-form wrap instants."""
    if not 0 <= m < p.n:
        raise IndexOutOfRange(f"subcarrier index {m} outside 0..{p.n - 1}")
    bounds = [0.0] + [ev.t for ev in discontinuity.wrap_events(m, p)]
    bounds.append(p.block_duration)
    half_k = 0.5 * p.chirp_rate
    base_freq = m / p.block_duration
    segments = tuple(
        PhaseSegment(t_start=bounds[q], t_end=bounds[q + 1], a0=0.0,
                     a1=base_freq - q * p.bandwidth, a2=half_k)
        for q in range(len(bounds) - 1))
    return SubcarrierWaveform(m=m, realization="pc", segments=segments)


def build_theta_subcarrier(m: int, theta: float,
                           p: WaveformParams) -> SubcarrierWaveform:
    """Constant-frequency-per-interval basis function with representative
    time ``(n + theta)/B`` and continuous phase accumulation."""
    if not 0 <= m < p.n:
        raise IndexOutOfRange(f"subcarrier index {m} outside 0..{p.n - 1}")
    if not 0.0 <= theta < 1.0:
        raise InvalidParam(f"theta must lie in [0, 1), got {theta}")
    n = np.arange(p.n)
    b = p.bandwidth
    raw = p.chirp_rate * (n + theta) / b + m / p.block_duration
    q = np.floor(raw / b)
    freq = raw - b * q  # in [0, B)
    # Phase at interval starts, closed form: summing freq/B telescopes to
    # c1 n^2 + c1 (2 theta - 1) n + m n / N minus the integer sum of wrap
    # counts, so no accumulation drift builds up over the block.
    kappa = np.concatenate(([0.0], np.cumsum(q)[:-1]))
    phi0 = p.c1 * n**2 + p.c1 * (2.0 * theta - 1.0) * n + m * n / p.n - kappa
    t_start = n / b
    a0 = phi0 - freq * t_start
    segments = tuple(
        PhaseSegment(t_start=t_start[i], t_end=(i + 1) / b,
                     a0=a0[i], a1=freq[i], a2=0.0)
        for i in range(p.n))
    tag = "step" if theta == 0.5 else "theta"
    return SubcarrierWaveform(m=m, realization=tag, segments=segments,
                              theta=theta)


def build_step_subcarrier(m: int, p: WaveformParams) -> SubcarrierWaveform:
    """Midpoint (theta = 1/2) stepped basis function; the unique
    sample-preserving member of the theta family."""
    return build_theta_subcarrier(m, 0.5, p)


def append_cpp(w: SubcarrierWaveform, t_cpp: float,
               p: WaveformParams) -> SubcarrierWaveform:
    """Prepend a chirp periodic prefix of duration ``t_cpp``.

    The prefix copies the block tail shifted by -T and multiplied by the
    deterministic phase ``exp{-j2pi c1 N (N + 2 B t)}``; both the shift and
    the multiplier are absorbed into the segment coefficients.
    """
    T = p.block_duration
    if not 0.0 <= t_cpp < T:
        raise InvalidParam(f"cpp duration must lie in [0, T), got {t_cpp}")
    if w.cpp_duration:
        raise InvalidParam("waveform already carries a prefix")
    if t_cpp == 0.0:
        return w
    tail_start = T - t_cpp
    phase_const = p.c1 * p.n**2
    freq_const = 2.0 * p.c1 * p.n * p.bandwidth
    prefix = []
    for s in w.segments:
        if s.t_end <= tail_start:
            continue
        ta = max(s.t_start, tail_start)
        prefix.append(PhaseSegment(
            t_start=ta - T, t_end=s.t_end - T,
            a0=s.a0 + s.a1 * T + s.a2 * T * T - phase_const,
            a1=s.a1 + 2.0 * s.a2 * T - freq_const,
            a2=s.a2))
    return SubcarrierWaveform(m=w.m, realization=w.realization,
                              segments=tuple(prefix) + w.segments,
                              cpp_duration=t_cpp, theta=w.theta)


def parse_realization(spec: str) -> tuple[str, float | None]:
    """Split a realization spec string into (kind, theta)."""
    if spec == "pc":
        return "pc", None
    if spec == "step":
        return "step", None
    if spec.startswith("theta:"):
        return "theta", float(spec.split(":", 1)[1])
    raise InvalidParam(f"unknown realization {spec!r}")


def build_subcarrier(m: int, realization: str, p: WaveformParams,
                     theta: float | None = None) -> SubcarrierWaveform:
    """Dispatch on realization name ('pc', 'step', 'theta' or 'theta:<v>')."""
    if theta is None and ":" in realization:
        realization, theta = parse_realization(realization)
    if realization == "pc":
        return build_pc_subcarrier(m, p)
    if realization == "step":
        return build_step_subcarrier(m, p)
    if realization == "theta":
        if theta is None:
            raise InvalidParam("theta realization requires a theta value")
        return build_theta_subcarrier(m, theta, p)
    raise InvalidParam(f"unknown realization {realization!r}")


def subcarrier_waveforms(realization: str, p: WaveformParams,
                         t_cpp: float = 0.0,
                         theta: float | None = None
                         ) -> list[SubcarrierWaveform]:
    """Build all N basis waveforms, optionally CPP-extended."""
    wavs = [build_subcarrier(m, realization, p, theta) for m in range(p.n)]
    if t_cpp > 0.0:
        wavs = [append_cpp(w, t_cpp, p) for w in wavs]
    return wavs


def evaluate_block(x, realization: str, t, p: WaveformParams,
                   t_cpp: float = 0.0,
                   waveforms: list[SubcarrierWaveform] | None = None):
    """Transmitted waveform value ``(1/sqrt(N)) sum_m x[m] e^{j2pi c2 m^2} g_m(t)``.

    ``waveforms`` may be passed to reuse prebuilt basis functions.
    """
    x = np.asarray(x, dtype=complex)
    if x.shape != (p.n,):
        raise DimensionMismatch(f"expected {p.n} symbols, got shape {x.shape}")
    if waveforms is None:
        waveforms = subcarrier_waveforms(realization, p, t_cpp)
    t = np.asarray(t, dtype=float)
    coeff = x * np.exp(2j * np.pi * p.c2 * np.arange(p.n) ** 2) / np.sqrt(p.n)
    out = np.zeros(t.shape, dtype=complex)
    for m, w in enumerate(waveforms):
        out += coeff[m] * w.value(t)
    return out if out.shape else out[()]
