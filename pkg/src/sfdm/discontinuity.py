"""Internal wrapping events of the wrapped-chirp (PC) realization.

Wrap instants and jump magnitudes are closed-form; nothing here scans the
waveform numerically. The instant for boundary index r of subcarrier m is
``t = (N r - m) / (2 alpha B)`` and the squared envelope jump there is
``4 sin^2(pi (N r - m) / (2 alpha))``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import IndexOutOfRange
from .params import WaveformParams

# Guard band for deciding whether 2*alpha + m/N sits exactly on an integer
# boundary; the open interval in the admissible index set excludes that case.
_BOUNDARY_GUARD = 1e-12


@dataclass(frozen=True)
class WrapEvent:
    """One internal wrapping instant of subcarrier ``m``.

    ``r`` is the integer frequency boundary crossed by the unwrapped chirp,
    ``t`` the instant in seconds and ``jump_sq`` the squared magnitude of the
    complex-envelope jump (in [0, 4]).
    """

    m: int
    r: int
    t: float
    jump_sq: float


def _check_m(m: int, p: WaveformParams) -> None:
    if not 0 <= m < p.n:
        raise IndexOutOfRange(f"subcarrier index {m} outside 0..{p.n - 1}")


def event_count(m: int, p: WaveformParams) -> int:
    """J_m = max{0, ceil(2 alpha + m/N) - 1}, with the exact-integer boundary
    excluded (the crossing would occur at t = T)."""
    _check_m(m, p)
    bound = 2.0 * p.alpha + m / p.n
    return max(0, math.ceil(bound - _BOUNDARY_GUARD) - 1)


def wrap_events(m: int, p: WaveformParams) -> list[WrapEvent]:
    """All internal wrapping events of subcarrier ``m``, sorted by time."""
    count = event_count(m, p)
    events = []
    for r in range(1, count + 1):
        half_cycles = (p.n * r - m) / (2.0 * p.alpha)  # = B * t
        t = half_cycles / p.bandwidth
        jump_sq = 4.0 * math.sin(math.pi * half_cycles) ** 2
        events.append(WrapEvent(m=m, r=r, t=t, jump_sq=jump_sq))
    return events


def is_continuous(p: WaveformParams) -> bool:
    """Continuity criterion for all PC basis functions.

    True iff alpha <= 1/(2N) (no internal wrapping at all) or 1/(2 alpha) is a
    positive integer (every phase reset is a whole number of cycles).
    """
    if p.alpha <= 1.0 / (2.0 * p.n):
        return True
    k = 1.0 / (2.0 * p.alpha)
    return abs(k - round(k)) <= 1e-12 * max(1.0, k) and round(k) >= 1


def expected_tx_jump_energy(t0: float, p: WaveformParams) -> float:
    """Average squared jump of the transmitted PC waveform at time ``t0``.

    Equals ``(1/N) sum_m |Delta g_m(t0)|^2`` over subcarriers with a wrap
    event at ``t0`` (matched through the boundary index, not by float
    comparison of times); zero when no subcarrier wraps there.
    """
    total = 0.0
    tol = 1e-12 * p.block_duration
    for m in range(p.n):
        for ev in wrap_events(m, p):
            if abs(ev.t - t0) <= tol:
                total += ev.jump_sq
    return total / p.n
