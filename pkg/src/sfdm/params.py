"""Block constants and derived waveform parameters.

Everything downstream (synthesis, spectra, channels) consumes a single
immutable :class:`WaveformParams`. The normalized chirp rate ``alpha`` and the
continuous chirp rate ``chirp_rate`` are always derived from ``(n, bandwidth,
c1)``; they are never stored independently.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from .errors import InvalidParam


@dataclass(frozen=True)
class WaveformParams:
    """All block constants shared by every module.

    Attributes:
        n: number of subcarriers N (>= 2).
        bandwidth: total bandwidth B in Hz (> 0).
        c1: time-domain chirp parameter (> 0; the reversed-chirp case is
            unsupported).
        c2: DAF-domain chirp parameter (any real; enters only as a constant
            per-subcarrier phase).
    """

    n: int
    bandwidth: float
    c1: float
    c2: float = 0.0

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 2:
            raise InvalidParam(f"n must be an integer >= 2, got {self.n}")
        if not self.bandwidth > 0:
            raise InvalidParam(f"bandwidth must be positive, got {self.bandwidth}")
        if not self.c1 > 0:
            raise InvalidParam(f"c1 must be positive, got {self.c1}")

    @property
    def block_duration(self) -> float:
        """T = N/B, seconds."""
        return self.n / self.bandwidth

    @property
    def sample_period(self) -> float:
        """Delta t = 1/B, seconds."""
        return 1.0 / self.bandwidth

    @property
    def chirp_rate(self) -> float:
        """K = 2 c1 B^2, Hz per second."""
        return 2.0 * self.c1 * self.bandwidth**2

    @property
    def alpha(self) -> float:
        """Normalized chirp rate alpha = c1 N."""
        return self.c1 * self.n


def derive(n: int, bandwidth: float = 1.0, c1: float | None = None,
           c2: float = 0.0, alpha: float | None = None) -> WaveformParams:
    """Build :class:`WaveformParams` from raw fields.

    Exactly one of ``c1`` and ``alpha`` must be given; ``alpha`` is converted
    via ``c1 = alpha / n``.
    """
    if (c1 is None) == (alpha is None):
        raise InvalidParam("specify exactly one of c1 and alpha")
    if c1 is None:
        c1 = alpha / n
    return WaveformParams(n=int(n), bandwidth=float(bandwidth),
                          c1=float(c1), c2=float(c2))


_CONFIG_KEYS = {"n", "bandwidth", "c1", "c2", "alpha"}


def load_config(path: str | Path) -> WaveformParams:
    """Parse a plain-text ``key=value`` configuration file.

    Recognized keys: ``n``, ``bandwidth``, ``c1``, ``c2``, ``alpha``. Blank
    lines and ``#`` comments are ignored. Giving both ``c1`` and ``alpha`` is
    an error.
    """
    raw: dict[str, str] = {}
    for lineno, line in enumerate(Path(path).read_text().splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise InvalidParam(f"{path}:{lineno}: expected key=value, got {line!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        if key not in _CONFIG_KEYS:
            raise InvalidParam(f"{path}:{lineno}: unknown key {key!r}")
        if key in raw:
            raise InvalidParam(f"{path}:{lineno}: duplicate key {key!r}")
        raw[key] = value
    if "n" not in raw:
        raise InvalidParam(f"{path}: missing required key 'n'")
    return derive(
        n=int(raw["n"]),
        bandwidth=float(raw.get("bandwidth", 1.0)),
        c1=float(raw["c1"]) if "c1" in raw else None,
        c2=float(raw.get("c2", 0.0)),
        alpha=float(raw["alpha"]) if "alpha" in raw else None,
    )
