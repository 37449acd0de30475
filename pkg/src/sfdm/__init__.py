"""Continuous-time AFDM waveform simulator.

Two exact piecewise-analytic realizations of the same discrete AFDM block:
the canonical wrapped-chirp (PC) waveform and the jump-free stepped (SFDM)
waveform, with spectral (ESD, OOBE, high-frequency tail) and receiver
(fractional-delay LMMSE EVM) comparisons.
"""

from .params import WaveformParams, derive, load_config

__all__ = ["WaveformParams", "derive", "load_config"]
__version__ = "0.1.0"
