"""Figure rendering for the sfdm CLI's CSV outputs.

This package contains no numerics: every plotted value comes straight from a
CSV column produced by the sfdm command-line tool, and dB/log presentation is
done purely through axis scales.
"""

__version__ = "0.1.0"
