"""Thermally integrated direct air capture driven by AI data center waste heat.

The simulator chains server fleet energy -> recoverable waste heat -> state and
county allocation -> heat-pump upgrade -> DAC capture -> net removal, removal
ratio and levelized cost of capture, one month per time step.
"""

from aidc_dac.errors import ModelError, ValidationError

__version__ = "0.1.0"

__all__ = ["ModelError", "ValidationError", "__version__"]
