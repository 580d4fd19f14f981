"""Random group presentations: readability, small cancellation and genericity entropy."""

from .errors import CapabilityError, CapError

__all__ = ["CapError", "CapabilityError"]
__version__ = "0.1.0"
