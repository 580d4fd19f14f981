import os


class CapError(RuntimeError):
    """An enumeration or sampling size exceeds the configured cap."""


class CapabilityError(RuntimeError):
    """The requested computation is outside what the implementation supports."""


DEFAULT_ENUM_CAP = 10**8


def enum_cap() -> int:
    """Enumeration cap in words; ``GGL_ENUM_CAP`` overrides the default."""
    raw = os.environ.get("GGL_ENUM_CAP")
    if raw is None:
        return DEFAULT_ENUM_CAP
    try:
        return int(float(raw))
    except ValueError:
        raise ValueError(f"GGL_ENUM_CAP must be an integer, got {raw!r}") from None
