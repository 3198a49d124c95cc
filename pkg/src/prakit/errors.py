class SpecError(ValueError):
    """Malformed group spec, tuple literal or move."""


class CapExceeded(RuntimeError):
    """A desk-scale resource cap would be exceeded."""
