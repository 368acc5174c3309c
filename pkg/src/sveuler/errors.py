"""Exception types shared across the solver."""


class SvEulerError(Exception):
    """Base class for all solver errors."""


class GridMismatch(SvEulerError):
    """Two fields that must share a grid do not."""


class GridIncompatible(SvEulerError):
    """Coarse/reference grid pair is not nested (coarse must divide reference)."""


class NonZeroMean(SvEulerError):
    """Vorticity handed to the velocity reconstruction has a non-negligible mean."""


class NonFinite(SvEulerError):
    """A field picked up NaN/Inf coefficients (blow-up detector)."""


class VelocityBlowup(SvEulerError):
    """Grid velocity magnitude exceeded the configured ceiling."""


class OverlappingEddies(SvEulerError):
    """Confined-eddy centers closer than twice the eddy radius."""


class InvalidRegime(SvEulerError):
    """Parameter-regime inputs outside the validator's domain."""


class ConfigError(SvEulerError):
    """Malformed or inconsistent run configuration."""


class SnapshotError(SvEulerError):
    """Snapshot file is corrupt or has an unexpected layout."""
