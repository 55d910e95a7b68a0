"""Exception hierarchy shared across the package."""


class BurstmuxError(Exception):
    """Base class for all package errors."""


class FieldError(BurstmuxError):
    """Invalid finite-field specification (bad order or reduction)."""


class FieldSizeError(BurstmuxError):
    """Field too small for the requested construction."""


class RegimeError(BurstmuxError):
    """Code or region parameters outside the supported regime."""


class DecodeError(BurstmuxError):
    """Erasure pattern beyond the design tolerance of a strict decode."""


class InternalConsistencyError(BurstmuxError):
    """A solve that must succeed for valid codes failed; indicates a bug."""


class DescriptorError(BurstmuxError):
    """Malformed or inconsistent code descriptor."""


class TargetError(BurstmuxError):
    """Requested rate target cannot be met."""
