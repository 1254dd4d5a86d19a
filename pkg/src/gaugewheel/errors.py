"""Exception types raised by the library."""


class GaugewheelError(Exception):
    """Base class for all gaugewheel errors."""


class ConfigError(GaugewheelError):
    """A configuration violates an invariant (bad waist, winding, grid...)."""


class UnknownPresetError(ConfigError):
    """Requested preset name does not exist."""


class ZeroWindingError(ConfigError):
    """Operation requires a nonzero beam winding."""


class AxisError(GaugewheelError):
    """Field evaluation requested on the beam axis (r = 0) where the
    cylindrical expressions are singular; the limit value is 0 for |l| >= 1."""


class DegeneratePointError(GaugewheelError):
    """Dressed basis undefined: detuning and Rabi frequency both vanish."""


class AxisProximityError(GaugewheelError):
    """Finite-difference stencil would cross the r = 0 axis."""


class EmptyRegionError(GaugewheelError):
    """Sampling region contains no admissible points."""


class NullFieldError(GaugewheelError):
    """Field-line seed placed where the field magnitude is zero."""
