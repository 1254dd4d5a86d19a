"""Laguerre-Gaussian beams, the Ferris-wheel superposition and the Rabi map.

Two co-propagating LG beams with windings +l and -l interfere into a ring of
2|l| bright petals; a frequency shift dw between them makes the petal pattern
rotate at Omega_rot = dw / (2 l).  Everything downstream (the gauge module)
only needs the modulated Rabi frequency and the common phase produced here.
"""

import math
from dataclasses import dataclass, replace

from . import kernels
from .errors import ConfigError, ZeroWindingError

NORM_PRINTED = "printed"    # sqrt(p! / (|l|! + p!))
NORM_STANDARD = "standard"  # sqrt(p! / (|l| + p)!)


def _norm_factor(winding: int, radial_index: int, convention: str) -> float:
    m = abs(winding)
    p = radial_index
    if convention == NORM_PRINTED:
        return math.sqrt(math.factorial(p) / (math.factorial(m) + math.factorial(p)))
    if convention == NORM_STANDARD:
        return math.sqrt(math.factorial(p) / math.factorial(m + p))
    raise ConfigError("unknown normalization convention %r" % convention)


@dataclass(frozen=True)
class BeamConfig:
    """Two-LG-beam superposition (windings +/- winding).

    wavelength [m], waist [m], peak_rabi Omega0 [rad/s], freq_shift
    dw = omega1 - omega2 [rad/s].  ``norm_convention`` selects the envelope
    normalization factor; both conventions in circulation are supported,
    "printed" being the default (see README).
    """

    wavelength: float
    waist: float
    winding: int
    radial_index: int = 0
    peak_rabi: float = 0.0
    freq_shift: float = 0.0
    norm_convention: str = NORM_PRINTED

    def __post_init__(self):
        if self.wavelength <= 0.0:
            raise ConfigError("wavelength must be > 0")
        if self.waist <= 0.0:
            raise ConfigError("waist must be > 0")
        if int(self.winding) != self.winding or abs(self.winding) < 1:
            raise ConfigError("winding must be a signed integer with |l| >= 1")
        if int(self.radial_index) != self.radial_index or self.radial_index < 0:
            raise ConfigError("radial_index must be an integer >= 0")
        if self.peak_rabi < 0.0:
            raise ConfigError("peak_rabi must be >= 0")
        _norm_factor(self.winding, self.radial_index, self.norm_convention)

    def with_(self, **kw) -> "BeamConfig":
        return replace(self, **kw)


@dataclass(frozen=True)
class BeamGeometry:
    """Derived beam geometry: k, Rayleigh range, and the width profile."""

    k: float
    rayleigh_range: float
    waist: float

    def width(self, z: float) -> float:
        """w(z) = w0 sqrt(1 + (z/zR)^2)."""
        return self.waist * math.sqrt(1.0 + (z / self.rayleigh_range) ** 2)


@dataclass(frozen=True)
class FieldPoint:
    """Cylindrical spacetime sample point.

    phi is accepted unwrapped (any real); canonicalization to [0, 2pi)
    happens only when writing output files.
    """

    r: float
    phi: float = 0.0
    z: float = 0.0
    t: float = 0.0

    def __post_init__(self):
        if self.r < 0.0:
            raise ConfigError("r must be >= 0")


def beam_geometry(cfg: BeamConfig) -> BeamGeometry:
    """k = 2 pi / lambda and zR = pi w0^2 / lambda."""
    return BeamGeometry(
        k=2.0 * math.pi / cfg.wavelength,
        rayleigh_range=math.pi * cfg.waist ** 2 / cfg.wavelength,
        waist=cfg.waist,
    )


def pack_beam(cfg: BeamConfig, amp: float | None = None) -> tuple:
    """Flat parameter tuple for the kernels (atom-independent slots zeroed).

    ``amp`` overrides the envelope prefactor; default 2 Omega0 N.
    """
    geo = beam_geometry(cfg)
    if amp is None:
        amp = 2.0 * cfg.peak_rabi * _norm_factor(cfg.winding, cfg.radial_index,
                                                 cfg.norm_convention)
    return (float(cfg.winding), float(abs(cfg.winding)), float(cfg.radial_index),
            cfg.waist, geo.rayleigh_range, geo.k, amp, cfg.freq_shift,
            0.0, 0.0, 0.0, 0.0)


def laguerre(p: int, alpha: int, x: float) -> float:
    """Associated Laguerre polynomial L_p^alpha(x)."""
    if p < 0 or alpha < 0:
        raise ConfigError("laguerre requires p >= 0 and alpha >= 0")
    return kernels.laguerre(p, alpha, x)


def lg_amplitude(cfg: BeamConfig, r: float, z: float) -> float:
    """Single-beam LG amplitude with the physical field amplitude set to 1.

    The physical scale enters only through Omega0 (see rabi_envelope); this
    dimensionless profile exists for testing and plotting.
    """
    if r < 0.0:
        raise ConfigError("r must be >= 0")
    amp = _norm_factor(cfg.winding, cfg.radial_index, cfg.norm_convention)
    return kernels.envelope(pack_beam(cfg, amp=amp), r, z)


def lg_phase(cfg: BeamConfig, r: float, z: float, phi: float, sign: int) -> float:
    """Phase of the +l (sign=+1) or -l (sign=-1) beam."""
    if sign not in (1, -1):
        raise ConfigError("sign must be +1 or -1")
    return kernels.ferris_phase(pack_beam(cfg), r, z) + sign * cfg.winding * phi


def ferris_phase(cfg: BeamConfig, r: float, z: float) -> float:
    """Common (phi-independent) phase of the superposition."""
    return kernels.ferris_phase(pack_beam(cfg), r, z)


def rabi_envelope(cfg: BeamConfig, r: float, z: float) -> float:
    """Envelope Omega(r, z) of the modulated Rabi frequency [rad/s]."""
    if r < 0.0:
        raise ConfigError("r must be >= 0")
    return kernels.envelope(pack_beam(cfg), r, z)


def rabi(cfg: BeamConfig, point: FieldPoint) -> float:
    """Modulated Rabi frequency Omega(r,z) cos(l phi - dw t/2) [rad/s].

    dw = 0 reproduces the static petal pattern exactly.
    """
    return kernels.rabi(pack_beam(cfg), point.r, point.phi, point.z, point.t)


def rotation_frequency(cfg: BeamConfig) -> float:
    """Pattern rotation frequency Omega_rot = dw / (2 l); the sign encodes
    the rotation direction (flipping the helicities reverses it)."""
    if cfg.winding == 0:
        raise ZeroWindingError("rotation frequency undefined for l = 0")
    return cfg.freq_shift / (2.0 * cfg.winding)


def rabi_from_intensity(power: float, waist: float, i_sat: float,
                        gamma: float) -> float:
    """Omega0 = Gamma sqrt(I / (2 I_S)) with I = P / (pi w0^2)."""
    if power < 0.0:
        raise ConfigError("power must be >= 0")
    if i_sat <= 0.0 or waist <= 0.0:
        raise ConfigError("i_sat and waist must be > 0")
    intensity = power / (math.pi * waist ** 2)
    return gamma * math.sqrt(intensity / (2.0 * i_sat))
