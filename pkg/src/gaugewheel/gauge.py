"""Dressed states and the artificial gauge fields of the Ferris wheel.

An atom following one dressed state of the atom-light coupling acquires a
geometric (Berry) phase; its center-of-mass motion is that of a particle of
fictitious charge q in the artificial potentials

    A = (hbar/2q) (cos Theta - 1) grad(phi_F)          vector potential
    V = (hbar^2/8M) [ delta^2/(delta^2+W^2)^2 (grad W)^2
                      + W^2/(delta^2+W^2) (grad phi_F)^2 ]   scalar potential

(W is the modulated Rabi frequency) and the fields

    B = curl A = (hbar/2q) grad(cos Theta) x grad(phi_F)
    E = -dA/dt - grad(V)/q.

These are the standard adiabatic-following normalizations; the closed-form
focal-plane (z = 0) expressions below are exact reductions or leading-order
large-detuning expansions of them, with the axial phase gradient kept exact
(k_eff(r) = k - (2p+|l|+1)/zR + k r^2/(2 zR^2) rather than the paraxial k).
All fields are reported per unit fictitious charge (q = |e| by default):
B in tesla, E in V/m.

Every function here is pure; the heavy lifting lives in the kernel backend.
"""

import cmath
import math
from dataclasses import dataclass, replace

from . import kernels
from .constants import E_CHARGE, HBAR
from .errors import AxisError, ConfigError, DegeneratePointError
from .optics import BeamConfig, FieldPoint, pack_beam


@dataclass(frozen=True)
class AtomConfig:
    """Two-level atom: linewidth Gamma, detuning delta = omega0 - omegaL,
    mass M, fictitious charge q (all SI)."""

    linewidth: float
    detuning: float
    mass: float
    fictitious_charge: float = E_CHARGE
    transition_label: str = ""
    saturation_intensity: float = 1.0
    transition_frequency: float = 0.0  # informational

    def __post_init__(self):
        if self.linewidth <= 0.0:
            raise ConfigError("linewidth must be > 0")
        if self.mass <= 0.0:
            raise ConfigError("mass must be > 0")
        if self.fictitious_charge <= 0.0:
            raise ConfigError("fictitious charge must be > 0")
        if self.saturation_intensity <= 0.0:
            raise ConfigError("saturation intensity must be > 0")

    def with_(self, **kw) -> "AtomConfig":
        return replace(self, **kw)


@dataclass(frozen=True)
class CylVec:
    """Vector in the local orthonormal cylindrical frame (r-hat, phi-hat, z-hat)."""

    v_r: float
    v_phi: float
    v_z: float

    def magnitude(self) -> float:
        return math.sqrt(self.v_r ** 2 + self.v_phi ** 2 + self.v_z ** 2)

    def dot(self, other: "CylVec") -> float:
        return self.v_r * other.v_r + self.v_phi * other.v_phi + self.v_z * other.v_z

    def scaled(self, a: float) -> "CylVec":
        return CylVec(a * self.v_r, a * self.v_phi, a * self.v_z)

    def __add__(self, other: "CylVec") -> "CylVec":
        return CylVec(self.v_r + other.v_r, self.v_phi + other.v_phi,
                      self.v_z + other.v_z)

    def __sub__(self, other: "CylVec") -> "CylVec":
        return CylVec(self.v_r - other.v_r, self.v_phi - other.v_phi,
                      self.v_z - other.v_z)

    def as_tuple(self) -> tuple:
        return (self.v_r, self.v_phi, self.v_z)


@dataclass(frozen=True)
class DressedState:
    """One dressed state in the (ground, excited) basis."""

    amplitude_ground: complex
    amplitude_excited: complex


@dataclass(frozen=True)
class GaugeSample:
    """Everything computed at one spacetime point."""

    point: FieldPoint
    rabi: float
    ferris_phase: float
    mixing_cos: float
    vector_potential: CylVec
    scalar_potential: float
    magnetic_field: CylVec
    electric_field: CylVec


def pack_params(beam: BeamConfig, atom: AtomConfig) -> tuple:
    """Flat kernel parameter tuple for beam + atom."""
    base = pack_beam(beam)
    q = atom.fictitious_charge
    return base[:8] + (atom.detuning, HBAR / (2.0 * q),
                       HBAR * HBAR / (8.0 * atom.mass), 1.0 / q)


def _require_off_axis(r: float):
    if r <= 0.0:
        raise AxisError("r = 0: fields vanish there for |l| >= 1; evaluate at r > 0")


def mixing_cos(delta: float, rabi: float) -> float:
    """cos Theta = delta / sqrt(delta^2 + rabi^2)."""
    if delta == 0.0 and rabi == 0.0:
        raise DegeneratePointError("dressed basis undefined at delta = rabi = 0")
    return delta / math.hypot(delta, rabi)


def dressed_states(delta: float, rabi: float, ferris_phase: float):
    """The orthonormal dressed pair at a point.

    state1 = (cos(T/2), e^{i phi_F} sin(T/2)),
    state2 = (-e^{-i phi_F} sin(T/2), cos(T/2)), Theta = arccos(cos Theta)
    in [0, pi] so sin(T/2) >= 0.
    """
    cos_t = mixing_cos(delta, rabi)
    half = 0.5 * math.acos(max(-1.0, min(1.0, cos_t)))
    c, s = math.cos(half), math.sin(half)
    ph = cmath.exp(1j * ferris_phase)
    return (DressedState(complex(c), ph * s),
            DressedState(-s / ph, complex(c)))


def grad_rabi(beam: BeamConfig, point: FieldPoint) -> CylVec:
    """Analytic orthonormal cylindrical gradient of the modulated Rabi
    frequency [rad/s per m]; valid at any z, requires r > 0."""
    _require_off_axis(point.r)
    return CylVec(*kernels.grad_rabi(pack_beam(beam), point.r, point.phi,
                                     point.z, point.t))


def grad_ferris_phase(beam: BeamConfig, point: FieldPoint) -> CylVec:
    """Analytic gradient of the common phase [rad/m]; phi component is 0."""
    _, fr, fz = kernels.ferris_d1(pack_beam(beam), point.r, point.z)
    return CylVec(fr, 0.0, fz)


def _check_defined(beam: BeamConfig, atom: AtomConfig, point: FieldPoint):
    if atom.detuning == 0.0:
        w = kernels.rabi(pack_beam(beam), point.r, point.phi, point.z, point.t)
        if w == 0.0:
            raise DegeneratePointError(
                "dressed basis undefined at delta = rabi = 0")


def vector_potential(beam: BeamConfig, atom: AtomConfig,
                     point: FieldPoint) -> CylVec:
    """A = (hbar/2q)(cos Theta - 1) grad(phi_F), per unit charge."""
    _check_defined(beam, atom, point)
    return CylVec(*kernels.vector_potential(pack_params(beam, atom), point.r,
                                            point.phi, point.z, point.t))


def vector_potential_dt(beam: BeamConfig, atom: AtomConfig,
                        point: FieldPoint) -> CylVec:
    """Analytic dA/dt (zero for a static pattern)."""
    _check_defined(beam, atom, point)
    return CylVec(*kernels.da_dt(pack_params(beam, atom), point.r, point.phi,
                                 point.z, point.t))


def scalar_potential(beam: BeamConfig, atom: AtomConfig,
                     point: FieldPoint) -> float:
    """Geometric scalar potential V [J]; requires r > 0."""
    _require_off_axis(point.r)
    return kernels.scalar_potential(pack_params(beam, atom), point.r,
                                    point.phi, point.z, point.t)


def grad_scalar_potential(beam: BeamConfig, atom: AtomConfig,
                          point: FieldPoint) -> CylVec:
    """Analytic gradient of V [J/m]."""
    _require_off_axis(point.r)
    return CylVec(*kernels.grad_v(pack_params(beam, atom), point.r, point.phi,
                                  point.z, point.t))


def magnetic_field(beam: BeamConfig, atom: AtomConfig,
                   point: FieldPoint) -> CylVec:
    """Artificial magnetic field B = curl A [T], analytic gradients."""
    _require_off_axis(point.r)
    _check_defined(beam, atom, point)
    return CylVec(*kernels.b_general(pack_params(beam, atom), point.r,
                                     point.phi, point.z, point.t))


def magnetic_closed_z0(beam: BeamConfig, atom: AtomConfig, r: float,
                       phi: float, t: float = 0.0, raw: bool = False) -> CylVec:
    """Closed-form B in the focal plane.

    The regularized form (default) writes every W^2 tan(psi) product as
    Omega^2 sin(psi) cos(psi), removing the spurious singularity at
    cos(psi) = 0; ``raw=True`` keeps the naive tan factor (used only by the
    regularization-equivalence tests).
    """
    _require_off_axis(r)
    fn = kernels.b_closed_z0_raw if raw else kernels.b_closed_z0
    return CylVec(*fn(pack_params(beam, atom), r, phi, t))


def magnetic_largedet_z0(beam: BeamConfig, atom: AtomConfig, r: float,
                         phi: float, t: float = 0.0,
                         variant: str = "derived") -> CylVec:
    """Large-detuning (delta >> Omega) closed-form B at z = 0.

    variant="derived": the limit of the closed form, consistent with
    ``magnetic_field`` to O((Omega/delta)^2).  variant="printed": the
    circulated variant carrying 1/(2 pi), 1/pi prefactors and the paraxial
    k, retained verbatim so ``validate`` can report the deviation factors.
    """
    _require_off_axis(r)
    if variant not in ("derived", "printed"):
        raise ConfigError("variant must be 'derived' or 'printed'")
    sel = 0 if variant == "derived" else 1
    return CylVec(*kernels.b_largedet_z0(pack_params(beam, atom), r, phi, t, sel))


def electric_field(beam: BeamConfig, atom: AtomConfig, point: FieldPoint,
                   route: str = "analytic", policy=None) -> CylVec:
    """Artificial electric field E = -dA/dt - grad(V)/q [V/m].

    route="analytic" uses the closed-form grad(V); route="fd" replaces it
    with the finite-difference oracle (kept as an independent cross-check).
    """
    _require_off_axis(point.r)
    _check_defined(beam, atom, point)
    if route == "analytic":
        return CylVec(*kernels.e_general(pack_params(beam, atom), point.r,
                                         point.phi, point.z, point.t))
    if route != "fd":
        raise ConfigError("route must be 'analytic' or 'fd'")
    from . import numerics

    pol = policy if policy is not None else numerics.StepPolicy(
        length_scale=beam.waist)
    gv = numerics.fd_gradient(
        lambda pt: scalar_potential(beam, atom, pt), point, pol)
    dadt = vector_potential_dt(beam, atom, point)
    return (dadt + gv.scaled(1.0 / atom.fictitious_charge)).scaled(-1.0)


def electric_field_static(beam: BeamConfig, atom: AtomConfig,
                          point: FieldPoint, route: str = "analytic",
                          policy=None) -> CylVec:
    """Static artificial electric field E = -grad(V)/q [V/m].

    Identical to :func:`electric_field` for a static pattern (dA/dt = 0);
    provided with the static name and a frequency-shift guard for clarity.
    """
    if beam.freq_shift != 0.0:
        beam = beam.with_(freq_shift=0.0)
    return electric_field(beam, atom, point, route=route, policy=policy)


def electric_closed_z0(beam: BeamConfig, atom: AtomConfig, r: float,
                       phi: float, raw: bool = False) -> CylVec:
    """Static closed-form E in the focal plane (leading order in Omega/delta).

    Only radial and azimuthal components are nonzero; accurate to
    O((Omega/delta)^2) relative to -grad(V)/q.
    """
    _require_off_axis(r)
    fn = kernels.e_closed_z0_raw if raw else kernels.e_closed_z0
    beam_static = beam.with_(freq_shift=0.0) if beam.freq_shift != 0.0 else beam
    return CylVec(*fn(pack_params(beam_static, atom), r, phi, 0.0))


def electric_largedet_z0(beam: BeamConfig, atom: AtomConfig, r: float,
                         phi: float, t: float = 0.0) -> CylVec:
    """Rotating closed-form E at z = 0 (leading order in Omega/delta).

    Adds the axial component E_z from -dA_z/dt, the dominant one; dw = 0
    reduces exactly to the static closed form.
    """
    _require_off_axis(r)
    return CylVec(*kernels.e_closed_z0(pack_params(beam, atom), r, phi, t))


def gauge_sample(beam: BeamConfig, atom: AtomConfig,
                 point: FieldPoint) -> GaugeSample:
    """All gauge quantities at one point (analytic routes)."""
    P = pack_params(beam, atom)
    w = kernels.rabi(P, point.r, point.phi, point.z, point.t)
    return GaugeSample(
        point=point,
        rabi=w,
        ferris_phase=kernels.ferris_phase(P, point.r, point.z),
        mixing_cos=mixing_cos(atom.detuning, w),
        vector_potential=vector_potential(beam, atom, point),
        scalar_potential=scalar_potential(beam, atom, point),
        magnetic_field=magnetic_field(beam, atom, point),
        electric_field=electric_field(beam, atom, point),
    )
