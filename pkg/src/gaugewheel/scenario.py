"""Scenario bundles: beam + atom + grid, presets, validity checks, sampling.

A scenario file is a JSON document with nested ``beam``/``atom``/``grid``
sections and unit-suffixed keys (``waist_m``, ``detuning_rad_per_s``, ...).
Rabi/detuning/frequency-shift values may instead be given relative to the
linewidth via ``*_in_linewidths`` keys.  See README for the full schema.
"""

import json
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

from . import constants, kernels
from .errors import ConfigError, UnknownPresetError
from .gauge import AtomConfig, pack_params
from .optics import BeamConfig, rotation_frequency

FIELDS = {"B": kernels.FIELD_B, "E": kernels.FIELD_E, "A": kernels.FIELD_A,
          "V": kernels.FIELD_V, "rabi": kernels.FIELD_RABI}
VECTOR_FIELDS = ("B", "E", "A")
FIELD_UNITS = {"B": "mT", "E": "V/m", "A": "kg m/(s C)", "V": "J",
               "rabi": "rad/s"}
# library values are SI; CSV output converts B from T to mT
FIELD_OUTPUT_SCALE = {"B": 1e3, "E": 1.0, "A": 1.0, "V": 1.0, "rabi": 1.0}

PRESET_NAMES = ("fig1", "fig3", "custom-template")


@dataclass(frozen=True)
class GridSpec:
    """Sampling grid; n_z = 1 pins the focal plane z = z_min (usually 0).

    phi rows exclude the endpoint (a full turn is not double-counted);
    r and z are inclusive linspaces.
    """

    r_min: float
    r_max: float
    n_r: int
    phi_min: float = 0.0
    phi_max: float = 2.0 * math.pi
    n_phi: int = 1
    z_min: float = 0.0
    z_max: float = 0.0
    n_z: int = 1
    t_min: float = 0.0
    t_max: float = 0.0
    n_t: int = 1

    def __post_init__(self):
        if self.r_min <= 0.0 or self.r_max < self.r_min:
            raise ConfigError("grid requires 0 < r_min <= r_max")
        if min(self.n_r, self.n_phi, self.n_z, self.n_t) < 1:
            raise ConfigError("grid counts must be >= 1")

    def r_values(self):
        return np.linspace(self.r_min, self.r_max, self.n_r)

    def phi_values(self):
        if self.n_phi == 1:
            return np.array([self.phi_min])
        return self.phi_min + np.arange(self.n_phi) * (
            (self.phi_max - self.phi_min) / self.n_phi)

    def z_values(self):
        return np.linspace(self.z_min, self.z_max, self.n_z)


@dataclass(frozen=True)
class Scenario:
    beam: BeamConfig
    atom: AtomConfig
    grid: GridSpec
    label: str = ""

    def with_(self, **kw) -> "Scenario":
        return replace(self, **kw)


@dataclass
class ValidityReport:
    """Physical-window checks; violations warn but never abort computation
    (the formulas remain evaluable outside the windows)."""

    rotating: bool
    omega_rot: float
    interaction_time_limit: float
    adiabatic_window_ok: bool | None
    freq_shift_window_ok: bool | None
    large_detuning_ok: bool
    warnings: list = field(default_factory=list)


def preset(name: str) -> Scenario:
    """Named example scenarios on the Cs-133 D2 line.

    fig1: l = +/-1, w0 = 5 um, Omega0 = 10 Gamma, delta = 100 Gamma, static.
    fig3: same with l = +/-2.
    custom-template: fig1 beam with a rotating pattern (dw = 4 |l| Gamma),
    meant as a starting point for user scenario files.
    """
    if name not in PRESET_NAMES:
        raise UnknownPresetError("unknown preset %r (have %s)"
                                 % (name, ", ".join(PRESET_NAMES)))
    gamma = constants.CS_D2_GAMMA
    winding = 2 if name == "fig3" else 1
    freq_shift = 4.0 * abs(winding) * gamma if name == "custom-template" else 0.0
    w0 = 5e-6
    beam = BeamConfig(wavelength=constants.CS_D2_WAVELENGTH, waist=w0,
                      winding=winding, radial_index=0, peak_rabi=10.0 * gamma,
                      freq_shift=freq_shift)
    atom = AtomConfig(linewidth=gamma, detuning=100.0 * gamma,
                      mass=constants.CS_MASS,
                      fictitious_charge=constants.E_CHARGE,
                      transition_label=constants.CS_D2_LABEL,
                      saturation_intensity=constants.CS_D2_ISAT)
    grid = GridSpec(r_min=0.05 * w0, r_max=3.0 * w0, n_r=200,
                    phi_min=0.0, phi_max=2.0 * math.pi, n_phi=200,
                    z_min=0.0, z_max=0.0, n_z=1)
    return Scenario(beam=beam, atom=atom, grid=grid, label=name)


def validate_scenario(s: Scenario) -> ValidityReport:
    """Check the physical realization windows; pure, warnings only."""
    gamma = s.atom.linewidth
    rotating = s.beam.freq_shift != 0.0
    om_rot = rotation_frequency(s.beam)
    warnings = []
    adiabatic_ok = None
    window_ok = None
    if rotating:
        lo, hi = gamma, s.beam.peak_rabi
        adiabatic_ok = lo < abs(om_rot) < hi
        if not adiabatic_ok:
            warnings.append(
                "rotation frequency |%.3g| rad/s outside the coherent window "
                "(Gamma=%.3g, Omega0=%.3g): the fields only survive for "
                "t < 1/Gamma and adiabatic following needs Omega_rot < Omega0"
                % (om_rot, lo, hi))
        wlo = 2.0 * abs(s.beam.winding) * gamma
        whi = 20.0 * abs(s.beam.winding) * gamma
        window_ok = wlo < abs(s.beam.freq_shift) < whi
        if not window_ok:
            warnings.append(
                "frequency shift %.3g rad/s outside (2|l|Gamma, 20|l|Gamma) "
                "= (%.3g, %.3g)" % (s.beam.freq_shift, wlo, whi))
    large_det = abs(s.atom.detuning) >= 5.0 * s.beam.peak_rabi
    if not large_det:
        warnings.append(
            "detuning %.3g rad/s is below 5 Omega0: the large-detuning "
            "closed forms will be inaccurate" % s.atom.detuning)
    return ValidityReport(rotating=rotating, omega_rot=om_rot,
                          interaction_time_limit=1.0 / gamma,
                          adiabatic_window_ok=adiabatic_ok,
                          freq_shift_window_ok=window_ok,
                          large_detuning_ok=large_det, warnings=warnings)


@dataclass
class FieldFrame:
    """One sampled frame: flat arrays in the deterministic grid traversal
    order (r outer, then phi, then z)."""

    label: str
    name: str      # B, E, A, V, rabi
    unit: str
    t: float
    n_r: int
    n_phi: int
    n_z: int
    r: np.ndarray
    phi: np.ndarray
    z: np.ndarray
    values: np.ndarray  # (n, 3) for vectors, (n,) for scalars

    def is_vector(self) -> bool:
        return self.values.ndim == 2


def default_workers() -> int:
    env = os.environ.get("GAUGEWHEEL_THREADS", "").strip()
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise ConfigError("GAUGEWHEEL_THREADS must be an integer")
    return 1


def sample_grid(s: Scenario, field_name: str, t: float = 0.0,
                workers: int | None = None) -> FieldFrame:
    """Evaluate one field over the scenario grid at time t.

    Points are independent; the flat index space is cut into fixed-size
    chunks evaluated by a worker pool, so the result is bit-identical for
    any worker count.
    """
    if field_name not in FIELDS:
        raise ConfigError("field must be one of %s" % ", ".join(sorted(FIELDS)))
    fid = FIELDS[field_name]
    nw = default_workers() if workers is None else max(1, int(workers))

    rv = s.grid.r_values()
    pv = s.grid.phi_values()
    zv = s.grid.z_values()
    n = len(rv) * len(pv) * len(zv)
    # traversal order: r outer, phi inner, then z
    rr = np.repeat(rv, len(pv) * len(zv))
    pp = np.tile(np.repeat(pv, len(zv)), len(rv))
    zz = np.tile(zv, len(rv) * len(pv))

    P = pack_params(s.beam, s.atom)
    out = np.empty((n, 3), dtype=np.float64)
    chunk = 2048
    spans = [(i, min(i + chunk, n)) for i in range(0, n, chunk)]

    def run(span):
        i0, i1 = span
        kernels.eval_block(P, fid, rr[i0:i1], pp[i0:i1], zz[i0:i1], t,
                           out[i0:i1])

    if nw > 1 and len(spans) > 1:
        with ThreadPoolExecutor(max_workers=nw) as pool:
            list(pool.map(run, spans))
    else:
        for span in spans:
            run(span)

    vals = out if field_name in VECTOR_FIELDS else out[:, 0].copy()
    return FieldFrame(label=s.label, name=field_name,
                      unit=FIELD_UNITS[field_name], t=t,
                      n_r=len(rv), n_phi=len(pv), n_z=len(zv),
                      r=rr, phi=pp, z=zz, values=vals)


# --- scenario file round-trip ------------------------------------------------

def _beam_to_dict(b: BeamConfig) -> dict:
    return {"wavelength_m": b.wavelength, "waist_m": b.waist,
            "winding": b.winding, "radial_index": b.radial_index,
            "peak_rabi_rad_per_s": b.peak_rabi,
            "freq_shift_rad_per_s": b.freq_shift,
            "norm_convention": b.norm_convention}


def _atom_to_dict(a: AtomConfig) -> dict:
    return {"linewidth_rad_per_s": a.linewidth,
            "detuning_rad_per_s": a.detuning, "mass_kg": a.mass,
            "fictitious_charge_c": a.fictitious_charge,
            "transition_label": a.transition_label,
            "saturation_intensity_w_per_m2": a.saturation_intensity}


def _grid_to_dict(g: GridSpec) -> dict:
    return {"r_min_m": g.r_min, "r_max_m": g.r_max, "n_r": g.n_r,
            "phi_min_rad": g.phi_min, "phi_max_rad": g.phi_max,
            "n_phi": g.n_phi, "z_min_m": g.z_min, "z_max_m": g.z_max,
            "n_z": g.n_z, "t_min_s": g.t_min, "t_max_s": g.t_max,
            "n_t": g.n_t}


def scenario_to_dict(s: Scenario) -> dict:
    return {"label": s.label, "beam": _beam_to_dict(s.beam),
            "atom": _atom_to_dict(s.atom), "grid": _grid_to_dict(s.grid)}


def _rel_or_abs(section: dict, key: str, gamma: float, default=None) -> float:
    """Read key_rad_per_s or key_in_linewidths (Gamma-relative)."""
    abs_key = key + "_rad_per_s"
    rel_key = key + "_in_linewidths"
    if abs_key in section and rel_key in section:
        raise ConfigError("give %s or %s, not both" % (abs_key, rel_key))
    if abs_key in section:
        return float(section[abs_key])
    if rel_key in section:
        return float(section[rel_key]) * gamma
    if default is None:
        raise ConfigError("missing %s (or %s)" % (abs_key, rel_key))
    return default


def scenario_from_dict(doc: dict) -> Scenario:
    try:
        bsec = doc["beam"]
        asec = doc["atom"]
        gsec = doc["grid"]
    except KeyError as exc:
        raise ConfigError("scenario document lacks section %s" % exc)
    gamma = float(asec["linewidth_rad_per_s"])
    beam = BeamConfig(
        wavelength=float(bsec["wavelength_m"]), waist=float(bsec["waist_m"]),
        winding=int(bsec["winding"]),
        radial_index=int(bsec.get("radial_index", 0)),
        peak_rabi=_rel_or_abs(bsec, "peak_rabi", gamma),
        freq_shift=_rel_or_abs(bsec, "freq_shift", gamma, default=0.0),
        norm_convention=bsec.get("norm_convention", "printed"))
    atom = AtomConfig(
        linewidth=gamma,
        detuning=_rel_or_abs(asec, "detuning", gamma),
        mass=float(asec["mass_kg"]),
        fictitious_charge=float(asec.get("fictitious_charge_c",
                                         constants.E_CHARGE)),
        transition_label=asec.get("transition_label", ""),
        saturation_intensity=float(asec.get("saturation_intensity_w_per_m2", 1.0)))
    grid = GridSpec(
        r_min=float(gsec["r_min_m"]), r_max=float(gsec["r_max_m"]),
        n_r=int(gsec["n_r"]), phi_min=float(gsec.get("phi_min_rad", 0.0)),
        phi_max=float(gsec.get("phi_max_rad", 2.0 * math.pi)),
        n_phi=int(gsec.get("n_phi", 1)), z_min=float(gsec.get("z_min_m", 0.0)),
        z_max=float(gsec.get("z_max_m", 0.0)), n_z=int(gsec.get("n_z", 1)),
        t_min=float(gsec.get("t_min_s", 0.0)),
        t_max=float(gsec.get("t_max_s", 0.0)), n_t=int(gsec.get("n_t", 1)))
    return Scenario(beam=beam, atom=atom, grid=grid,
                    label=doc.get("label", ""))


def save_scenario(s: Scenario, path: str):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(scenario_to_dict(s), fh, indent=2, sort_keys=True)
        fh.write("\n")


def load_scenario(path: str) -> Scenario:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise ConfigError("cannot read scenario file: %s" % exc)
    except json.JSONDecodeError as exc:
        raise ConfigError("scenario file is not valid JSON: %s" % exc)
    return scenario_from_dict(doc)
