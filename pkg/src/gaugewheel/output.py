"""Deterministic file output: field CSVs, polyline CSVs, run manifests.

Numbers are printed with 17 significant digits so reruns and round-trips
are byte-stable; phi is canonicalized to [0, 2pi) on output only.
"""

import hashlib
import json
import math
from dataclasses import dataclass, field

from . import __version__
from .scenario import FIELD_OUTPUT_SCALE, FieldFrame, scenario_to_dict

VECTOR_HEADER = "r_m,phi_rad,z_m,t_s,v_r,v_phi,v_z,magnitude"
SCALAR_HEADER = "r_m,phi_rad,z_m,t_s,value"


def _fmt(x: float) -> str:
    return "%.17g" % x


def _wrap_phi(phi: float) -> float:
    return phi % (2.0 * math.pi)


def frame_csv_text(frame: FieldFrame) -> str:
    """Render a sampled frame as CSV (B in mT, E in V/m)."""
    scale = FIELD_OUTPUT_SCALE[frame.name]
    lines = ["# gaugewheel field=%s unit=%s label=%s t_s=%s grid=%dx%dx%d"
             % (frame.name, frame.unit, frame.label or "-", _fmt(frame.t),
                frame.n_r, frame.n_phi, frame.n_z)]
    tcol = _fmt(frame.t)
    if frame.is_vector():
        lines.append(VECTOR_HEADER)
        for i in range(len(frame.r)):
            vr = frame.values[i, 0] * scale
            vp = frame.values[i, 1] * scale
            vz = frame.values[i, 2] * scale
            mag = math.sqrt(vr * vr + vp * vp + vz * vz)
            lines.append(",".join((_fmt(frame.r[i]), _fmt(_wrap_phi(frame.phi[i])),
                                   _fmt(frame.z[i]), tcol, _fmt(vr), _fmt(vp),
                                   _fmt(vz), _fmt(mag))))
    else:
        lines.append(SCALAR_HEADER)
        for i in range(len(frame.r)):
            lines.append(",".join((_fmt(frame.r[i]), _fmt(_wrap_phi(frame.phi[i])),
                                   _fmt(frame.z[i]), tcol,
                                   _fmt(frame.values[i] * scale))))
    return "\n".join(lines) + "\n"


def write_frame_csv(frame: FieldFrame, path: str):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(frame_csv_text(frame))


def lines_csv_text(polylines: list) -> str:
    """Render traced field lines (one polyline per seed)."""
    lines = ["line_id,point_index,r,phi,z"]
    for lid, poly in enumerate(polylines):
        for idx, pt in enumerate(poly.points):
            lines.append(",".join((str(lid), str(idx), _fmt(pt.r),
                                   _fmt(_wrap_phi(pt.phi)), _fmt(pt.z))))
    return "\n".join(lines) + "\n"


def write_lines_csv(polylines: list, path: str):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(lines_csv_text(polylines))


def sha256_of(path: str) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for block in iter(lambda: fh.read(65536), b""):
            h.update(block)
    return h.hexdigest()


@dataclass
class RunManifest:
    """Record of one CLI run: inputs, seed and output digests.

    The timestamp documents the run; the digests are reproducible for a
    fixed scenario and seed.
    """

    command: str
    scenario: dict
    seed: int
    timestamp: str
    outputs: list = field(default_factory=list)

    def add_output(self, path: str):
        self.outputs.append({"path": path, "sha256": sha256_of(path)})

    def to_json(self) -> str:
        doc = {"tool": "gaugewheel %s" % __version__, "command": self.command,
               "scenario": self.scenario, "seed": self.seed,
               "timestamp": self.timestamp, "outputs": self.outputs}
        return json.dumps(doc, indent=2, sort_keys=True) + "\n"

    def write(self, path: str):
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(self.to_json())


def manifest_for(command: str, scenario, seed: int, timestamp: str) -> RunManifest:
    return RunManifest(command=command, scenario=scenario_to_dict(scenario),
                       seed=seed, timestamp=timestamp)
