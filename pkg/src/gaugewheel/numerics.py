"""Finite-difference vector-calculus oracle, comparison harness, line tracer.

Everything here treats fields as opaque callables of a FieldPoint, so the
oracles stay independent of the analytic routes they check.  Cylindrical
derivatives are returned in the orthonormal frame: the phi slot of a
gradient is (1/r) d/dphi.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import AxisProximityError, ConfigError, EmptyRegionError, NullFieldError
from .gauge import CylVec
from .optics import FieldPoint

SCHEMES = ("central-2nd", "central-4th", "richardson")


@dataclass(frozen=True)
class StepPolicy:
    """Finite-difference stepping policy.

    h0 is a dimensionless fraction: the actual step per axis is
    max(|coordinate|, length_scale) * h0 (h0 radians for phi, ht seconds for
    time).  "richardson" extrapolates two central-2nd estimates (h, h/2).
    """

    h0: float = 1e-5
    scheme: str = "central-4th"
    ht: float = 1e-9
    length_scale: float = 1e-6

    def __post_init__(self):
        if self.h0 <= 0.0 or self.ht <= 0.0 or self.length_scale <= 0.0:
            raise ConfigError("h0, ht and length_scale must be > 0")
        if self.scheme not in SCHEMES:
            raise ConfigError("scheme must be one of %s" % (SCHEMES,))

    def stencil_extent(self) -> int:
        return 2 if self.scheme == "central-4th" else 1


def _d1(sample, h, scheme):
    """Derivative of a 1-argument callable at 0 with step h."""
    if scheme == "central-2nd":
        return (sample(h) - sample(-h)) / (2.0 * h)
    if scheme == "central-4th":
        return (-sample(2.0 * h) + 8.0 * sample(h)
                - 8.0 * sample(-h) + sample(-2.0 * h)) / (12.0 * h)
    # richardson: two central-2nd estimates at h and h/2
    d_h = (sample(h) - sample(-h)) / (2.0 * h)
    d_h2 = (sample(0.5 * h) - sample(-0.5 * h)) / h
    return (4.0 * d_h2 - d_h) / 3.0


def _steps(point: FieldPoint, policy: StepPolicy):
    ls = policy.length_scale
    hr = max(point.r, ls) * policy.h0
    hp = policy.h0
    hz = max(abs(point.z), ls) * policy.h0
    return hr, hp, hz


def _check_axis(point: FieldPoint, hr: float, policy: StepPolicy):
    if point.r - policy.stencil_extent() * hr <= 0.0:
        raise AxisProximityError(
            "FD stencil at r=%.3g with step %.3g crosses the axis" % (point.r, hr))


def fd_gradient(f, point: FieldPoint, policy: StepPolicy) -> CylVec:
    """(d/dr, (1/r) d/dphi, d/dz) of a scalar field callable."""
    hr, hp, hz = _steps(point, policy)
    _check_axis(point, hr, policy)
    r, phi, z, t = point.r, point.phi, point.z, point.t
    sch = policy.scheme
    dr = _d1(lambda h: f(FieldPoint(r + h, phi, z, t)), hr, sch)
    dp = _d1(lambda h: f(FieldPoint(r, phi + h, z, t)), hp, sch) / r
    dz = _d1(lambda h: f(FieldPoint(r, phi, z + h, t)), hz, sch)
    return CylVec(dr, dp, dz)


def fd_curl(F, point: FieldPoint, policy: StepPolicy) -> CylVec:
    """Cylindrical curl of a vector field callable (orthonormal components)."""
    hr, hp, hz = _steps(point, policy)
    _check_axis(point, hr, policy)
    r, phi, z, t = point.r, point.phi, point.z, point.t
    sch = policy.scheme

    def at(rr=r, pp=phi, zz=z):
        return F(FieldPoint(rr, pp, zz, t))

    dfz_dp = _d1(lambda h: at(pp=phi + h).v_z, hp, sch) / r
    dfp_dz = _d1(lambda h: at(zz=z + h).v_phi, hz, sch)
    dfr_dz = _d1(lambda h: at(zz=z + h).v_r, hz, sch)
    dfz_dr = _d1(lambda h: at(rr=r + h).v_z, hr, sch)
    drfp_dr = _d1(lambda h: (r + h) * at(rr=r + h).v_phi, hr, sch)
    dfr_dp = _d1(lambda h: at(pp=phi + h).v_r, hp, sch)
    return CylVec(dfz_dp - dfp_dz,
                  dfr_dz - dfz_dr,
                  (drfp_dr - dfr_dp) / r)


def fd_divergence(F, point: FieldPoint, policy: StepPolicy) -> float:
    """Cylindrical divergence of a vector field callable."""
    hr, hp, hz = _steps(point, policy)
    _check_axis(point, hr, policy)
    r, phi, z, t = point.r, point.phi, point.z, point.t
    sch = policy.scheme
    drfr_dr = _d1(lambda h: (r + h) * F(FieldPoint(r + h, phi, z, t)).v_r, hr, sch)
    dfp_dp = _d1(lambda h: F(FieldPoint(r, phi + h, z, t)).v_phi, hp, sch)
    dfz_dz = _d1(lambda h: F(FieldPoint(r, phi, z + h, t)).v_z, hz, sch)
    return drfr_dr / r + dfp_dp / r + dfz_dz


def fd_time_derivative(F, point: FieldPoint, policy: StepPolicy):
    """Central time derivative of a (scalar or vector) field callable.

    Uses policy.ht as the step; pick it well below the field's period.
    """
    r, phi, z, t = point.r, point.phi, point.z, point.t
    sch = policy.scheme
    probe = F(point)
    if isinstance(probe, CylVec):
        comps = []
        for sel in (lambda v: v.v_r, lambda v: v.v_phi, lambda v: v.v_z):
            comps.append(_d1(lambda h: sel(F(FieldPoint(r, phi, z, t + h))),
                             policy.ht, sch))
        return CylVec(*comps)
    return _d1(lambda h: F(FieldPoint(r, phi, z, t + h)), policy.ht, sch)


@dataclass(frozen=True)
class SampleRegion:
    """Deterministic pseudo-random sampling region (fixed seed).

    z and t are drawn uniformly from (z_min, z_max) / (t_min, t_max) unless
    the ranges are degenerate.  ``exclude`` drops points (e.g. the
    |cos(l phi - dw t/2)| bands needed when comparing raw trig forms).
    """

    r_min: float
    r_max: float
    phi_min: float = 0.0
    phi_max: float = 2.0 * math.pi
    z_min: float = 0.0
    z_max: float = 0.0
    t_min: float = 0.0
    t_max: float = 0.0
    n_points: int = 1000
    seed: int = 12345
    exclude: object = None

    def points(self):
        if not (0.0 < self.r_min < self.r_max) or self.n_points < 1:
            raise EmptyRegionError("empty or invalid sampling region")
        rng = np.random.default_rng(self.seed)
        pts = []
        attempts = 0
        while len(pts) < self.n_points:
            attempts += 1
            if attempts > 1000 * self.n_points:
                raise EmptyRegionError("exclusion predicate rejects the region")
            r = self.r_min + (self.r_max - self.r_min) * rng.random()
            phi = self.phi_min + (self.phi_max - self.phi_min) * rng.random()
            z = self.z_min + (self.z_max - self.z_min) * rng.random()
            t = self.t_min + (self.t_max - self.t_min) * rng.random()
            pt = FieldPoint(r, phi, z, t)
            if self.exclude is not None and self.exclude(pt):
                continue
            pts.append(pt)
        return pts


@dataclass
class ComparisonReport:
    """Result of sampling two field routes over a region.

    max_rel_error uses per-point denominators max(|reference|, floor) with
    floor = 1e-12 * field scale; max_norm_error normalizes by the field
    scale (max |reference| over the sample), the right metric for
    expansion-order bounds on fields that cross zero.
    """

    name: str
    n_points: int
    max_rel_error: float
    max_abs_error: float
    max_norm_error: float
    field_scale: float
    argmax_point: FieldPoint
    component_stats: dict = field(default_factory=dict)

    def to_text(self) -> str:
        lines = ["comparison %s over %d points" % (self.name, self.n_points),
                 "  field scale        %.17g" % self.field_scale,
                 "  max abs error      %.17g" % self.max_abs_error,
                 "  max rel error      %.17g" % self.max_rel_error,
                 "  max norm error     %.17g" % self.max_norm_error,
                 "  argmax point       r=%.17g phi=%.17g z=%.17g t=%.17g"
                 % (self.argmax_point.r, self.argmax_point.phi,
                    self.argmax_point.z, self.argmax_point.t)]
        for comp, st in self.component_stats.items():
            lines.append("  [%s] max_abs=%.17g max_norm=%.17g"
                         % (comp, st["max_abs"], st["max_norm"]))
        return "\n".join(lines)

    def to_kv(self) -> str:
        return ("name=%s n=%d max_rel=%.17g max_abs=%.17g max_norm=%.17g scale=%.17g"
                % (self.name, self.n_points, self.max_rel_error,
                   self.max_abs_error, self.max_norm_error, self.field_scale))


def _as_tuple(v):
    if isinstance(v, CylVec):
        return v.as_tuple()
    if isinstance(v, (int, float)):
        return (float(v),)
    return tuple(v)


def compare(analytic, reference, region: SampleRegion,
            name: str = "comparison") -> ComparisonReport:
    """Sample two field routes and report their worst disagreement.

    Deterministic for a fixed region (seed included); the relative error
    denominator is floored at 1e-12 x field scale to keep zeros of the
    reference from dominating the report.
    """
    pts = region.points()
    vals_a = [_as_tuple(analytic(p)) for p in pts]
    vals_r = [_as_tuple(reference(p)) for p in pts]
    ncomp = len(vals_r[0])
    comp_names = ("v_r", "v_phi", "v_z") if ncomp == 3 else ("value",)

    scale = max((math.sqrt(sum(x * x for x in v)) for v in vals_r), default=0.0)
    floor = 1e-12 * scale if scale > 0.0 else 1e-300

    max_rel = max_abs = max_norm = 0.0
    argmax = pts[0]
    comp_stats = {c: {"max_abs": 0.0, "max_norm": 0.0} for c in comp_names}
    for pt, va, vr in zip(pts, vals_a, vals_r):
        diff = math.sqrt(sum((a - b) ** 2 for a, b in zip(va, vr)))
        ref = math.sqrt(sum(b * b for b in vr))
        rel = diff / max(ref, floor)
        if rel > max_rel:
            max_rel = rel
            argmax = pt
        max_abs = max(max_abs, diff)
        max_norm = max(max_norm, diff / scale if scale > 0.0 else diff)
        for c, a, b in zip(comp_names, va, vr):
            d = abs(a - b)
            comp_stats[c]["max_abs"] = max(comp_stats[c]["max_abs"], d)
            if scale > 0.0:
                comp_stats[c]["max_norm"] = max(comp_stats[c]["max_norm"], d / scale)
    return ComparisonReport(name=name, n_points=len(pts), max_rel_error=max_rel,
                            max_abs_error=max_abs, max_norm_error=max_norm,
                            field_scale=scale, argmax_point=argmax,
                            component_stats=comp_stats)


@dataclass
class Polyline:
    """Traced field line: ordered points at fixed t, plus bookkeeping."""

    points: list
    arc_length: float
    termination_reason: str  # max-steps | left-domain | null-field


def trace_field_line(F, seed: FieldPoint, step: float, max_steps: int,
                     r_max: float, z_max: float,
                     null_threshold: float | None = None) -> Polyline:
    """Integrate dx/ds = F/|F| from the seed with classical RK4.

    The integration runs in a Cartesian embedding (no 1/r metric terms, no
    phi singularity) and each accepted point is re-expressed in cylindrical
    coordinates.  Terminates on max_steps, leaving the domain
    (r > r_max or |z| > z_max), or |F| dropping below the null threshold
    (default 1e-12 x |F(seed)|).
    """
    f0 = F(seed)
    m0 = f0.magnitude()
    if m0 == 0.0 or not math.isfinite(m0):
        raise NullFieldError("zero or non-finite field at the seed point")
    null = 1e-12 * m0 if null_threshold is None else null_threshold
    t = seed.t

    def direction(xyz):
        r = math.hypot(xyz[0], xyz[1])
        phi = math.atan2(xyz[1], xyz[0])
        v = F(FieldPoint(r, phi, xyz[2], t))
        mag = v.magnitude()
        if mag < null or not math.isfinite(mag):
            return None
        cp, sp = math.cos(phi), math.sin(phi)
        return ((v.v_r * cp - v.v_phi * sp) / mag,
                (v.v_r * sp + v.v_phi * cp) / mag,
                v.v_z / mag)

    def to_cyl(xyz):
        phi = math.atan2(xyz[1], xyz[0]) % (2.0 * math.pi)
        return FieldPoint(math.hypot(xyz[0], xyz[1]), phi, xyz[2], t)

    x = (seed.r * math.cos(seed.phi), seed.r * math.sin(seed.phi), seed.z)
    pts = [to_cyl(x)]
    arc = 0.0
    reason = "max-steps"
    for _ in range(max_steps):
        k1 = direction(x)
        if k1 is None:
            reason = "null-field"
            break
        k2 = direction((x[0] + 0.5 * step * k1[0], x[1] + 0.5 * step * k1[1],
                        x[2] + 0.5 * step * k1[2]))
        k3 = None if k2 is None else direction(
            (x[0] + 0.5 * step * k2[0], x[1] + 0.5 * step * k2[1],
             x[2] + 0.5 * step * k2[2]))
        k4 = None if k3 is None else direction(
            (x[0] + step * k3[0], x[1] + step * k3[1], x[2] + step * k3[2]))
        if k2 is None or k3 is None or k4 is None:
            reason = "null-field"
            break
        x = (x[0] + step / 6.0 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]),
             x[1] + step / 6.0 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1]),
             x[2] + step / 6.0 * (k1[2] + 2.0 * k2[2] + 2.0 * k3[2] + k4[2]))
        pt = to_cyl(x)
        pts.append(pt)
        arc += step
        if pt.r > r_max or abs(pt.z) > z_max:
            reason = "left-domain"
            break
    return Polyline(points=pts, arc_length=arc, termination_reason=reason)


def bisect_root(f, a: float, b: float, rtol: float = 1e-12,
                max_iter: int = 200) -> float:
    """Root of a scalar function by bisection; f(a) and f(b) must bracket."""
    fa, fb = f(a), f(b)
    if fa == 0.0:
        return a
    if fb == 0.0:
        return b
    if fa * fb > 0.0:
        raise ConfigError("bisection interval does not bracket a root")
    for _ in range(max_iter):
        mid = 0.5 * (a + b)
        fm = f(mid)
        if fm == 0.0 or (b - a) <= rtol * abs(mid):
            return mid
        if fa * fm < 0.0:
            b, fb = mid, fm
        else:
            a, fa = mid, fm
    return 0.5 * (a + b)
