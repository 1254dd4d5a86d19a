# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twin of gaugewheel.kernels._pykern.

Same functions, same formulas, same parameter tuple; keep the two modules
in lockstep (tests/test_kernels_backend.py cross-checks them).  Operation
order matches the pure-Python code so results agree to the last few ulp.
"""

from libc.math cimport atan2, cos, exp, fabs, floor, fmod, sin, sqrt, tan

import numpy as np

cdef double TWO_PI = 6.283185307179586476925287

BACKEND = "cython"

FIELD_B = 1
FIELD_E = 2
FIELD_A = 3
FIELD_V = 4
FIELD_RABI = 5

cdef struct Params:
    double l
    double m
    double p
    double w0
    double zr
    double k
    double amp
    double dw
    double delta
    double hb2q
    double hb28m
    double invq

cdef Params _unpack(tuple P):
    cdef Params s
    s.l = P[0]; s.m = P[1]; s.p = P[2]; s.w0 = P[3]
    s.zr = P[4]; s.k = P[5]; s.amp = P[6]; s.dw = P[7]
    s.delta = P[8]; s.hb2q = P[9]; s.hb28m = P[10]; s.invq = P[11]
    return s


cdef double _laguerre(int p, int alpha, double x) noexcept nogil:
    cdef double lm1, lcur, tmp
    cdef int n
    if p == 0:
        return 1.0
    lm1 = 1.0
    lcur = 1.0 + alpha - x
    for n in range(2, p + 1):
        tmp = ((2.0 * n - 1.0 + alpha - x) * lcur - (n - 1.0 + alpha) * lm1) / n
        lm1 = lcur
        lcur = tmp
    return lcur


def laguerre(p, alpha, x):
    """Associated Laguerre polynomial L_p^alpha(x) (stable recurrence)."""
    return _laguerre(int(p), int(alpha), float(x))


cdef double _rot_phase(double dw, double t) noexcept nogil:
    # nearest integer with half-to-even ties, matching Python round()
    cdef double turns, fl, re, frac
    if dw == 0.0 or t == 0.0:
        return 0.0
    turns = (0.5 * dw * t) / TWO_PI
    fl = floor(turns)
    re = turns - fl
    if re > 0.5:
        fl += 1.0
    elif re == 0.5:
        if fmod(fl, 2.0) != 0.0:
            fl += 1.0
    frac = turns - fl
    if fabs(frac) < 1e-12:
        return 0.0
    return TWO_PI * frac


def rot_phase(dw, t):
    """Rotation phase dw*t/2 reduced modulo full turns (1e-12-turn snap)."""
    return _rot_phase(float(dw), float(t))


cdef double _envelope(Params* s, double r, double z) noexcept nogil:
    cdef double w2 = s.w0 * s.w0 * (1.0 + (z / s.zr) * (z / s.zr))
    cdef double x = 2.0 * r * r / w2
    cdef double u = r * sqrt(2.0) / sqrt(w2)
    return s.amp * u ** <int>s.m * _laguerre(<int>s.p, <int>s.m, x) * exp(-0.5 * x)


cdef void _envelope_d2(Params* s, double r, double z, double* out) noexcept nogil:
    """out = (O, Or, Oz, Orr, Orz, Ozz)."""
    cdef int m = <int>s.m
    cdef int p = <int>s.p
    cdef double w0 = s.w0, zr = s.zr, amp = s.amp
    cdef double w2 = w0 * w0 * (1.0 + (z / zr) * (z / zr))
    cdef double w = sqrt(w2)
    cdef double wp = w0 * w0 * z / (zr * zr * w)
    cdef double wpp = (w0 * w0 / (zr * zr * w)) * (1.0 - z * wp / w)

    cdef double x = 2.0 * r * r / w2
    cdef double x_r = 4.0 * r / w2
    cdef double x_z = -2.0 * x * wp / w
    cdef double x_rr = 4.0 / w2
    cdef double x_rz = -2.0 * x_r * wp / w
    cdef double x_zz = -2.0 * x_z * wp / w - 2.0 * x * (wpp / w - (wp / w) * (wp / w))

    cdef double a = (r * sqrt(2.0) / w) ** m
    cdef double a_r = a * m / r
    cdef double a_z = -a * m * wp / w
    cdef double a_rr = a * m * (m - 1.0) / (r * r)
    cdef double a_rz = -a * m * m * wp / (r * w)
    cdef double a_zz = a * (-m * wpp / w + m * (wp / w) ** 2 + (m * wp / w) ** 2)

    cdef double g = exp(-0.5 * x)
    cdef double g_r = -0.5 * x_r * g
    cdef double g_z = -0.5 * x_z * g
    cdef double g_rr = g * (0.25 * x_r * x_r - 0.5 * x_rr)
    cdef double g_rz = g * (0.25 * x_r * x_z - 0.5 * x_rz)
    cdef double g_zz = g * (0.25 * x_z * x_z - 0.5 * x_zz)

    cdef double lag = _laguerre(p, m, x)
    cdef double ld1 = -_laguerre(p - 1, m + 1, x) if p >= 1 else 0.0
    cdef double ld2 = _laguerre(p - 2, m + 2, x) if p >= 2 else 0.0
    cdef double l_r = ld1 * x_r
    cdef double l_z = ld1 * x_z
    cdef double l_rr = ld2 * x_r * x_r + ld1 * x_rr
    cdef double l_rz = ld2 * x_r * x_z + ld1 * x_rz
    cdef double l_zz = ld2 * x_z * x_z + ld1 * x_zz

    out[0] = amp * a * lag * g
    out[1] = amp * (a_r * lag * g + a * l_r * g + a * lag * g_r)
    out[2] = amp * (a_z * lag * g + a * l_z * g + a * lag * g_z)
    out[3] = amp * (a_rr * lag * g + a * l_rr * g + a * lag * g_rr
                    + 2.0 * (a_r * l_r * g + a_r * lag * g_r + a * l_r * g_r))
    out[4] = amp * (a_rz * lag * g + a * l_rz * g + a * lag * g_rz
                    + a_r * l_z * g + a_z * l_r * g + a_r * lag * g_z
                    + a_z * lag * g_r + a * l_r * g_z + a * l_z * g_r)
    out[5] = amp * (a_zz * lag * g + a * l_zz * g + a * lag * g_zz
                    + 2.0 * (a_z * l_z * g + a_z * lag * g_z + a * l_z * g_z))


cdef double _ferris_phase(Params* s, double r, double z) noexcept nogil:
    cdef double gouy = 2.0 * s.p + s.m + 1.0
    return (s.k * z - gouy * atan2(z, s.zr)
            + s.k * r * r * z / (2.0 * (z * z + s.zr * s.zr)))


cdef void _ferris_d2(Params* s, double r, double z, double* out) noexcept nogil:
    """out = (F, Fr, Fz, Frr, Frz, Fzz)."""
    cdef double zr = s.zr, k = s.k
    cdef double gouy = 2.0 * s.p + s.m + 1.0
    cdef double d = z * z + zr * zr
    out[0] = k * z - gouy * atan2(z, zr) + k * r * r * z / (2.0 * d)
    out[1] = k * r * z / d
    out[2] = k - gouy * zr / d + 0.5 * k * r * r * (zr * zr - z * z) / (d * d)
    out[3] = k * z / d
    out[4] = k * r * (zr * zr - z * z) / (d * d)
    out[5] = (2.0 * gouy * z * zr / (d * d)
              - k * r * r * z * (3.0 * zr * zr - z * z) / (d * d * d))


def envelope(tuple P, r, z):
    """Rabi envelope Omega(r, z)."""
    cdef Params s = _unpack(P)
    return _envelope(&s, float(r), float(z))


def envelope_d1(tuple P, r, z):
    """(Omega, dOmega/dr, dOmega/dz)."""
    cdef Params s = _unpack(P)
    cdef double o[6]
    _envelope_d2(&s, float(r), float(z), o)
    return o[0], o[1], o[2]


def envelope_d2(tuple P, r, z):
    """(O, Or, Oz, Orr, Orz, Ozz)."""
    cdef Params s = _unpack(P)
    cdef double o[6]
    _envelope_d2(&s, float(r), float(z), o)
    return o[0], o[1], o[2], o[3], o[4], o[5]


def ferris_phase(tuple P, r, z):
    """Common phase phi_F(r, z)."""
    cdef Params s = _unpack(P)
    return _ferris_phase(&s, float(r), float(z))


def ferris_d1(tuple P, r, z):
    """(phi_F, d/dr, d/dz)."""
    cdef Params s = _unpack(P)
    cdef double f[6]
    _ferris_d2(&s, float(r), float(z), f)
    return f[0], f[1], f[2]


def ferris_d2(tuple P, r, z):
    """(F, Fr, Fz, Frr, Frz, Fzz)."""
    cdef Params s = _unpack(P)
    cdef double f[6]
    _ferris_d2(&s, float(r), float(z), f)
    return f[0], f[1], f[2], f[3], f[4], f[5]


cdef double _rabi(Params* s, double r, double phi, double z, double t) noexcept nogil:
    cdef double psi = s.l * phi - _rot_phase(s.dw, t)
    return _envelope(s, r, z) * cos(psi)


def rabi(tuple P, r, phi, z, t):
    """Modulated Rabi frequency Omega(r,z) cos(l phi - dw t/2)."""
    cdef Params s = _unpack(P)
    return _rabi(&s, float(r), float(phi), float(z), float(t))


def grad_rabi(tuple P, r, phi, z, t):
    """Orthonormal cylindrical gradient of the modulated Rabi frequency."""
    cdef Params s = _unpack(P)
    cdef double rr = float(r), pp = float(phi), zz = float(z), tt = float(t)
    cdef double psi = s.l * pp - _rot_phase(s.dw, tt)
    cdef double c = cos(psi), sn = sin(psi)
    cdef double o[6]
    _envelope_d2(&s, rr, zz, o)
    return c * o[1], -(s.l / rr) * o[0] * sn, c * o[2]


cdef void _vector_potential(Params* s, double r, double phi, double z,
                            double t, double* out) noexcept nogil:
    cdef double ot = _rabi(s, r, phi, z, t)
    cdef double u = s.delta * s.delta + ot * ot
    cdef double cos_t = s.delta / sqrt(u)
    cdef double f[6]
    _ferris_d2(s, r, z, f)
    cdef double fac = s.hb2q * (cos_t - 1.0)
    out[0] = fac * f[1]
    out[1] = 0.0
    out[2] = fac * f[2]


def vector_potential(tuple P, r, phi, z, t):
    """A = (hbar/2q)(cos Theta - 1) grad(phi_F), per unit charge."""
    cdef Params s = _unpack(P)
    cdef double a[3]
    _vector_potential(&s, float(r), float(phi), float(z), float(t), a)
    return a[0], a[1], a[2]


cdef void _da_dt(Params* s, double r, double phi, double z, double t,
                 double* out) noexcept nogil:
    cdef double psi = s.l * phi - _rot_phase(s.dw, t)
    cdef double c = cos(psi), sn = sin(psi)
    cdef double o = _envelope(s, r, z)
    cdef double ot = o * c
    cdef double u = s.delta * s.delta + ot * ot
    cdef double dcos_dt = -s.delta * ot / (u * sqrt(u)) * (o * sn * 0.5 * s.dw)
    cdef double f[6]
    _ferris_d2(s, r, z, f)
    cdef double fac = s.hb2q * dcos_dt
    out[0] = fac * f[1]
    out[1] = 0.0
    out[2] = fac * f[2]


def da_dt(tuple P, r, phi, z, t):
    """Analytic time derivative of the vector potential."""
    cdef Params s = _unpack(P)
    cdef double a[3]
    _da_dt(&s, float(r), float(phi), float(z), float(t), a)
    return a[0], a[1], a[2]


cdef double _scalar_potential(Params* s, double r, double phi, double z,
                              double t) noexcept nogil:
    cdef double psi = s.l * phi - _rot_phase(s.dw, t)
    cdef double c = cos(psi), sn = sin(psi)
    cdef double o[6]
    cdef double f[6]
    _envelope_d2(s, r, z, o)
    _ferris_d2(s, r, z, f)
    cdef double ot = o[0] * c
    cdef double u = s.delta * s.delta + ot * ot
    cdef double ll = s.l * s.l
    cdef double g1 = c * c * (o[1] * o[1] + o[2] * o[2]) + (ll / (r * r)) * o[0] * o[0] * sn * sn
    cdef double g2 = f[1] * f[1] + f[2] * f[2]
    return s.hb28m * ((s.delta * s.delta / (u * u)) * g1 + (ot * ot / u) * g2)


def scalar_potential(tuple P, r, phi, z, t):
    """Geometric scalar potential V (J); requires r > 0."""
    cdef Params s = _unpack(P)
    return _scalar_potential(&s, float(r), float(phi), float(z), float(t))


cdef void _grad_v(Params* s, double r, double phi, double z, double t,
                  double* out) noexcept nogil:
    cdef double ell = s.l
    cdef double psi = ell * phi - _rot_phase(s.dw, t)
    cdef double c = cos(psi), sn = sin(psi)
    cdef double o[6]
    cdef double f[6]
    _envelope_d2(s, r, z, o)
    _ferris_d2(s, r, z, f)

    cdef double ot = o[0] * c
    cdef double d2 = s.delta * s.delta
    cdef double u = d2 + ot * ot
    cdef double ll = ell * ell

    cdef double g1 = c * c * (o[1] * o[1] + o[2] * o[2]) + (ll / (r * r)) * o[0] * o[0] * sn * sn
    cdef double g2 = f[1] * f[1] + f[2] * f[2]

    cdef double s1 = d2 / (u * u)
    cdef double s2 = ot * ot / u
    cdef double s1p = -4.0 * d2 * ot / (u * u * u)
    cdef double s2p = 2.0 * d2 * ot / (u * u)

    cdef double a_r = c * o[1]
    cdef double a_p = -(ell / r) * o[0] * sn
    cdef double a_z = c * o[2]

    cdef double g1_r = (2.0 * c * c * (o[1] * o[3] + o[2] * o[4])
                        + 2.0 * ll * sn * sn * (o[0] * o[1] / (r * r) - o[0] * o[0] / (r * r * r)))
    cdef double g1_p = (2.0 * ell * sn * c / r) * ((ll / (r * r)) * o[0] * o[0] - o[1] * o[1] - o[2] * o[2])
    cdef double g1_z = (2.0 * c * c * (o[1] * o[4] + o[2] * o[5])
                        + 2.0 * (ll / (r * r)) * sn * sn * o[0] * o[2])

    cdef double g2_r = 2.0 * (f[1] * f[3] + f[2] * f[4])
    cdef double g2_z = 2.0 * (f[1] * f[4] + f[2] * f[5])

    cdef double common = s1p * g1 + s2p * g2
    cdef double pref = s.hb28m
    out[0] = pref * (common * a_r + s1 * g1_r + s2 * g2_r)
    out[1] = pref * (common * a_p + s1 * g1_p)
    out[2] = pref * (common * a_z + s1 * g1_z + s2 * g2_z)


def grad_v(tuple P, r, phi, z, t):
    """Analytic orthonormal cylindrical gradient of the scalar potential."""
    cdef Params s = _unpack(P)
    cdef double g[3]
    _grad_v(&s, float(r), float(phi), float(z), float(t), g)
    return g[0], g[1], g[2]


cdef void _b_general(Params* s, double r, double phi, double z, double t,
                     double* out) noexcept nogil:
    cdef double ell = s.l
    cdef double psi = ell * phi - _rot_phase(s.dw, t)
    cdef double c = cos(psi), sn = sin(psi)
    cdef double o[6]
    cdef double f[6]
    _envelope_d2(s, r, z, o)
    _ferris_d2(s, r, z, f)
    cdef double ot = o[0] * c
    cdef double u = s.delta * s.delta + ot * ot
    cdef double pref = -s.hb2q * s.delta * ot / (u * sqrt(u))
    cdef double a_r = c * o[1]
    cdef double a_p = -(ell / r) * o[0] * sn
    cdef double a_z = c * o[2]
    out[0] = pref * (a_p * f[2])
    out[1] = pref * (a_z * f[1] - a_r * f[2])
    out[2] = pref * (-a_p * f[1])


def b_general(tuple P, r, phi, z, t):
    """Artificial magnetic field B = (hbar/2q) grad(cos Theta) x grad(phi_F)."""
    cdef Params s = _unpack(P)
    cdef double b[3]
    _b_general(&s, float(r), float(phi), float(z), float(t), b)
    return b[0], b[1], b[2]


cdef void _e_general(Params* s, double r, double phi, double z, double t,
                     double* out) noexcept nogil:
    cdef double a[3]
    cdef double g[3]
    _da_dt(s, r, phi, z, t, a)
    _grad_v(s, r, phi, z, t, g)
    out[0] = -a[0] - s.invq * g[0]
    out[1] = -a[1] - s.invq * g[1]
    out[2] = -a[2] - s.invq * g[2]


def e_general(tuple P, r, phi, z, t):
    """Artificial electric field E = -dA/dt - grad(V)/q (analytic route)."""
    cdef Params s = _unpack(P)
    cdef double e[3]
    _e_general(&s, float(r), float(phi), float(z), float(t), e)
    return e[0], e[1], e[2]


cdef double _keff(Params* s, double r) noexcept nogil:
    cdef double gouy = 2.0 * s.p + s.m + 1.0
    return s.k - gouy / s.zr + s.k * r * r / (2.0 * s.zr * s.zr)


def b_closed_z0(tuple P, r, phi, t):
    """Closed-form B at the focal plane, regularized."""
    cdef Params s = _unpack(P)
    cdef double rr = float(r), pp = float(phi), tt = float(t)
    cdef double psi = s.l * pp - _rot_phase(s.dw, tt)
    cdef double c = cos(psi), sn = sin(psi)
    cdef double o[6]
    _envelope_d2(&s, rr, 0.0, o)
    cdef double ot = o[0] * c
    cdef double u = s.delta * s.delta + ot * ot
    cdef double ke = _keff(&s, rr)
    cdef double pref = s.hb2q * s.delta / (u * sqrt(u)) * ke
    return (pref * s.l * o[0] * o[0] * sn * c / rr,
            pref * o[0] * o[1] * c * c, 0.0)


def b_closed_z0_raw(tuple P, r, phi, t):
    """Closed-form B with the naive tan factor (test fixture)."""
    cdef Params s = _unpack(P)
    cdef double rr = float(r), pp = float(phi), tt = float(t)
    cdef double psi = s.l * pp - _rot_phase(s.dw, tt)
    cdef double c = cos(psi)
    cdef double o[6]
    _envelope_d2(&s, rr, 0.0, o)
    cdef double ot = o[0] * c
    cdef double u = s.delta * s.delta + ot * ot
    cdef double ke = _keff(&s, rr)
    cdef double pref = s.hb2q * s.delta / (u * sqrt(u)) * ke
    return (pref * s.l * ot * ot * tan(psi) / rr,
            pref * ot * ot * (o[1] / o[0]), 0.0)


def b_largedet_z0(tuple P, r, phi, t, variant):
    """Large-detuning closed B at z = 0 (variant 0 derived, 1 printed)."""
    cdef Params s = _unpack(P)
    cdef double rr = float(r), pp = float(phi), tt = float(t)
    cdef int var = int(variant)
    cdef double psi = s.l * pp - _rot_phase(s.dw, tt)
    cdef double c = cos(psi), sn = sin(psi)
    cdef double o[6]
    _envelope_d2(&s, rr, 0.0, o)
    cdef double d2 = s.delta * s.delta
    cdef double ke, hbq, dcl
    if var == 0:
        ke = _keff(&s, rr)
        return (s.hb2q * s.l * ke * o[0] * o[0] * sn * c / (d2 * rr),
                s.hb2q * ke * o[0] * o[1] * c * c / d2, 0.0)
    hbq = 2.0 * s.hb2q
    dcl = s.m / rr - 2.0 * rr / (s.w0 * s.w0)
    return (hbq * s.l * s.k * o[0] * o[0] * (2.0 * sn * c) / (TWO_PI * d2 * rr),
            hbq * s.k * o[0] * o[0] * dcl * c * c / (0.5 * TWO_PI * d2), 0.0)


def e_closed_z0(tuple P, r, phi, t):
    """Leading-order closed-form E at the focal plane, regularized."""
    cdef Params s = _unpack(P)
    cdef double rr = float(r), pp = float(phi), tt = float(t)
    cdef double ell = s.l
    cdef double psi = ell * pp - _rot_phase(s.dw, tt)
    cdef double c = cos(psi), sn = sin(psi)
    cdef double o[6]
    _envelope_d2(&s, rr, 0.0, o)
    cdef double d2 = s.delta * s.delta
    cdef double ke = _keff(&s, rr)
    cdef double kep = s.k * rr / (s.zr * s.zr)
    cdef double ll = ell * ell
    cdef double pref = s.hb28m * s.invq / d2
    cdef double er = -pref * (2.0 * c * c * o[1] * o[3]
                              + 2.0 * ll * sn * sn * (o[0] * o[1] / (rr * rr) - o[0] * o[0] / (rr * rr * rr))
                              + 2.0 * c * c * (o[0] * o[1] * ke * ke + o[0] * o[0] * ke * kep))
    cdef double ep = pref * (2.0 * ell * sn * c / rr) * (o[1] * o[1] + o[0] * o[0] * ke * ke - (ll / (rr * rr)) * o[0] * o[0])
    cdef double ez = s.hb2q * s.dw * ke * o[0] * o[0] * sn * c / (2.0 * d2)
    return er, ep, ez


def e_closed_z0_raw(tuple P, r, phi, t):
    """Closed-form E with the naive tan/sec structure (test fixture)."""
    cdef Params s = _unpack(P)
    cdef double rr = float(r), pp = float(phi), tt = float(t)
    cdef double ell = s.l
    cdef double psi = ell * pp - _rot_phase(s.dw, tt)
    cdef double c = cos(psi), tn = tan(psi)
    cdef double o[6]
    _envelope_d2(&s, rr, 0.0, o)
    cdef double ot2 = (o[0] * c) * (o[0] * c)
    cdef double d2 = s.delta * s.delta
    cdef double ke = _keff(&s, rr)
    cdef double kep = s.k * rr / (s.zr * s.zr)
    cdef double ll = ell * ell
    cdef double dcl = o[1] / o[0]
    cdef double dclp = o[3] / o[0] - dcl * dcl
    cdef double pref = s.hb28m * s.invq * ot2 / d2
    cdef double er = -pref * (2.0 * dcl * (dcl * dcl + (ll / (rr * rr)) * tn * tn + ke * ke)
                              + (2.0 * dcl * dclp - 2.0 * ll * tn * tn / (rr * rr * rr)
                                 + 2.0 * ke * kep))
    cdef double ep = pref * (2.0 * ell * tn / rr) * (dcl * dcl + ke * ke - ll / (rr * rr))
    cdef double ez = s.hb2q * s.dw * ke * o[0] * o[0] * sin(psi) * c / (2.0 * d2)
    return er, ep, ez


def eval_block(tuple P, field_id, r, phi, z, t, out):
    """Evaluate one field on a block of points (see the pure-Python twin)."""
    cdef Params s = _unpack(P)
    cdef int fid = int(field_id)
    cdef double tt = float(t)
    cdef double[:] rv = np.ascontiguousarray(r, dtype=np.float64)
    cdef double[:] pv = np.ascontiguousarray(phi, dtype=np.float64)
    cdef double[:] zv = np.ascontiguousarray(z, dtype=np.float64)
    cdef double[:, :] ov = out
    cdef Py_ssize_t i, n = rv.shape[0]
    cdef double buf[3]
    if fid < 1 or fid > 5:
        raise ValueError("unknown field id %r" % (field_id,))
    with nogil:
        for i in range(n):
            if fid == 1:
                _b_general(&s, rv[i], pv[i], zv[i], tt, buf)
            elif fid == 2:
                _e_general(&s, rv[i], pv[i], zv[i], tt, buf)
            elif fid == 3:
                _vector_potential(&s, rv[i], pv[i], zv[i], tt, buf)
            elif fid == 4:
                buf[0] = _scalar_potential(&s, rv[i], pv[i], zv[i], tt)
                buf[1] = 0.0
                buf[2] = 0.0
            else:
                buf[0] = _rabi(&s, rv[i], pv[i], zv[i], tt)
                buf[1] = 0.0
                buf[2] = 0.0
            ov[i, 0] = buf[0]
            ov[i, 1] = buf[1]
            ov[i, 2] = buf[2]
