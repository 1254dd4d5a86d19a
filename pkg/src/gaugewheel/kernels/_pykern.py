"""Pure-Python scalar kernels for the Ferris-wheel gauge fields.

This module is the reference implementation of the hot per-point math; a
Cython twin (``gaugewheel._fastkern``) provides the same functions compiled
to C.  Keep the two in lockstep: every formula change here must be mirrored
there (``tests/test_kernels_backend.py`` cross-checks them).

Parameters are passed as a flat tuple ``P`` packed by
:func:`gaugewheel.gauge.pack_params`:

    P = (l, m, p, w0, zR, k, amp, dw, delta, hb_2q, hb2_8m, inv_q)

    l       signed winding of one beam (the pair is +/- l)
    m       |l|
    p       radial mode index
    w0      beam waist (m)
    zR      Rayleigh range (m)
    k       wavenumber 2*pi/lambda (rad/m)
    amp     envelope prefactor 2*Omega0*N (rad/s), N per the chosen
            normalization convention
    dw      frequency shift between the two beams (rad/s)
    delta   atomic detuning (rad/s)
    hb_2q   hbar / (2 q)
    hb2_8m  hbar^2 / (8 M)
    inv_q   1 / q

Conventions (see README): the vector potential is the standard adiabatic
A = (hbar/2q)(cos Theta - 1) grad(phi_F); the magnetic field is its exact
curl B = (hbar/2q) grad(cos Theta) x grad(phi_F); the scalar potential is
the standard geometric potential with the hbar^2/8M prefactor.  The closed
z=0 forms below are exact reductions / leading-order expansions of those
definitions, with the axial phase gradient kept exact (k_eff(r) instead of
the paraxial k).

All time dependence enters through the rotation phase
psi = l*phi - dw*t/2, reduced modulo full turns (with a 1e-12-turn snap so
that frames separated by an exact rotation period are bit-identical).
"""

import math

TWO_PI = 2.0 * math.pi

# P tuple indices
I_L, I_M, I_P, I_W0, I_ZR, I_K, I_AMP, I_DW, I_DELTA, I_HB2Q, I_HB28M, I_INVQ = range(12)

# field ids for eval_block
FIELD_B = 1
FIELD_E = 2
FIELD_A = 3
FIELD_V = 4
FIELD_RABI = 5

BACKEND = "python"


def laguerre(p, alpha, x):
    """Associated Laguerre polynomial L_p^alpha(x) by the stable three-term
    recurrence (overflow-free for p up to ~30, unlike the factorial series)."""
    if p == 0:
        return 1.0
    lm1 = 1.0
    lcur = 1.0 + alpha - x
    for n in range(2, p + 1):
        lm1, lcur = lcur, ((2.0 * n - 1.0 + alpha - x) * lcur - (n - 1.0 + alpha) * lm1) / n
    return lcur


def _lag3(p, m, x):
    """L_p^m(x) with first and second x-derivatives.

    d/dx L_p^m = -L_{p-1}^{m+1},  d2/dx2 L_p^m = +L_{p-2}^{m+2}.
    """
    lag = laguerre(p, m, x)
    d1 = -laguerre(p - 1, m + 1, x) if p >= 1 else 0.0
    d2 = laguerre(p - 2, m + 2, x) if p >= 2 else 0.0
    return lag, d1, d2


def rot_phase(dw, t):
    """Rotation phase dw*t/2 reduced to (-pi, pi] turns-style.

    The reduction snaps phases within 1e-12 of a whole number of turns to
    exactly zero so a frame one full rotation period later reproduces the
    original frame bit for bit.
    """
    if dw == 0.0 or t == 0.0:
        return 0.0
    turns = (0.5 * dw * t) / TWO_PI
    frac = turns - round(turns)
    if abs(frac) < 1e-12:
        return 0.0
    return TWO_PI * frac


def envelope(P, r, z):
    """Rabi envelope Omega(r, z) = amp * (sqrt2 r/w)^m L_p^m(2r^2/w^2) e^{-r^2/w^2}."""
    m = int(P[I_M])
    p = int(P[I_P])
    w0 = P[I_W0]
    zr = P[I_ZR]
    w2 = w0 * w0 * (1.0 + (z / zr) * (z / zr))
    x = 2.0 * r * r / w2
    u = r * math.sqrt(2.0) / math.sqrt(w2)
    return P[I_AMP] * u ** m * laguerre(p, m, x) * math.exp(-0.5 * x)


def envelope_d1(P, r, z):
    """(Omega, dOmega/dr, dOmega/dz) at (r, z); requires r > 0."""
    o, orr, oz, _, _, _ = envelope_d2(P, r, z)
    return o, orr, oz


def envelope_d2(P, r, z):
    """Envelope with first and second partial derivatives.

    Returns (O, Or, Oz, Orr, Orz, Ozz); requires r > 0.
    """
    m = int(P[I_M])
    p = int(P[I_P])
    w0 = P[I_W0]
    zr = P[I_ZR]
    amp = P[I_AMP]

    w2 = w0 * w0 * (1.0 + (z / zr) * (z / zr))
    w = math.sqrt(w2)
    wp = w0 * w0 * z / (zr * zr * w)            # dw/dz
    wpp = (w0 * w0 / (zr * zr * w)) * (1.0 - z * wp / w)

    x = 2.0 * r * r / w2
    x_r = 4.0 * r / w2
    x_z = -2.0 * x * wp / w
    x_rr = 4.0 / w2
    x_rz = -2.0 * x_r * wp / w
    x_zz = -2.0 * x_z * wp / w - 2.0 * x * (wpp / w - (wp / w) * (wp / w))

    # power part a = (sqrt2 r / w)^m
    a = (r * math.sqrt(2.0) / w) ** m
    a_r = a * m / r
    a_z = -a * m * wp / w
    a_rr = a * m * (m - 1.0) / (r * r)
    a_rz = -a * m * m * wp / (r * w)
    a_zz = a * (-m * wpp / w + m * (wp / w) ** 2 + (m * wp / w) ** 2)

    # Gaussian part g = exp(-x/2)
    g = math.exp(-0.5 * x)
    g_r = -0.5 * x_r * g
    g_z = -0.5 * x_z * g
    g_rr = g * (0.25 * x_r * x_r - 0.5 * x_rr)
    g_rz = g * (0.25 * x_r * x_z - 0.5 * x_rz)
    g_zz = g * (0.25 * x_z * x_z - 0.5 * x_zz)

    lag, ld1, ld2 = _lag3(p, m, x)
    l_r = ld1 * x_r
    l_z = ld1 * x_z
    l_rr = ld2 * x_r * x_r + ld1 * x_rr
    l_rz = ld2 * x_r * x_z + ld1 * x_rz
    l_zz = ld2 * x_z * x_z + ld1 * x_zz

    o = amp * a * lag * g
    o_r = amp * (a_r * lag * g + a * l_r * g + a * lag * g_r)
    o_z = amp * (a_z * lag * g + a * l_z * g + a * lag * g_z)
    o_rr = amp * (a_rr * lag * g + a * l_rr * g + a * lag * g_rr
                  + 2.0 * (a_r * l_r * g + a_r * lag * g_r + a * l_r * g_r))
    o_rz = amp * (a_rz * lag * g + a * l_rz * g + a * lag * g_rz
                  + a_r * l_z * g + a_z * l_r * g + a_r * lag * g_z
                  + a_z * lag * g_r + a * l_r * g_z + a * l_z * g_r)
    o_zz = amp * (a_zz * lag * g + a * l_zz * g + a * lag * g_zz
                  + 2.0 * (a_z * l_z * g + a_z * lag * g_z + a * l_z * g_z))
    return o, o_r, o_z, o_rr, o_rz, o_zz


def ferris_phase(P, r, z):
    """Common phase phi_F = k z - (2p+m+1) atan(z/zR) + k r^2 z / (2(z^2+zR^2))."""
    zr = P[I_ZR]
    k = P[I_K]
    gouy = 2.0 * P[I_P] + P[I_M] + 1.0
    return k * z - gouy * math.atan2(z, zr) + k * r * r * z / (2.0 * (z * z + zr * zr))


def ferris_d1(P, r, z):
    """(phi_F, d/dr, d/dz)."""
    f, fr, fz, _, _, _ = ferris_d2(P, r, z)
    return f, fr, fz


def ferris_d2(P, r, z):
    """phi_F with first and second partial derivatives.

    Returns (F, Fr, Fz, Frr, Frz, Fzz).
    """
    zr = P[I_ZR]
    k = P[I_K]
    gouy = 2.0 * P[I_P] + P[I_M] + 1.0
    d = z * z + zr * zr
    f = k * z - gouy * math.atan2(z, zr) + k * r * r * z / (2.0 * d)
    fr = k * r * z / d
    fz = k - gouy * zr / d + 0.5 * k * r * r * (zr * zr - z * z) / (d * d)
    frr = k * z / d
    frz = k * r * (zr * zr - z * z) / (d * d)
    fzz = (2.0 * gouy * z * zr / (d * d)
           - k * r * r * z * (3.0 * zr * zr - z * z) / (d * d * d))
    return f, fr, fz, frr, frz, fzz


def rabi(P, r, phi, z, t):
    """Modulated Rabi frequency Omega(r,z) cos(l phi - dw t / 2)."""
    psi = P[I_L] * phi - rot_phase(P[I_DW], t)
    return envelope(P, r, z) * math.cos(psi)


def grad_rabi(P, r, phi, z, t):
    """Orthonormal cylindrical gradient of the modulated Rabi frequency."""
    psi = P[I_L] * phi - rot_phase(P[I_DW], t)
    c = math.cos(psi)
    s = math.sin(psi)
    o, o_r, o_z = envelope_d1(P, r, z)
    return c * o_r, -(P[I_L] / r) * o * s, c * o_z


def vector_potential(P, r, phi, z, t):
    """A = (hbar/2q)(cos Theta - 1) grad(phi_F), per unit fictitious charge."""
    ot = rabi(P, r, phi, z, t)
    delta = P[I_DELTA]
    u = delta * delta + ot * ot
    cos_t = delta / math.sqrt(u)
    _, fr, fz = ferris_d1(P, r, z)
    f = P[I_HB2Q] * (cos_t - 1.0)
    return f * fr, 0.0, f * fz


def da_dt(P, r, phi, z, t):
    """Analytic time derivative of the vector potential."""
    psi = P[I_L] * phi - rot_phase(P[I_DW], t)
    c = math.cos(psi)
    s = math.sin(psi)
    o = envelope(P, r, z)
    ot = o * c
    delta = P[I_DELTA]
    u = delta * delta + ot * ot
    dcos_dt = -delta * ot / (u * math.sqrt(u)) * (o * s * 0.5 * P[I_DW])
    _, fr, fz = ferris_d1(P, r, z)
    f = P[I_HB2Q] * dcos_dt
    return f * fr, 0.0, f * fz


def scalar_potential(P, r, phi, z, t):
    """Geometric scalar potential V (J); requires r > 0."""
    psi = P[I_L] * phi - rot_phase(P[I_DW], t)
    c = math.cos(psi)
    s = math.sin(psi)
    o, o_r, o_z = envelope_d1(P, r, z)
    _, fr, fz = ferris_d1(P, r, z)
    ot = o * c
    delta = P[I_DELTA]
    u = delta * delta + ot * ot
    ll = P[I_L] * P[I_L]
    g1 = c * c * (o_r * o_r + o_z * o_z) + (ll / (r * r)) * o * o * s * s
    g2 = fr * fr + fz * fz
    return P[I_HB28M] * ((delta * delta / (u * u)) * g1 + (ot * ot / u) * g2)


def grad_v(P, r, phi, z, t):
    """Analytic orthonormal cylindrical gradient of the scalar potential."""
    ell = P[I_L]
    psi = ell * phi - rot_phase(P[I_DW], t)
    c = math.cos(psi)
    s = math.sin(psi)
    o, o_r, o_z, o_rr, o_rz, o_zz = envelope_d2(P, r, z)
    _, fr, fz, frr, frz, fzz = ferris_d2(P, r, z)

    ot = o * c
    delta = P[I_DELTA]
    d2 = delta * delta
    u = d2 + ot * ot
    ll = ell * ell

    g1 = c * c * (o_r * o_r + o_z * o_z) + (ll / (r * r)) * o * o * s * s
    g2 = fr * fr + fz * fz

    s1 = d2 / (u * u)
    s2 = ot * ot / u
    s1p = -4.0 * d2 * ot / (u * u * u)
    s2p = 2.0 * d2 * ot / (u * u)

    # grad of the modulated Rabi frequency
    a_r = c * o_r
    a_p = -(ell / r) * o * s
    a_z = c * o_z

    g1_r = (2.0 * c * c * (o_r * o_rr + o_z * o_rz)
            + 2.0 * ll * s * s * (o * o_r / (r * r) - o * o / (r * r * r)))
    g1_p = (2.0 * ell * s * c / r) * ((ll / (r * r)) * o * o - o_r * o_r - o_z * o_z)
    g1_z = (2.0 * c * c * (o_r * o_rz + o_z * o_zz)
            + 2.0 * (ll / (r * r)) * s * s * o * o_z)

    g2_r = 2.0 * (fr * frr + fz * frz)
    g2_z = 2.0 * (fr * frz + fz * fzz)

    common = s1p * g1 + s2p * g2
    pref = P[I_HB28M]
    return (pref * (common * a_r + s1 * g1_r + s2 * g2_r),
            pref * (common * a_p + s1 * g1_p),
            pref * (common * a_z + s1 * g1_z + s2 * g2_z))


def b_general(P, r, phi, z, t):
    """Artificial magnetic field B = (hbar/2q) grad(cos Theta) x grad(phi_F).

    Requires r > 0; evaluated with fully analytic gradients.
    """
    ell = P[I_L]
    psi = ell * phi - rot_phase(P[I_DW], t)
    c = math.cos(psi)
    s = math.sin(psi)
    o, o_r, o_z = envelope_d1(P, r, z)
    _, fr, fz = ferris_d1(P, r, z)
    ot = o * c
    delta = P[I_DELTA]
    u = delta * delta + ot * ot
    pref = -P[I_HB2Q] * delta * ot / (u * math.sqrt(u))
    a_r = c * o_r
    a_p = -(ell / r) * o * s
    a_z = c * o_z
    return pref * (a_p * fz), pref * (a_z * fr - a_r * fz), pref * (-a_p * fr)


def e_general(P, r, phi, z, t):
    """Artificial electric field E = -dA/dt - grad(V)/q (analytic route)."""
    ar, ap, az = da_dt(P, r, phi, z, t)
    vr, vp, vz = grad_v(P, r, phi, z, t)
    iq = P[I_INVQ]
    return -ar - iq * vr, -ap - iq * vp, -az - iq * vz


def _keff(P, r):
    """Exact axial phase gradient d(phi_F)/dz at z = 0."""
    zr = P[I_ZR]
    gouy = 2.0 * P[I_P] + P[I_M] + 1.0
    return P[I_K] - gouy / zr + P[I_K] * r * r / (2.0 * zr * zr)


def b_closed_z0(P, r, phi, t):
    """Closed-form B at the focal plane, regularized (sin cos products)."""
    ell = P[I_L]
    psi = ell * phi - rot_phase(P[I_DW], t)
    c = math.cos(psi)
    s = math.sin(psi)
    o, o_r, _ = envelope_d1(P, r, 0.0)
    ot = o * c
    delta = P[I_DELTA]
    u = delta * delta + ot * ot
    ke = _keff(P, r)
    pref = P[I_HB2Q] * delta / (u * math.sqrt(u)) * ke
    br = pref * ell * o * o * s * c / r
    bp = pref * o * o_r * c * c
    return br, bp, 0.0


def b_closed_z0_raw(P, r, phi, t):
    """Closed-form B with the naive tan factor (test fixture; singular at
    cos(psi) = 0)."""
    ell = P[I_L]
    psi = ell * phi - rot_phase(P[I_DW], t)
    c = math.cos(psi)
    o, o_r, _ = envelope_d1(P, r, 0.0)
    ot = o * c
    delta = P[I_DELTA]
    u = delta * delta + ot * ot
    ke = _keff(P, r)
    pref = P[I_HB2Q] * delta / (u * math.sqrt(u)) * ke
    br = pref * ell * ot * ot * math.tan(psi) / r
    bp = pref * ot * ot * (o_r / o)
    return br, bp, 0.0


def b_largedet_z0(P, r, phi, t, variant):
    """Large-detuning closed B at z = 0.

    variant 0: limit of the closed form (delta >> Omega), exact k_eff.
    variant 1: the 1/(2 pi), 1/pi forms with the paraxial k (kept verbatim
               for the comparison report; see ``validate``).
    """
    ell = P[I_L]
    psi = ell * phi - rot_phase(P[I_DW], t)
    c = math.cos(psi)
    s = math.sin(psi)
    o, o_r, _ = envelope_d1(P, r, 0.0)
    delta = P[I_DELTA]
    d2 = delta * delta
    if variant == 0:
        ke = _keff(P, r)
        br = P[I_HB2Q] * ell * ke * o * o * s * c / (d2 * r)
        bp = P[I_HB2Q] * ke * o * o_r * c * c / d2
    else:
        k = P[I_K]
        hbq = 2.0 * P[I_HB2Q]
        dcl = P[I_M] / r - 2.0 * r / (P[I_W0] * P[I_W0])
        br = hbq * ell * k * o * o * (2.0 * s * c) / (2.0 * math.pi * d2 * r)
        bp = hbq * k * o * o * dcl * c * c / (math.pi * d2)
    return br, bp, 0.0


def e_closed_z0(P, r, phi, t):
    """Leading-order closed-form E at the focal plane, regularized.

    Static (dw = 0) it is the closed form of -grad(V)/q; rotating it adds
    the axial component from -dA_z/dt.  Accurate to O((Omega/delta)^2)
    relative to the exact route.
    """
    ell = P[I_L]
    psi = ell * phi - rot_phase(P[I_DW], t)
    c = math.cos(psi)
    s = math.sin(psi)
    o, o_r, _, o_rr, _, _ = envelope_d2(P, r, 0.0)
    delta = P[I_DELTA]
    d2 = delta * delta
    ke = _keff(P, r)
    kep = P[I_K] * r / (P[I_ZR] * P[I_ZR])
    ll = ell * ell
    pref = P[I_HB28M] * P[I_INVQ] / d2
    er = -pref * (2.0 * c * c * o_r * o_rr
                  + 2.0 * ll * s * s * (o * o_r / (r * r) - o * o / (r * r * r))
                  + 2.0 * c * c * (o * o_r * ke * ke + o * o * ke * kep))
    ep = pref * (2.0 * ell * s * c / r) * (o_r * o_r + o * o * ke * ke - (ll / (r * r)) * o * o)
    ez = P[I_HB2Q] * P[I_DW] * ke * o * o * s * c / (2.0 * d2)
    return er, ep, ez


def e_closed_z0_raw(P, r, phi, t):
    """Closed-form E with the naive tan/sec structure (test fixture)."""
    ell = P[I_L]
    psi = ell * phi - rot_phase(P[I_DW], t)
    c = math.cos(psi)
    tn = math.tan(psi)
    o, o_r, _, o_rr, _, _ = envelope_d2(P, r, 0.0)
    ot2 = (o * c) * (o * c)
    delta = P[I_DELTA]
    d2 = delta * delta
    ke = _keff(P, r)
    kep = P[I_K] * r / (P[I_ZR] * P[I_ZR])
    ll = ell * ell
    dcl = o_r / o
    dclp = o_rr / o - dcl * dcl
    pref = P[I_HB28M] * P[I_INVQ] * ot2 / d2
    er = -pref * (2.0 * dcl * (dcl * dcl + (ll / (r * r)) * tn * tn + ke * ke)
                  + (2.0 * dcl * dclp - 2.0 * ll * tn * tn / (r * r * r)
                     + 2.0 * ke * kep))
    ep = pref * (2.0 * ell * tn / r) * (dcl * dcl + ke * ke - ll / (r * r))
    ez = P[I_HB2Q] * P[I_DW] * ke * o * o * math.sin(psi) * c / (2.0 * d2)
    return er, ep, ez


def eval_block(P, field_id, r, phi, z, t, out):
    """Evaluate one field on a block of points.

    ``r``, ``phi``, ``z`` are 1-D float arrays of equal length, ``out`` is
    (n, 3); scalar fields fill column 0.  Points are independent, so any
    partitioning of a grid into blocks yields identical results.
    """
    n = len(r)
    if field_id == FIELD_B:
        for i in range(n):
            br, bp, bz = b_general(P, float(r[i]), float(phi[i]), float(z[i]), t)
            out[i, 0] = br
            out[i, 1] = bp
            out[i, 2] = bz
    elif field_id == FIELD_E:
        for i in range(n):
            er, ep, ez = e_general(P, float(r[i]), float(phi[i]), float(z[i]), t)
            out[i, 0] = er
            out[i, 1] = ep
            out[i, 2] = ez
    elif field_id == FIELD_A:
        for i in range(n):
            ar, ap, az = vector_potential(P, float(r[i]), float(phi[i]), float(z[i]), t)
            out[i, 0] = ar
            out[i, 1] = ap
            out[i, 2] = az
    elif field_id == FIELD_V:
        for i in range(n):
            out[i, 0] = scalar_potential(P, float(r[i]), float(phi[i]), float(z[i]), t)
            out[i, 1] = 0.0
            out[i, 2] = 0.0
    elif field_id == FIELD_RABI:
        for i in range(n):
            out[i, 0] = rabi(P, float(r[i]), float(phi[i]), float(z[i]), t)
            out[i, 1] = 0.0
            out[i, 2] = 0.0
    else:
        raise ValueError("unknown field id %r" % (field_id,))
