import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import gaugewheel as gw
from gaugewheel.errors import ConfigError


def lag_series_exact(p, alpha, x):
    """Independent factorial-series oracle, exact rational arithmetic."""
    acc = Fraction(0)
    xf = Fraction(x)
    for k in range(p + 1):
        acc += (Fraction((-1) ** k) * math.comb(p + alpha, p - k)
                * xf ** k / math.factorial(k))
    return float(acc)


def test_beam_geometry_values(fig1):
    geo = gw.beam_geometry(fig1.beam)
    # pi * (5 um)^2 / 852.35 nm, frozen from direct arithmetic
    assert geo.rayleigh_range == pytest.approx(9.214503002257857e-05, rel=1e-12)
    assert geo.k == pytest.approx(2.0 * math.pi / 852.35e-9, rel=1e-12)
    assert geo.width(0.0) == fig1.beam.waist
    assert geo.width(geo.rayleigh_range) / fig1.beam.waist == pytest.approx(
        math.sqrt(2.0), rel=1e-12)
    assert geo.width(1e-5) == geo.width(-1e-5)


def test_beam_config_invariants():
    with pytest.raises(ConfigError):
        gw.BeamConfig(wavelength=-1.0, waist=5e-6, winding=1)
    with pytest.raises(ConfigError):
        gw.BeamConfig(wavelength=852e-9, waist=0.0, winding=1)
    with pytest.raises(ConfigError):
        gw.BeamConfig(wavelength=852e-9, waist=5e-6, winding=0)
    with pytest.raises(ConfigError):
        gw.BeamConfig(wavelength=852e-9, waist=5e-6, winding=1, radial_index=-2)
    with pytest.raises(ConfigError):
        gw.BeamConfig(wavelength=852e-9, waist=5e-6, winding=1, peak_rabi=-1.0)


def test_laguerre_small_cases():
    assert gw.laguerre(0, 3, 17.0) == 1.0
    assert gw.laguerre(1, 2, 3.0) == 0.0          # 1 + alpha - x
    assert gw.laguerre(2, 1, 1.0) == pytest.approx(0.5, rel=1e-14)


def test_laguerre_against_series_grid():
    # recurrence vs the exact series for all p <= 6, alpha <= 6, x in [0, 20]
    xs = np.linspace(0.0, 20.0, 41)
    for p in range(7):
        for alpha in range(7):
            for x in xs:
                ref = lag_series_exact(p, alpha, float(x))
                got = gw.laguerre(p, alpha, float(x))
                assert got == pytest.approx(ref, rel=1e-12, abs=1e-12), \
                    (p, alpha, x)


@settings(max_examples=200, deadline=None)
@given(p=st.integers(0, 6), alpha=st.integers(0, 6),
       x=st.floats(0.0, 20.0, allow_nan=False))
def test_laguerre_series_property(p, alpha, x):
    ref = lag_series_exact(p, alpha, x)
    assert gw.laguerre(p, alpha, x) == pytest.approx(ref, rel=1e-12, abs=1e-12)


def test_laguerre_high_order_no_overflow():
    # the recurrence stays finite where the factorial series would overflow
    val = gw.laguerre(30, 4, 12.5)
    assert math.isfinite(val)


def test_lg_amplitude_axis_and_peak(fig1):
    beam = fig1.beam
    assert gw.lg_amplitude(beam, 0.0, 0.0) == 0.0
    # l = +/-1, p = 0: the ring peaks at r = w0/sqrt(2)
    r0 = beam.waist / math.sqrt(2.0)
    vals = [gw.lg_amplitude(beam, r0 * (1.0 + e), 0.0) for e in (-1e-4, 0.0, 1e-4)]
    assert vals[1] >= vals[0] and vals[1] >= vals[2]


def test_lg_amplitude_l2_frozen_values(fig1):
    # direct evaluation at r = w0, z = 0 for l = 2, p = 0; both conventions
    beam = fig1.beam.with_(winding=2)
    assert gw.lg_amplitude(beam, beam.waist, 0.0) == pytest.approx(
        0.4247905887793227, rel=1e-12)
    beam_std = beam.with_(norm_convention="standard")
    assert gw.lg_amplitude(beam_std, beam.waist, 0.0) == pytest.approx(
        0.5202600950228891, rel=1e-12)


def test_lg_phase(fig1):
    beam = fig1.beam
    geo = gw.beam_geometry(beam)
    assert gw.lg_phase(beam, 1e-6, 0.0, 0.0, +1) == 0.0
    beam2 = beam.with_(winding=2)
    assert gw.lg_phase(beam2, 2e-6, 0.0, math.pi / 4.0, +1) == pytest.approx(
        math.pi / 2.0, rel=1e-12)
    # r=0, z=zR, l=1, p=0: k zR - Gouy factor 2 * atan(1)
    got = gw.lg_phase(beam, 0.0, geo.rayleigh_range, 0.0, +1)
    assert got == pytest.approx(geo.k * geo.rayleigh_range - math.pi / 2.0,
                                rel=1e-12)
    # the two beams differ only by the sign of l phi
    plus = gw.lg_phase(beam, 2e-6, 3e-5, 0.7, +1)
    minus = gw.lg_phase(beam, 2e-6, 3e-5, 0.7, -1)
    assert plus + minus == pytest.approx(2.0 * gw.ferris_phase(beam, 2e-6, 3e-5),
                                         rel=1e-12)


def test_ferris_phase_z0_and_axial_slope(fig1):
    beam = fig1.beam
    geo = gw.beam_geometry(beam)
    for r in (0.0, 1e-6, 4e-6):
        assert gw.ferris_phase(beam, r, 0.0) == 0.0
    # d(phi_F)/dz at the origin: k - (2p+|l|+1)/zR, checked by central FD
    h = 1e-9
    fd = (gw.ferris_phase(beam, 0.0, h) - gw.ferris_phase(beam, 0.0, -h)) / (2 * h)
    expect = geo.k - 2.0 / geo.rayleigh_range
    assert fd == pytest.approx(expect, rel=1e-8)


def test_rabi_envelope(fig1):
    beam = fig1.beam
    om0 = beam.peak_rabi
    assert gw.rabi_envelope(beam, 0.0, 0.0) == 0.0
    # frozen: 2 sqrt(1/2) exp(-1/2) at the ring peak (printed convention)
    got = gw.rabi_envelope(beam, beam.waist / math.sqrt(2.0), 0.0)
    assert got == pytest.approx(0.8577638849607069 * om0, rel=1e-12)
    # linear in Omega0
    beam2 = beam.with_(peak_rabi=2.0 * om0)
    assert gw.rabi_envelope(beam2, 1.3e-6, 2e-5) == pytest.approx(
        2.0 * gw.rabi_envelope(beam, 1.3e-6, 2e-5), rel=1e-14)


def test_envelope_mirror_symmetry(fig1):
    beam = fig1.beam
    rng = np.random.default_rng(42)
    for _ in range(50):
        r = float(rng.uniform(0.0, 3.0)) * beam.waist
        z = float(rng.uniform(0.0, 3.0)) * 9.2e-5
        assert gw.rabi_envelope(beam, r, z) == gw.rabi_envelope(beam, r, -z)
        assert gw.lg_amplitude(beam, r, z) == gw.lg_amplitude(beam, r, -z)


def test_rabi_static_nodes_and_time_independence(fig1):
    beam = fig1.beam
    r, z = 2e-6, 1e-5
    node = gw.rabi(beam, gw.FieldPoint(r, math.pi / 2.0, z, 0.0))
    assert abs(node) < 1e-10 * beam.peak_rabi
    for t in (0.0, 1e-7, 3.7e-3):
        assert gw.rabi(beam, gw.FieldPoint(r, 0.3, z, t)) == gw.rabi(
            beam, gw.FieldPoint(r, 0.3, z, 0.0))


def test_rabi_full_turn_and_petal_periodicity(fig1_rotating):
    beam = fig1_rotating.beam
    scale = beam.peak_rabi
    rng = np.random.default_rng(7)
    for _ in range(50):
        r = float(rng.uniform(0.2, 2.5)) * beam.waist
        phi = float(rng.uniform(0.0, 2.0 * math.pi))
        t = float(rng.uniform(0.0, 1e-7))
        pt = gw.FieldPoint(r, phi, 0.0, t)
        full = gw.rabi(beam, gw.FieldPoint(r, phi + 2.0 * math.pi, 0.0, t))
        assert full == pytest.approx(gw.rabi(beam, pt), abs=1e-12 * scale)
        # |rabi| repeats every pi/|l|
        half = gw.rabi(beam, gw.FieldPoint(
            r, phi + math.pi / abs(beam.winding), 0.0, t))
        assert abs(half) == pytest.approx(abs(gw.rabi(beam, pt)),
                                          abs=1e-12 * scale)


@settings(max_examples=100, deadline=None)
@given(phi=st.floats(0.0, 2.0 * math.pi), tau=st.floats(0.0, 2e-7),
       t=st.floats(0.0, 2e-7))
def test_rabi_corotation_property(phi, tau, t):
    s = gw.preset("fig1")
    beam = s.beam.with_(freq_shift=4.0 * s.atom.linewidth)
    r = 1.9e-6
    shifted = gw.rabi(beam, gw.FieldPoint(
        r, phi - beam.freq_shift * tau / (2.0 * beam.winding), 0.0, t))
    assert gw.rabi(beam, gw.FieldPoint(r, phi, 0.0, t + tau)) == pytest.approx(
        shifted, abs=1e-12 * beam.peak_rabi, rel=1e-9)


def test_rotation_frequency(fig1):
    beam = fig1.beam
    assert gw.rotation_frequency(beam) == 0.0
    gamma = fig1.atom.linewidth
    rot = beam.with_(freq_shift=4.0 * gamma)
    assert gw.rotation_frequency(rot) == pytest.approx(2.0 * gamma, rel=1e-14)
    flipped = rot.with_(winding=-rot.winding)
    assert gw.rotation_frequency(flipped) == -gw.rotation_frequency(rot)


def test_rabi_from_intensity(fig1):
    gamma = fig1.atom.linewidth
    i_sat = fig1.atom.saturation_intensity
    w0 = fig1.beam.waist
    assert gw.rabi_from_intensity(0.0, w0, i_sat, gamma) == 0.0
    # I = 2 I_S gives Omega0 = Gamma
    p_2isat = 2.0 * i_sat * math.pi * w0 ** 2
    assert gw.rabi_from_intensity(p_2isat, w0, i_sat, gamma) == pytest.approx(
        gamma, rel=1e-12)
    one = gw.rabi_from_intensity(0.01, w0, i_sat, gamma)
    four = gw.rabi_from_intensity(0.04, w0, i_sat, gamma)
    assert four == pytest.approx(2.0 * one, rel=1e-12)


def test_field_point_rejects_negative_radius():
    with pytest.raises(ConfigError):
        gw.FieldPoint(-1e-6, 0.0, 0.0, 0.0)
