import pytest

import gaugewheel as gw


@pytest.fixture(scope="session")
def fig1():
    return gw.preset("fig1")


@pytest.fixture(scope="session")
def fig3():
    return gw.preset("fig3")


@pytest.fixture(scope="session")
def fig1_rotating(fig1):
    """fig1 with the petal pattern rotating at Omega_rot = 2 Gamma."""
    beam = fig1.beam.with_(freq_shift=4.0 * abs(fig1.beam.winding)
                           * fig1.atom.linewidth)
    return fig1.with_(beam=beam, label="fig1-rotating")
