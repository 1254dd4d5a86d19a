"""gaugewheel: artificial gauge fields of a (rotating) optical Ferris wheel.

Two co-propagating Laguerre-Gaussian beams with opposite windings dress a
two-level atom; the adiabatically-following atom behaves like a charged
particle in artificial magnetic and electric fields that inherit the petal
structure of the light pattern and rotate with it when the beams are
detuned against each other.  This package evaluates those fields (general
definitions with analytic gradients, closed focal-plane forms and
large-detuning limits), cross-validates the routes against a
finite-difference oracle, traces field lines, and exports grids and
animation frames from the command line.
"""

__version__ = "0.1.0"

from .constants import E_CHARGE, HBAR
from .errors import (AxisError, AxisProximityError, ConfigError,
                     DegeneratePointError, EmptyRegionError, GaugewheelError,
                     NullFieldError, UnknownPresetError, ZeroWindingError)
from .optics import (BeamConfig, BeamGeometry, FieldPoint, beam_geometry,
                     ferris_phase, laguerre, lg_amplitude, lg_phase, rabi,
                     rabi_envelope, rabi_from_intensity, rotation_frequency)
from .gauge import (AtomConfig, CylVec, DressedState, GaugeSample,
                    dressed_states, electric_closed_z0, electric_field,
                    electric_field_static, electric_largedet_z0, gauge_sample,
                    grad_ferris_phase, grad_rabi, grad_scalar_potential,
                    magnetic_closed_z0, magnetic_field, magnetic_largedet_z0,
                    mixing_cos, scalar_potential, vector_potential,
                    vector_potential_dt)
from .numerics import (ComparisonReport, Polyline, SampleRegion, StepPolicy,
                       bisect_root, compare, fd_curl, fd_divergence,
                       fd_gradient, fd_time_derivative, trace_field_line)
from .scenario import (FieldFrame, GridSpec, Scenario, ValidityReport,
                       load_scenario, preset, sample_grid, save_scenario,
                       validate_scenario)
from .kernels import BACKEND as KERNEL_BACKEND
