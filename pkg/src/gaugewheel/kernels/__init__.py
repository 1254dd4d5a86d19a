"""Kernel backend selection.

At import time the compiled extension (``gaugewheel._fastkern``, built from
``_fastkern.pyx``) is preferred; the pure-Python twin ``_pykern`` is the
fallback.  ``GAUGEWHEEL_BACKEND=python|cython`` forces a choice, which the
benchmark uses to time both.
"""

import os

from . import _pykern

_forced = os.environ.get("GAUGEWHEEL_BACKEND", "").strip().lower()

impl = None
if _forced in ("", "cython"):
    try:
        from gaugewheel import _fastkern as impl  # type: ignore[no-redef]
    except ImportError:
        impl = None
        if _forced == "cython":
            raise ImportError(
                "GAUGEWHEEL_BACKEND=cython but gaugewheel._fastkern is not built; "
                "run: python setup.py build_ext --inplace"
            )
if impl is None:
    impl = _pykern

BACKEND = impl.BACKEND

FIELD_B = _pykern.FIELD_B
FIELD_E = _pykern.FIELD_E
FIELD_A = _pykern.FIELD_A
FIELD_V = _pykern.FIELD_V
FIELD_RABI = _pykern.FIELD_RABI

laguerre = impl.laguerre
rot_phase = impl.rot_phase
envelope = impl.envelope
envelope_d1 = impl.envelope_d1
envelope_d2 = impl.envelope_d2
ferris_phase = impl.ferris_phase
ferris_d1 = impl.ferris_d1
ferris_d2 = impl.ferris_d2
rabi = impl.rabi
grad_rabi = impl.grad_rabi
vector_potential = impl.vector_potential
da_dt = impl.da_dt
scalar_potential = impl.scalar_potential
grad_v = impl.grad_v
b_general = impl.b_general
e_general = impl.e_general
b_closed_z0 = impl.b_closed_z0
b_closed_z0_raw = impl.b_closed_z0_raw
b_largedet_z0 = impl.b_largedet_z0
e_closed_z0 = impl.e_closed_z0
e_closed_z0_raw = impl.e_closed_z0_raw
eval_block = impl.eval_block
