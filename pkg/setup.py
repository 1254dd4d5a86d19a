# python3 setup.py build_ext --inplace   (builds the optional fast kernels)
#
# The compiled extension is optional: if Cython or a C compiler is missing
# the package installs anyway and falls back to the pure-Python kernels.

import sys

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize
    from setuptools import Extension

    ext_modules = cythonize(
        [
            Extension(
                "gaugewheel._fastkern",
                ["src/gaugewheel/_fastkern.pyx"],
                # no FMA contraction, no sin/cos -> sincos pairing: keeps the
                # compiled kernels bit-identical to the pure-Python fallback
                extra_compile_args=["-O3", "-ffp-contract=off",
                                    "-fno-builtin-sin", "-fno-builtin-cos"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except Exception as exc:  # pragma: no cover - degraded build path
    sys.stderr.write(
        "gaugewheel: building without the compiled kernels (%s); "
        "the pure-Python fallback will be used\n" % exc
    )

setup(ext_modules=ext_modules)
