"""Build script for the optional compiled grid-scan kernel.

The package works without the extension; fleetcontest._kernels falls back
to a numpy implementation when the compiled module is missing.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "fleetcontest._kernels._grid",
                ["src/fleetcontest/_kernels/_grid.pyx"],
                extra_compile_args=["-O3", "-ffp-contract=off"],
            )
        ],
        language_level="3",
    )

setup(ext_modules=ext_modules)
