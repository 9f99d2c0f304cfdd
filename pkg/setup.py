"""Build script for the optional compiled kernel.

The Cython extension is optional: if it cannot be built, the package falls
back to the pure-Python implementation in ``exact_lattice.linalg._pykernels``.
"""
import os

from setuptools import setup

ext_modules = []
if not os.environ.get("EXACT_LATTICE_NO_EXT"):
    try:
        import numpy as np
        from Cython.Build import cythonize
        from setuptools import Extension

        ext_modules = cythonize(
            [
                Extension(
                    "exact_lattice.linalg._ckernels",
                    ["src/exact_lattice/linalg/_ckernels.pyx"],
                    include_dirs=[np.get_include()],
                    extra_compile_args=["-O3"],
                )
            ],
            compiler_directives={"language_level": "3", "boundscheck": False, "wraparound": False},
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
