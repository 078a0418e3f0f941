"""Build script: compiles the grid-scan extension when Cython and a C
compiler are available.  The package works without it (a pure-Python
fallback is selected at import time), just slower.
"""
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "ucentropy._gridcore",
                ["src/ucentropy/_gridcore.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        language_level=3,
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
