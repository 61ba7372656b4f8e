"""Build script: compiles the census kernel when Cython is available.

The package works without the extension; `wedgeorbits.census` falls back to the
numpy kernel at import time.
"""

from setuptools import setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/wedgeorbits/_censuskernel.pyx"],
        language_level=3,
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
