"""Build script for the compiled kernel core.

The package works without the extension (a NumPy fallback is selected at
import time), so a failed compile is tolerated rather than fatal.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [Extension("eqgc._kernels", ["src/eqgc/_kernels.pyx"])],
        language_level=3,
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
