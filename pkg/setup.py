"""Build the optional Cython kernels.

The extension is marked optional: when it cannot be compiled the package
still installs and falls back to the numpy implementation at import time.
"""
import numpy as np
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:  # pragma: no cover
    cythonize = None

ext_modules = []
if cythonize is not None:
    try:
        ext_modules = cythonize(
            [
                Extension(
                    "depcorr._kernels",
                    ["src/depcorr/_kernels.pyx"],
                    include_dirs=[np.get_include()],
                    extra_compile_args=["-O3"],
                    optional=True,
                )
            ],
            compiler_directives={"language_level": "3"},
        )
    except Exception as exc:  # noqa: BLE001 - any cythonize failure means fallback
        print(f"depcorr: skipping compiled kernels ({exc})")

setup(ext_modules=ext_modules)
