"""Builds the optional compiled kernel extension.

If Cython or a compiler is unavailable the package still works: kernels.py
falls back to the pure-numpy implementation at import time.
"""

from setuptools import Extension, setup

try:
    import numpy as np
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [Extension(
            "qgdream._kernels_cy",
            ["src/qgdream/_kernels_cy.pyx"],
            include_dirs=[np.get_include()],
            define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
        )],
        language_level=3,
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
