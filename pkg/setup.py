"""Build hooks: compile the optional accelerator extension when possible.

The package is pure Python plus one optional Cython extension
(qdcorr._backend._core).  When Cython or a C compiler is unavailable —
or QDCORR_NO_CYTHON=1 is set — the build proceeds without it and the
package falls back to its NumPy implementation at import time.
"""

import os

from setuptools import Extension, setup


def _extensions():
    if os.environ.get("QDCORR_NO_CYTHON") == "1":
        return []
    try:
        import numpy
        from Cython.Build import cythonize
    except ImportError:
        return []
    extension = Extension(
        "qdcorr._backend._core",
        sources=["src/qdcorr/_backend/_core.pyx"],
        include_dirs=[numpy.get_include()],
        define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
    )
    return cythonize([extension], language_level=3)


setup(ext_modules=_extensions())
