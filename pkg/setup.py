"""Build script: compiles the optional grid-sweep extension.

The package works without the extension (a pure-Python kernel is selected at
import time), so any failure here degrades gracefully to a source-only build.
"""

from setuptools import setup

ext_modules = []
try:
    import numpy
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/crtdesign/_kernels/_cykern.pyx"],
        language_level="3",
    )
    include_dirs = [numpy.get_include()]
except Exception:  # pragma: no cover - build-environment dependent
    include_dirs = []

setup(
    ext_modules=ext_modules,
    include_dirs=include_dirs,
)
