"""Build script for the optional Cython kernel.

The compiled module ``zastrig._kernels`` is optional: when Cython or a C
compiler is unavailable the package installs without it and falls back to
``zastrig._kernels_py`` at import time.
"""
import os

from setuptools import setup

ext_modules = []
if not os.environ.get("ZASTRIG_NO_EXT"):
    try:
        from Cython.Build import cythonize
        from setuptools import Extension

        ext_modules = cythonize(
            [Extension("zastrig._kernels", ["src/zastrig/_kernels.pyx"],
                       extra_compile_args=["-O3"])],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
