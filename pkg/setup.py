"""Build the optional Cython core; the package falls back to pure Python without it."""
import os

from setuptools import setup

ext_modules = []
if os.environ.get("PLANIMETRIC_NO_EXT", "") != "1":
    try:
        import numpy as np
        from Cython.Build import cythonize
        from setuptools import Extension

        ext_modules = cythonize(
            [Extension("planimetric._core", ["src/planimetric/_core.pyx"],
                       include_dirs=[np.get_include()])],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
