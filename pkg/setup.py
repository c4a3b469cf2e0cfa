import os

from setuptools import setup

ext_modules = []
if not os.environ.get("INVCO_NO_EXT"):
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            ["src/invco/_speedups.pyx"], language_level="3str"
        )
    except ImportError:
        # No Cython: install pure-Python only, the package selects the
        # fallback kernels at import time.
        pass

setup(ext_modules=ext_modules)
