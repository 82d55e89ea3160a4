"""Build script: compiles the fixpoint kernel extension when Cython is available.

The package works without the extension; agentmc.checkers.backend falls back
to the pure-Python kernels at import time.  Set AGENTMC_SKIP_EXT=1 to force a
pure-Python install.
"""

import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("AGENTMC_SKIP_EXT") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "agentmc.checkers._fixpoint",
                    ["src/agentmc/checkers/_fixpoint.pyx"],
                )
            ],
            language_level=3,
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
