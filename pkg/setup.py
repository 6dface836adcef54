import os

from setuptools import Extension, setup

# The compiled kernel is optional: every entry point has a pure-Python
# fallback selected at import time (sigmatrop.kernels).
ext_modules = []
if os.environ.get("SIGMATROP_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "sigmatrop._speedups",
                    ["src/sigmatrop/_speedups.pyx"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
