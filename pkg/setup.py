import os

from setuptools import setup

ext_modules = []
if os.environ.get("RIVERBED_SKIP_EXT") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            ["src/riverbed/cardinality/_ckernels.pyx"],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        # Pure-Python fallback is selected at import time; the compiled
        # kernels are an optional accelerator.
        ext_modules = []

setup(ext_modules=ext_modules)
