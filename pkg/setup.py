import os

from setuptools import setup

# The compiled kernels are an optional speedup; the package falls back to the
# pure-Python backend when the extension is unavailable.
ext_modules = []
if not os.environ.get("ZETADET_NO_EXT"):
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            ["src/zetadet/_kernels_cy.pyx"],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
