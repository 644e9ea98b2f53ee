"""Build script: compiles the scoring kernels when Cython is available.

The package works without the extension (a pure-Python fallback is selected
at import time), so a failed extension build is not fatal.
"""

from setuptools import setup

try:
    import numpy
    from Cython.Build import cythonize
    from setuptools import Extension

    extensions = cythonize(
        [
            Extension(
                "sciqa._kernels._scoring_cy",
                ["src/sciqa/_kernels/_scoring_cy.pyx"],
                include_dirs=[numpy.get_include()],
                extra_compile_args=["-O3"],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    extensions = []

setup(ext_modules=extensions)
