"""Build script: compiles the optional Cython enumeration kernels.

The package works without the extension (a pure-Python twin of every kernel
is selected at import time), so a failed compile only costs speed.
"""
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "detmoments._ckernels",
                ["src/detmoments/_ckernels.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
