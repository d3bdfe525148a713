"""Build script for the optional compiled kernel extension.

The package is pure Python plus one Cython extension holding the hot
phase-space kernels.  If Cython or a C compiler is unavailable the build
falls through and the package transparently uses the numpy reference
kernels instead (see tracergas._kernels).
"""

from setuptools import setup
from setuptools.extension import Extension

ext_modules = []
try:
    from Cython.Build import cythonize

    ext = Extension(
        "tracergas._kernels._fast",
        sources=["src/tracergas/_kernels/_fast.pyx"],
        extra_compile_args=["-O3", "-fopenmp"],
        extra_link_args=["-fopenmp"],
        optional=True,
    )
    ext_modules = cythonize([ext], language_level="3")
except ImportError:
    pass

setup(ext_modules=ext_modules)
