import os

from setuptools import setup

ext_modules = []
if not os.environ.get("MONOSTAB_NO_EXT"):
    try:
        from Cython.Build import cythonize
        from setuptools import Extension

        ext_modules = cythonize(
            [
                Extension(
                    "monostab.linalg._ckernels",
                    ["src/monostab/linalg/_ckernels.pyx"],
                    language="c++",
                    extra_compile_args=["-O2"],
                )
            ],
            language_level=3,
        )
    except ImportError:
        # no Cython: the pure-Python kernels are used at runtime
        ext_modules = []

setup(ext_modules=ext_modules)
