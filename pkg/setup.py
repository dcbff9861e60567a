"""Build script: compiles the optional Cython stepping kernel.

The package works without the extension (a numpy fallback is selected at
import time), so a missing compiler only costs speed, not functionality.
"""
import os

from setuptools import Extension, setup

ext_modules = []
if not os.environ.get("BLOWUP_LAB_NO_EXT"):
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "blowup_lab._stepcore",
                    ["src/blowup_lab/_stepcore.pyx"],
                    extra_compile_args=["-O3"],
                )
            ],
            language_level=3,
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
