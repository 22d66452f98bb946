"""Build script: compiles the optional accelerator extension when Cython is
available, and falls back to the pure-Python kernels otherwise."""

import warnings

from setuptools import setup
from setuptools.command.build_ext import build_ext


class optional_build_ext(build_ext):
    """Build the accelerator if possible; never fail the install over it."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # compiler missing, etc.
            warnings.warn(f"skipping compiled kernels: {exc}")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            warnings.warn(f"skipping compiled kernel {ext.name}: {exc}")


ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/jetfact/_kernels/kernel_cy.pyx"],
        language_level=3,
    )
except ImportError:
    warnings.warn("Cython not installed; using pure-Python kernels")

setup(ext_modules=ext_modules, cmdclass={"build_ext": optional_build_ext})
