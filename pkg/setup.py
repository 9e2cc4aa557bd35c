"""Build script: compiles the optional C kernel extension.

The package is fully functional without the extension (a pure-Python
twin of the kernels is selected at import time), so any failure to
build it degrades to a pure-Python install instead of aborting.
"""
import os

from setuptools import setup
from setuptools.command.build_ext import build_ext


class optional_build_ext(build_ext):
    """Build the extension if possible, otherwise install pure-Python only."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # missing compiler, broken toolchain, ...
            print(f"warning: C kernel extension not built ({exc}); "
                  f"falling back to pure-Python kernels")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            print(f"warning: failed to compile {ext.name} ({exc}); "
                  f"falling back to pure-Python kernels")


ext_modules = []
if os.environ.get("MRLIFE_NO_EXTENSION", "") not in ("1", "true", "yes"):
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            ["src/mrlife/_ckernels.pyx"],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        print("warning: Cython not available; installing pure-Python kernels only")

setup(ext_modules=ext_modules, cmdclass={"build_ext": optional_build_ext})
