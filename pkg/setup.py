"""Build script: compiles the optional search kernel when possible.

The package is pure Python plus one optional Cython extension
(``twisted_hurwitz._fastcount``).  Set TH_NO_EXT=1 to skip compilation;
a missing compiler or Cython just falls back to the pure-Python kernel
selected at import time.
"""

import os
import warnings

from setuptools import setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    """Treat extension build failures as a warning, not an error."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # missing toolchain
            warnings.warn("skipping compiled kernel: %s" % exc)

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            warnings.warn("skipping compiled kernel %s: %s" % (ext.name, exc))


ext_modules = []
if not os.environ.get("TH_NO_EXT"):
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            ["src/twisted_hurwitz/_fastcount.pyx"],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules, cmdclass={"build_ext": OptionalBuildExt})
