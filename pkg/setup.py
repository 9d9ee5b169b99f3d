"""Build script: compiles the optional C kernel extension.

The package works without the extension (a pure-Python twin of every kernel
is selected at import time), so any failure to compile degrades to a pure
build instead of aborting the install. Set OGROUP_NO_EXT=1 to skip the
extension on purpose.
"""

import os
import sys

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class optional_build_ext(build_ext):
    def run(self):
        try:
            super().run()
        except Exception as exc:  # compiler missing, broken toolchain, ...
            sys.stderr.write(f"warning: C kernels not built ({exc}); "
                             "falling back to pure-Python kernels\n")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            sys.stderr.write(f"warning: skipping {ext.name} ({exc})\n")


ext_modules = []
cmdclass = {}
if not os.environ.get("OGROUP_NO_EXT"):
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [Extension("ogroup._ckernels", ["src/ogroup/_ckernels.pyx"])],
            language_level=3,
        )
        cmdclass["build_ext"] = optional_build_ext
    except ImportError:
        sys.stderr.write("warning: Cython unavailable; building pure-Python only\n")

setup(ext_modules=ext_modules, cmdclass=cmdclass)
