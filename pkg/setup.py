"""Build hook: compile the optional C kernel extension when Cython is around.

The package is pure Python by contract; the extension only shadows
tigroups._kernels_py with faster versions of the same functions.  Any build
failure must therefore degrade to a source-only install, never abort it.
Set TIGROUPS_NO_EXT=1 to skip the compile attempt entirely.
"""

import os

from setuptools import setup
from setuptools.command.build_ext import build_ext


class optional_build_ext(build_ext):
    def run(self):
        try:
            super().run()
        except Exception as exc:  # compiler missing, etc.
            print(f"tigroups: skipping C kernels ({exc!r}); pure-Python fallback will be used")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            print(f"tigroups: failed to build {ext.name} ({exc!r}); pure-Python fallback will be used")


ext_modules = []
if os.environ.get("TIGROUPS_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize
        from setuptools import Extension

        ext_modules = cythonize(
            [Extension("tigroups._ckernels", ["src/tigroups/_ckernels.pyx"])],
            language_level="3",
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules, cmdclass={"build_ext": optional_build_ext})
