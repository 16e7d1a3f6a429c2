"""Build script: compiles the optional GF(2) kernel extension.

The extension is a speedup only.  If Cython or a C compiler is missing the
build falls through and the package runs on the pure-numpy kernels.
Set COLORSURF_NO_EXT=1 to skip the extension build entirely.
"""

import os

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class optional_build_ext(build_ext):
    def run(self):
        try:
            super().run()
        except Exception as exc:  # compiler missing, etc.
            print(f"warning: compiled kernels skipped ({exc}); using pure-python fallback")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            print(f"warning: building {ext.name} failed ({exc}); using pure-python fallback")


ext_modules = []
if not os.environ.get("COLORSURF_NO_EXT"):
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "colorsurf._kernels._core",
                    ["src/colorsurf/_kernels/_core.pyx"],
                    extra_compile_args=["-O3"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        print("warning: Cython not available; using pure-python fallback")

setup(ext_modules=ext_modules, cmdclass={"build_ext": optional_build_ext})
