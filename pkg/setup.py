"""Build script: compiles the optional Cython kernel extension.

The extension is an accelerator only; if Cython or a C compiler is
unavailable the package installs with the pure-NumPy kernels. Set
TGOPT_NO_EXT=1 to skip the extension build entirely.
"""

import os

from setuptools import setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    """Degrade to a pure-Python install when compilation fails."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # compiler missing, etc.
            print(f"warning: skipping C extension build ({exc}); "
                  "tgopt will use the pure-NumPy kernels")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            print(f"warning: failed to build {ext.name} ({exc}); "
                  "tgopt will use the pure-NumPy kernels")


def extensions():
    if os.environ.get("TGOPT_NO_EXT") == "1":
        return []
    try:
        import numpy
        from Cython.Build import cythonize
        from setuptools import Extension
    except ImportError as exc:
        print(f"warning: {exc}; building tgopt without the C extension")
        return []
    ext = Extension(
        "tgopt._kernels",
        sources=["src/tgopt/_kernels.pyx"],
        include_dirs=[numpy.get_include()],
        define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
        extra_compile_args=["-O3"],
    )
    return cythonize([ext], language_level=3)


setup(ext_modules=extensions(), cmdclass={"build_ext": OptionalBuildExt})
