"""Build the optional Cython kernel extension.

The package works without it: fpfun._core falls back to the pure-Python
kernels when the compiled module is absent.
"""

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    """Build the extension if possible, otherwise install without it."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # no compiler, etc.
            print(f"fpfun: skipping compiled kernels ({exc}); "
                  "pure-Python fallback will be used")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            print(f"fpfun: failed to build {ext.name} ({exc}); "
                  "pure-Python fallback will be used")


try:
    from Cython.Build import cythonize
    extensions = cythonize(
        [Extension(
            "fpfun._core._kernels",
            ["src/fpfun/_core/_kernels.pyx"],
            extra_compile_args=["-O3"],
        )],
        language_level=3,
    )
except ImportError:
    extensions = []

setup(ext_modules=extensions, cmdclass={"build_ext": OptionalBuildExt})
