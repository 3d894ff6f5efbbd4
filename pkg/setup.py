"""Build script: compiles the optional sampler extension when Cython and a C
toolchain are available, otherwise installs the pure-Python package unchanged
(the sampler backend falls back automatically at import time)."""

import sys

from setuptools import setup
from setuptools.command.build_ext import build_ext


def _extensions():
    try:
        from Cython.Build import cythonize
        from setuptools import Extension
    except ImportError:
        return []
    ext = Extension(
        "skyblight.backend._kernels",
        ["src/skyblight/backend/_kernels.pyx"],
        # -ffp-contract=off: the pure-Python backend must stay bit-identical,
        # so FMA contraction of a*b+c is forbidden.
        extra_compile_args=["-O2", "-ffp-contract=off"],
    )
    return cythonize([ext], language_level="3")


class OptionalBuildExt(build_ext):
    """Treat extension build failures as a soft error: the package still works
    on the pure-Python backend, only slower."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # compiler missing entirely
            self._warn(exc)

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            self._warn(exc)

    @staticmethod
    def _warn(exc):
        print(
            f"warning: building the compiled sampler backend failed ({exc}); "
            "falling back to the pure-Python backend",
            file=sys.stderr,
        )


setup(ext_modules=_extensions(), cmdclass={"build_ext": OptionalBuildExt})
