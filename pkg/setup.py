"""Build script for the optional compiled vision kernels.

The package works without the extension (a NumPy/Python fallback is selected
at import time), so a missing compiler must not break installation.
"""

import warnings

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class optional_build_ext(build_ext):
    """Build the Cython kernels if possible, warn and continue if not."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # noqa: BLE001 - any build failure is non-fatal
            warnings.warn(
                f"compiled vision kernels were not built ({exc}); "
                "falling back to the pure-Python implementation",
                stacklevel=1,
            )

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:  # noqa: BLE001
            warnings.warn(
                f"building {ext.name} failed ({exc}); "
                "falling back to the pure-Python implementation",
                stacklevel=1,
            )


def extensions():
    try:
        import numpy as np
        from Cython.Build import cythonize
    except ImportError:
        return []
    ext = Extension(
        "ethica_ar.vision._kernels_cy",
        ["src/ethica_ar/vision/_kernels_cy.pyx"],
        include_dirs=[np.get_include()],
        define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
    )
    return cythonize([ext], language_level=3)


setup(
    ext_modules=extensions(),
    cmdclass={"build_ext": optional_build_ext},
)
