"""Build script for the optional compiled sweep kernel.

The package is fully functional without the extension (a pure-Python
kernel is selected at import time), so a missing compiler or Cython
only costs speed, not features.
"""

from setuptools import Extension, setup

try:
    import numpy
    from Cython.Build import cythonize

    extensions = cythonize(
        [
            Extension(
                "gemclust._sweep",
                ["src/gemclust/_sweep.pyx"],
                include_dirs=[numpy.get_include()],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": 3},
    )
except ImportError:
    extensions = []

setup(ext_modules=extensions)
