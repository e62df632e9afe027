"""Build script for the optional compiled traversal kernels.

The package works without a compiler: if the extension cannot be built,
`gnutellab.kernels` falls back to the pure-Python implementation at import
time.  Build with `pip install -e . --no-build-isolation`.
"""

from setuptools import Extension, setup

try:
    import numpy
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "gnutellab._speedups",
                ["src/gnutellab/_speedups.pyx"],
                include_dirs=[numpy.get_include()],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
