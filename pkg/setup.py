"""Build script for the optional compiled finite-volume kernel.

The package is pure Python plus one Cython extension for the hot update
loop.  If Cython or a C compiler is unavailable the extension is simply
skipped and chaplab.fv falls back to the numpy kernel at import time.
"""

from setuptools import Extension, setup

try:
    import numpy
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "chaplab.fv._kernel",
                sources=["src/chaplab/fv/_kernel.pyx"],
                include_dirs=[numpy.get_include()],
                extra_compile_args=["-O3"],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
            )
        ],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
