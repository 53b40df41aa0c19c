"""Build hook for the optional compiled kernel core.

The package is fully functional without the extension; the pure numpy
fallback is selected at import when affharm._kernels._core is missing.
"""

from setuptools import Extension, setup

try:
    import numpy
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "affharm._kernels._core",
                ["src/affharm/_kernels/_core.pyx"],
                include_dirs=[numpy.get_include()],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
