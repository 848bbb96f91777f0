import os

from setuptools import Extension, setup

# The compiled kernels are an optional speedup: if Cython or a C compiler is
# missing the package still works through the pure-Python fallback module.
ext_modules = []
if os.environ.get("MONOFLAG_NO_EXT") != "1":
    try:
        import numpy as np
        from Cython.Build import cythonize

        extensions = [
            Extension(
                "monoflag._kernels",
                ["src/monoflag/_kernels.pyx"],
                include_dirs=[np.get_include()],
                extra_compile_args=["-O3"],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
            )
        ]
        ext_modules = cythonize(extensions, compiler_directives={"language_level": "3"})
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
