import os

import numpy as np
from setuptools import Extension, setup

# COVARRAY_NO_EXT=1 skips the compiled core; the package then runs on its numpy fallback.
ext_modules = []
if not os.environ.get("COVARRAY_NO_EXT"):
    try:
        from Cython.Build import cythonize
    except ImportError:
        cythonize = None
    if cythonize is not None:
        ext_modules = cythonize(
            [
                Extension(
                    "covarray._kernels",
                    ["src/covarray/_kernels.pyx"],
                    include_dirs=[np.get_include()],
                    define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                    extra_compile_args=["-O3"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )

setup(ext_modules=ext_modules)
