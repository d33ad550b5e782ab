import numpy as np
from Cython.Build import cythonize
from setuptools import Extension, setup

extensions = [
    Extension(
        "charlier_zeros._kernels",
        ["src/charlier_zeros/_kernels.pyx"],
        include_dirs=[np.get_include()],
        libraries=["mpfr", "gmp"],
        extra_compile_args=["-O3", "-ffp-contract=off"],
        # a failed build still installs; the pure-Python fallback takes over
        optional=True,
    )
]

setup(
    ext_modules=cythonize(extensions, compiler_directives={"language_level": "3"}),
)
