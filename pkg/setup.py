import numpy
from Cython.Build import cythonize
from setuptools import Extension, setup

extensions = [
    Extension(
        "tansearch._kernel",
        sources=["src/tansearch/_kernel.pyx"],
        include_dirs=[numpy.get_include()],
        # IEEE semantics are load-bearing: the pure-Python fallback must be
        # bit-identical, so no contraction into fused multiply-adds.
        extra_compile_args=["-O3", "-ffp-contract=off"],
        define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
    )
]

setup(
    ext_modules=cythonize(
        extensions,
        compiler_directives={"language_level": "3"},
    )
)
