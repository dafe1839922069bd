import os

from setuptools import Extension, setup

# The compiled kernels are an optional speedup: lhc._kernels falls back to a
# bit-identical pure-Python implementation when the extension is missing.
# Set LHC_NO_EXTENSION=1 to skip the build entirely.
ext_modules = []
if not os.environ.get("LHC_NO_EXTENSION"):
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "lhc._kernels._ckernels",
                    ["src/lhc/_kernels/_ckernels.pyx"],
                    # -ffp-contract=off keeps doubles in strict IEEE order so the
                    # compiled path matches the pure path bit for bit.
                    extra_compile_args=["-O3", "-ffp-contract=off"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
