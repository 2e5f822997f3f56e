from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
    ext_modules = cythonize(
        [
            Extension(
                "padeforge.kernels._ckernels",
                ["src/padeforge/kernels/_ckernels.pyx"],
                # -fcx-limited-range: naive complex multiply (no __muldc3
                # recovery); non-finite values still propagate as nan/inf,
                # which is all the pole detection relies on
                extra_compile_args=["-O3", "-fcx-limited-range"],
            )
        ],
        language_level=3,
    )
except ImportError:
    # No Cython available: the pure-numpy fallback kernels are used.
    ext_modules = []

setup(ext_modules=ext_modules)
