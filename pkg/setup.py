from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

if cythonize is not None:
    ext_modules = cythonize(
        [Extension("padicdyn._core", ["src/padicdyn/_core.pyx"], extra_compile_args=["-O2"])],
        compiler_directives={
            "language_level": "3",
            "boundscheck": False,
            "wraparound": False,
            "cdivision": True,
        },
    )
else:
    # No Cython at build time: install without the compiled kernels.
    # padicdyn.kernels falls back to the pure-Python implementation.
    ext_modules = []

setup(ext_modules=ext_modules)
