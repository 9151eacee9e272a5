import os

from setuptools import Extension, setup

# The compiled kernels are an optimization, not a requirement: if Cython or a
# C compiler is missing, the package installs pure-Python and selects the
# fallback kernels at import time.
ext_modules = []
if os.environ.get("MAXCOVER_PURE") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [Extension("maxcover._fastpath",
                       ["src/maxcover/_fastpath.pyx"])],
            compiler_directives={
                "language_level": "3",
                "boundscheck": False,
                "wraparound": False,
                "cdivision": True,
                "initializedcheck": False,
            },
        )
    except ImportError:
        pass

setup(ext_modules=ext_modules)
