import os

from setuptools import setup

ext_modules = []
if os.environ.get("YBV_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            ["src/ybverify/_corex.pyx"],
            compiler_directives={
                "language_level": 3,
                "boundscheck": False,
                "wraparound": False,
            },
        )
        # the compiled kernel is an optimization; the package works without it
        for ext in ext_modules:
            ext.optional = True
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
