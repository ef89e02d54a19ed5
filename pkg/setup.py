"""Build script for the optional compiled curve kernel.

The package works without the extension (a pure-Python kernel is selected
at import time), so a failed compile must not abort the install.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "vtsim._curvecore",
                ["src/vtsim/_curvecore.pyx"],
                optional=True,
            )
        ],
        language_level=3,
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
