"""Build script: compiles the optional enumeration kernel.

The package is fully functional without the extension (a pure-Python
kernel is selected at import time); building it just makes the heavy
counting runs much faster.
"""

import os
import sys

from setuptools import setup

ext_modules = []
if os.environ.get("RIDERPOLY_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            ["src/riderpoly/_speedups.pyx"],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        print("Cython not available; building without the compiled kernel",
              file=sys.stderr)

setup(ext_modules=ext_modules)
