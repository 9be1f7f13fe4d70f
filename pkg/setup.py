"""Build script: optionally compiles the CDCL solver kernel with Cython.

The package is pure Python and fully functional without the extension.
When Cython is available, ``eprimesat/solver/_core.py`` is compiled to a
C extension that shadows the interpreted module at import time; otherwise
the build silently falls back to the pure-Python kernel.
"""

import os

from setuptools import setup

ext_modules = []
if os.environ.get("EPRIMESAT_PURE") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            ["src/eprimesat/solver/_core.py"],
            language_level=3,
            quiet=True,
        )
    except ImportError:
        pass

setup(ext_modules=ext_modules)
