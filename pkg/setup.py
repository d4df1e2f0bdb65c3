"""Builds the compiled trajectory kernel; the package works without it
(the pure-Python twin is selected at import time), so extension build
failures are non-fatal.
"""

from setuptools import Extension, setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [Extension("pwlienard._kernel_cy", ["src/pwlienard/_kernel_cy.pyx"])],
        compiler_directives={"language_level": "3"},
    )
except Exception as exc:  # pragma: no cover - environment dependent
    print(f"cython unavailable, building without the compiled kernel: {exc}")

setup(ext_modules=ext_modules)
