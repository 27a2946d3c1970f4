"""Build hook: compile the optional monodromy kernel when possible.

The package is fully functional without the extension (a pure-Python
fallback with the same contract is selected at import); any build failure
here therefore degrades to a pure install instead of aborting.
"""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/rlambert/_speedups.pyx"],
        compiler_directives={"language_level": "3"},
    )
except Exception as exc:  # noqa: BLE001 - optional speedup, never fatal
    print(f"rlambert: skipping compiled kernel ({exc}); using pure-Python fallback")

setup(ext_modules=ext_modules)
