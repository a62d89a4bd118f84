import os

from setuptools import Extension, setup

ext_modules = []
if not os.environ.get("WITTLAM_PURE"):
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [Extension("wittlam._kernel_c", ["src/wittlam/_kernel_c.pyx"])],
            language_level="3",
        )
    except ImportError:
        # No Cython: install the pure-Python kernel only.
        ext_modules = []

setup(ext_modules=ext_modules)
