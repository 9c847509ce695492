"""Build script. The compiled kernel extension is optional: a failed build
(no Cython, no C compiler, or URYGRID_PURE=1) leaves the pure-Python
fallback in charge."""

import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("URYGRID_PURE") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "urygrid._kernels._ext",
                    ["src/urygrid/_kernels/_ext.pyx"],
                    optional=True,
                )
            ],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
