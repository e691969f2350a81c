from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

ext_modules = []
if cythonize is not None:
    # optional=True: if the toolchain is missing the build logs a warning and
    # the package falls back to the pure-Python kernels at import time.
    ext_modules = cythonize(
        [Extension("vclock._kernels", ["src/vclock/_kernels.pyx"], optional=True)],
        language_level="3",
    )

setup(ext_modules=ext_modules)
