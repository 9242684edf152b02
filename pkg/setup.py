# Build the optional extension in place with:
#   python3 setup.py build_ext --inplace
# Without Cython or a compiler the package still installs and uses the
# pure-Python kernels.
from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize
    from setuptools import Extension

    ext_modules = cythonize(
        [Extension("monopaths._ckernels", ["src/monopaths/_ckernels.pyx"], extra_compile_args=["-O3"])],
        language_level=3,
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
