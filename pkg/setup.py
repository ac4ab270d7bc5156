"""Build hook for the optional compiled simplex kernels.

Falls back to a pure-Python install when Cython or a C compiler is missing.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

extensions = []
if cythonize is not None:
    extensions = cythonize(
        [Extension("coherent._ckernels", ["src/coherent/_ckernels.pyx"], optional=True)],
        language_level=3,
    )

setup(ext_modules=extensions)
