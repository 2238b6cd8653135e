from setuptools import setup
from Cython.Build import cythonize

setup(
    ext_modules=cythonize(
        ["src/mcgcoarse/_kernel.pyx"],
        language_level=3,
    ),
)
