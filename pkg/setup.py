import os

from setuptools import setup

ext_modules = []
if os.environ.get("MFCAT_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            ["src/mfcat/_kernel_cy.pyx"], language_level=3
        )
    except ImportError:
        # no Cython available: the pure Python kernel is used instead
        ext_modules = []

setup(ext_modules=ext_modules)
