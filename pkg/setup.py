"""Build the optional compiled canonical-labeling kernel.

The package works without it: ``gcw._kernels`` falls back to the pure-Python
search when the extension is missing.  Set ``GCW_NO_EXT=1`` to skip the build.
"""
import os

from setuptools import setup

ext_modules = []
if not os.environ.get("GCW_NO_EXT"):
    try:
        from Cython.Build import cythonize
        from setuptools import Extension
    except ImportError:
        pass
    else:
        ext_modules = cythonize(
            [Extension("gcw._canon_ext", ["src/gcw/_canon_ext.pyx"], extra_compile_args=["-O2"])],
            compiler_directives={"language_level": "3"},
        )

setup(ext_modules=ext_modules)
