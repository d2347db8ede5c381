"""Select the canonical-labeling kernel at import time.

The compiled extension is used when it is importable and ``GCW_PURE_PYTHON``
is unset; otherwise the pure-Python twin is used.  ``BACKEND`` names the
active choice.
"""
import os

from . import _canon_py

pure_search = _canon_py.search

try:
    if os.environ.get("GCW_PURE_PYTHON"):
        raise ImportError("pure-python kernel requested")
    from . import _canon_ext
except ImportError:
    _canon_ext = None
    search = _canon_py.search
    BACKEND = "python"
else:
    search = _canon_ext.search
    BACKEND = "cython"

compiled_search = _canon_ext.search if _canon_ext is not None else None
