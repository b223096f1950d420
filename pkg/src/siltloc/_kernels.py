"""Selects the row-reduction kernel at import time.

Set ``SILTLOC_PURE_PYTHON=1`` to force the pure-Python path even when the
compiled extension is importable.
"""
import os

from ._rref_py import rref_exact
from ._rref_py import rref_modp as rref_modp_python

if os.environ.get("SILTLOC_PURE_PYTHON") == "1":
    rref_modp = rref_modp_python
    BACKEND = "python"
else:
    try:
        from ._rref import rref_modp
        BACKEND = "cython"
    except ImportError:  # extension not built
        rref_modp = rref_modp_python
        BACKEND = "python"

__all__ = ["BACKEND", "rref_exact", "rref_modp", "rref_modp_python"]
