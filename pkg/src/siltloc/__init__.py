"""Exact computations for silting theory and universal localisation over
finite-dimensional quiver algebras."""
from ._kernels import BACKEND
from .field import GF, QQ, Field

__version__ = "0.1.0"

__all__ = ["BACKEND", "GF", "QQ", "Field", "__version__"]
