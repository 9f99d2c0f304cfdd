"""Kernel selection: compiled extension when importable, pure Python otherwise.

Set ``EXACT_LATTICE_PURE=1`` to force the fallback.
"""
import os

from . import _pykernels

BACKEND = "python"
rref_modp = _pykernels.rref_modp

if not os.environ.get("EXACT_LATTICE_PURE"):
    try:
        from . import _ckernels
    except ImportError:  # extension not built
        pass
    else:
        rref_modp = _ckernels.rref_modp
        BACKEND = "cython"

__all__ = ["BACKEND", "rref_modp"]
