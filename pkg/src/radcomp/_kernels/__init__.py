"""Backend selection for the packed-polynomial kernels.

The numba kernels are used when numba imports cleanly, unless the
environment variable ``RADCOMP_DISABLE_NUMBA`` is set to a non-empty value
other than ``0``.  The numpy kernels compute the same residues.
"""

import os
from types import SimpleNamespace

from . import numpy_impl

__all__ = ["BACKEND", "get_kernels", "available_backends"]


def _numba_module():
    try:
        from . import numba_impl
    except ImportError:  # numba missing or broken
        return None
    return numba_impl


def available_backends() -> list[str]:
    return ["numba", "numpy"] if _numba_module() is not None else ["numpy"]


def get_kernels(name: str | None = None) -> SimpleNamespace:
    """Kernel namespace with ``apply_terms``, the two diagonal kernels and ``name``."""
    if name is None:
        name = BACKEND
    if name == "numba":
        mod = _numba_module()
        if mod is None:
            raise RuntimeError("numba backend requested but numba is not importable")
    elif name == "numpy":
        mod = numpy_impl
    else:
        raise ValueError(f"unknown kernel backend {name!r}")
    return SimpleNamespace(
        name=name,
        apply_terms=mod.apply_terms,
        apply_diagonal=mod.apply_diagonal,
        apply_diagonal_exact=mod.apply_diagonal_exact,
    )


def _default() -> str:
    flag = os.environ.get("RADCOMP_DISABLE_NUMBA", "")
    if flag and flag != "0":
        return "numpy"
    return "numba" if _numba_module() is not None else "numpy"


BACKEND = _default()
