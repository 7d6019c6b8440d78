"""Backend selection for the gate kernels.

QCBM_BACKEND=numpy forces the pure-numpy path; QCBM_BACKEND=numba forces
the jitted path (ImportError if numba is missing). Unset, numba is used
when importable and numpy otherwise. The flag is read once, at import.
"""

from __future__ import annotations

import os

from . import _kernels_numpy
from ._kernels_numpy import AXIS_X, AXIS_Y, CNOT, RX, RY  # noqa: F401

try:
    from . import _kernels_numba

    HAS_NUMBA = True
except ImportError:  # pragma: no cover - numba is a hard dep, but stay usable without it
    _kernels_numba = None
    HAS_NUMBA = False

_VALID = ("numba", "numpy")


def get_backend(name: str | None = None):
    """Return the kernel module for *name* (``"numba"`` or ``"numpy"``)."""
    if name is None:
        name = os.environ.get("QCBM_BACKEND", "").strip().lower() or None
    if name is None:
        return _kernels_numba if HAS_NUMBA else _kernels_numpy
    if name not in _VALID:
        raise ValueError(f"unknown kernel backend {name!r}, expected one of {_VALID}")
    if name == "numba":
        if not HAS_NUMBA:
            raise ImportError("QCBM_BACKEND=numba but numba is not importable")
        return _kernels_numba
    return _kernels_numpy


_active = get_backend()

BACKEND_NAME = "numba" if _active is _kernels_numba else "numpy"

apply_rotation = _active.apply_rotation
apply_cnot = _active.apply_cnot
apply_pauli = _active.apply_pauli
run_program = _active.run_program
adjoint_sweep = _active.adjoint_sweep
