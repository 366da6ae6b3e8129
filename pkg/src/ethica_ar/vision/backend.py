"""Kernel backend selection.

The compiled extension is preferred when it imported cleanly; otherwise the
NumPy fallback is used. `ETHICA_AR_BACKEND=python|compiled` forces a choice
at import time, and `use_backend` swaps backends temporarily (benchmarks,
equivalence tests).
"""

from __future__ import annotations

import os
from contextlib import contextmanager

from . import _kernels_py

try:
    from . import _kernels_cy
except ImportError:
    _kernels_cy = None

_BACKENDS = {"python": _kernels_py}
if _kernels_cy is not None:
    _BACKENDS["compiled"] = _kernels_cy


def available_backends() -> tuple[str, ...]:
    return tuple(sorted(_BACKENDS))


def _resolve(name: str):
    if name not in _BACKENDS:
        raise ValueError(
            f"kernel backend {name!r} is not available (have: {', '.join(available_backends())})"
        )
    return _BACKENDS[name]


_forced = os.environ.get("ETHICA_AR_BACKEND")
if _forced:
    _active = _resolve(_forced)
else:
    _active = _kernels_cy if _kernels_cy is not None else _kernels_py


def kernels():
    """The currently active kernel module."""
    return _active


def backend_name() -> str:
    return _active.BACKEND_NAME


@contextmanager
def use_backend(name: str):
    """Temporarily switch the active backend. Not thread-safe; intended for
    benchmarks and tests."""
    global _active
    previous = _active
    _active = _resolve(name)
    try:
        yield _active
    finally:
        _active = previous
