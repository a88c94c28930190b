"""Kernel backend selection.

The compiled Cython kernels are used when the extension built; otherwise
the pure-NumPy fallback. Override with the TGOPT_KERNELS environment
variable ("compiled" or "python") or :func:`set_backend` (tests and
benchmarks use the latter to compare both implementations).
"""

import os

from . import _kernels_py

try:
    from . import _kernels  # compiled extension, optional
except ImportError:
    _kernels = None

_BACKENDS = {"python": _kernels_py}
if _kernels is not None:
    _BACKENDS["compiled"] = _kernels


def available_backends() -> tuple[str, ...]:
    return tuple(sorted(_BACKENDS))


def set_backend(name: str):
    """Select the kernel module by name and return it."""
    global kernels
    try:
        kernels = _BACKENDS[name]
    except KeyError:
        raise ValueError(
            f"unknown kernel backend {name!r}; available: {available_backends()}"
        ) from None
    return kernels


def backend_name() -> str:
    return kernels.NAME


_env = os.environ.get("TGOPT_KERNELS")
if _env:
    kernels = set_backend(_env)
else:
    kernels = _BACKENDS.get("compiled", _kernels_py)
