"""Kernel selection: compiled extension when available, pure Python otherwise.

Set NILPROD_BACKEND=py to force the pure-Python kernel (or =c to require the
compiled one).  benchmarks/bench_kernels.py compares the two.
"""

from __future__ import annotations

import os

from . import _kernel_py
from .errors import NilprodError
from .tables import KernelData

try:
    from . import _kernel_c

    HAVE_C = True
except ImportError:
    _kernel_c = None
    HAVE_C = False


def default_backend() -> str:
    env = os.environ.get("NILPROD_BACKEND", "").strip().lower()
    if env in ("py", "python", "pure"):
        return "py"
    if env in ("c", "cython", "compiled"):
        if not HAVE_C:
            raise NilprodError("NILPROD_BACKEND=c but the compiled kernel is not built")
        return "c"
    return "c" if HAVE_C else "py"


def make_kernel(data: KernelData, backend: str | None = None):
    backend = backend or default_backend()
    if backend == "c":
        if not HAVE_C:
            raise NilprodError("compiled kernel requested but not built")
        return _kernel_c.Kernel(data)
    if backend == "py":
        return _kernel_py.Kernel(data)
    raise NilprodError(f"unknown kernel backend {backend!r}")
