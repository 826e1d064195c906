"""Backend selection for the hot kernels.

The compiled extension ``jonestails._kernels`` is used when it imports;
otherwise the pure-Python twin in ``jonestails._pykernels`` is used.  Both
produce bit-identical results, so the choice only affects speed.
"""

from __future__ import annotations

from types import ModuleType

from . import _pykernels

try:  # pragma: no cover - depends on the build
    from . import _kernels as _compiled
except ImportError:  # pragma: no cover
    _compiled = None

_active: ModuleType = _compiled if _compiled is not None else _pykernels


def backend() -> str:
    """Name of the active backend: ``"compiled"`` or ``"python"``."""
    return "compiled" if _active is _compiled else "python"


def available() -> list[str]:
    return ["python"] + (["compiled"] if _compiled is not None else [])


def use_backend(name: str) -> None:
    """Switch backend (used by the benchmark and the backend-parity tests)."""
    global _active
    if name == "python":
        _active = _pykernels
    elif name == "compiled":
        if _compiled is None:
            raise RuntimeError("compiled kernels are not built")
        _active = _compiled
    else:
        raise ValueError(f"unknown backend {name!r}")


def convolve(a, b, n):
    return _active.convolve(a, b, n)


def mul_one_minus_qk(c, k, n):
    return _active.mul_one_minus_qk(c, k, n)


def div_one_minus_qk(c, k, n):
    return _active.div_one_minus_qk(c, k, n)


def accumulate_shifted(acc, src, shift, factor):
    return _active.accumulate_shifted(acc, src, shift, factor)


def adm_walk(plan, limit2, cap, order_n, collect):
    return _active.adm_walk(plan, limit2, cap, order_n, collect)
