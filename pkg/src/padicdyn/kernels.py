"""Backend selection for the exhaustive-dynamics kernels.

The compiled extension is preferred when importable; setting the
environment variable PADICDYN_PURE forces the pure-Python fallback.
Both backends expose identical eval_table/census signatures and produce
bit-identical results.
"""

from __future__ import annotations

import os
from array import array

if os.environ.get("PADICDYN_PURE"):
    from . import _core_py as _impl

    BACKEND = "python"
else:
    try:
        from . import _core as _impl  # type: ignore[attr-defined]

        BACKEND = "compiled"
    except ImportError:
        from . import _core_py as _impl

        BACKEND = "python"


def backends() -> dict[str, object]:
    """All importable backends, for cross-checks and benchmarks."""
    from . import _core_py

    out = {"python": _core_py}
    try:
        from . import _core  # type: ignore[attr-defined]

        out["compiled"] = _core
    except ImportError:
        pass
    return out


def _zeros(n: int) -> array:
    return array("q", bytes(8 * n))


def eval_table(spec, poly_flat, impl=None) -> array:
    """Successor table of the polynomial map on O_F/pi^M."""
    impl = impl or _impl
    out = _zeros(spec.size)
    impl.eval_table(
        spec.p,
        spec.f,
        spec.e,
        spec.pmQ,
        array("q", spec.mods),
        array("q", spec.ured),
        array("q", spec.ered),
        array("q", poly_flat),
        len(poly_flat) // (spec.e * spec.f) - 1,
        spec.size,
        out,
    )
    return out


def census(table, impl=None) -> tuple[array, array]:
    """(tail lengths, eventual cycle lengths) for every node of the table."""
    impl = impl or _impl
    if not isinstance(table, array):
        table = array("q", table)
    size = len(table)
    tails = _zeros(size)
    cyclens = _zeros(size)
    impl.census(table, size, tails, cyclens)
    return tails, cyclens
