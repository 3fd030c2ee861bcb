"""Backend selection for the quantifier-block kernel.

The compiled backend is used when the extension was built, unless the
environment variable ``APFRAG_PURE_PYTHON`` is set to a non-empty value.
Both backends implement ``first_failure(program, consts, points, rows,
nvars)``; the compiled one works on 64-bit integers and hands anything
that overflows back to the unbounded pure-Python backend. Small tuple
spaces stay on the Python backend, which has no marshalling cost.
"""
import os

from . import _kernel_py

try:
    from . import _kernel_c as _compiled
except ImportError:
    _compiled = None

_kernel_c = None if os.environ.get("APFRAG_PURE_PYTHON") else _compiled

BACKEND = _kernel_c.BACKEND if _kernel_c is not None else _kernel_py.BACKEND


# Marshalling the inputs costs about as much per point as the generated
# Python loop spends per tuple, so the compiled kernel only pays off once the
# tuple space dwarfs the input.
_COMPILED_RATIO = 8


def first_failure(program, consts, points, rows, nvars):
    if _kernel_c is not None:
        n = len(points)
        if n ** nvars >= _COMPILED_RATIO * n * (1 + len(rows)):
            try:
                return _kernel_c.first_failure(program, consts, points, rows, nvars)
            except OverflowError:
                pass
    return _kernel_py.first_failure(program, consts, points, rows, nvars)


def available_backends():
    """Every importable backend, whatever the environment selects."""
    out = {"python": _kernel_py.first_failure}
    if _compiled is not None:
        out["cython"] = _compiled.first_failure
    return out
