"""Selects the frontier combination kernel at import time.

The compiled ``_combine`` extension is used when it is importable; set
``FAIRDELIVERY_BACKEND=python`` to force the pure-Python fallback.
"""
import os

from . import _combine_py

python_combine = _combine_py.combine_profiles
compiled_combine = None

if os.environ.get("FAIRDELIVERY_BACKEND", "").lower() != "python":
    try:
        from ._combine import combine_profiles as compiled_combine
    except ImportError:
        compiled_combine = None

BACKEND = "cython" if compiled_combine is not None else "python"


def combine_profiles(left, right, perms):
    if compiled_combine is not None:
        try:
            return compiled_combine(left, right, perms)
        except OverflowError:
            pass  # profile keys too wide for int64 packing
    return python_combine(left, right, perms)
