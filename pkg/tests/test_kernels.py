import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from fairdelivery import kernels
from fairdelivery.frontier import _permutations

pytestmark = pytest.mark.skipif(kernels.compiled_combine is None,
                                reason="compiled kernel not built")


@st.composite
def operands(draw):
    n = draw(st.integers(1, 4))
    row = st.lists(st.integers(0, 12), min_size=n, max_size=n).map(
        lambda r: sorted(r, reverse=True))
    left = draw(st.lists(row, min_size=0, max_size=12))
    right = draw(st.lists(row, min_size=0, max_size=12))
    return (np.array(left, dtype=np.int64).reshape(-1, n),
            np.array(right, dtype=np.int64).reshape(-1, n), n)


@given(operands(), st.sampled_from([1, 7, 1 << 20]))
def test_backends_agree(ops, chunk):
    left, right, n = ops
    perms = _permutations(n)
    p1, v1 = kernels.python_combine(left, right, perms)
    p2, v2 = kernels.compiled_combine(left, right, perms, chunk=chunk)
    assert p1.tolist() == p2.tolist()
    assert v1.tolist() == v2.tolist()


def test_overflow_falls_back():
    left = np.array([[2 ** 40, 0]], dtype=np.int64)
    right = np.array([[2 ** 40, 1]], dtype=np.int64)
    perms = _permutations(2)
    with pytest.raises(OverflowError):
        kernels.compiled_combine(left, right, perms)
    profiles, _ = kernels.combine_profiles(left, right, perms)
    assert profiles.tolist() == [[2 ** 40 + 1, 2 ** 40], [2 ** 41, 1]]


def test_backend_name():
    assert kernels.BACKEND == "cython"


def test_env_forces_python_backend():
    import os
    import subprocess
    import sys

    env = dict(os.environ, FAIRDELIVERY_BACKEND="python")
    out = subprocess.run([sys.executable, "-c",
                          "from fairdelivery import kernels; print(kernels.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"
