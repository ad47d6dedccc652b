import itertools
import os
import subprocess
import sys

import pytest
from hypothesis import given
from hypothesis import strategies as st

from resheight import _pykernels, kernels

needs_ext = pytest.mark.skipif(kernels.BACKEND != "cython", reason="compiled kernels not built")


def test_perm_sign():
    assert _pykernels.perm_sign((0, 1, 2)) == 1
    assert _pykernels.perm_sign((1, 0, 2)) == -1
    assert _pykernels.perm_sign((2, 0, 1)) == 1


@needs_ext
@given(st.integers(1, 4), st.integers(1, 14), st.data())
def test_band_minor_backends_agree(m, n, data):
    removed = data.draw(st.lists(st.integers(0, m + n - 1), min_size=m, max_size=m, unique=True))
    assert kernels.band_minor(m, n, removed, backend="cython") == kernels.band_minor(m, n, removed, backend="python")


@needs_ext
@pytest.mark.parametrize("m,n", [(m, n) for m in range(1, 5) for n in range(1, 12) if m * n <= 30])
def test_laplace_backends_agree(m, n):
    assert kernels.laplace_expand(m, n, backend="cython") == kernels.laplace_expand(m, n, backend="python")


@needs_ext
def test_dense_cap_raises():
    from resheight import _ckernels

    with pytest.raises(MemoryError):
        _ckernels.laplace_expand(3, 10, max_cells=10)


class _Exploding:
    def __init__(self, exc):
        self.exc = exc

    def band_minor(self, *a):
        raise self.exc

    def laplace_expand(self, *a):
        raise self.exc


@pytest.mark.parametrize("exc", [OverflowError("int64"), MemoryError()])
def test_fallback_to_exact(monkeypatch, exc):
    monkeypatch.setattr(kernels, "_ext", _Exploding(exc))
    assert kernels.laplace_expand(2, 5) == _pykernels.laplace_expand(2, 5)
    if isinstance(exc, OverflowError):
        assert kernels.band_minor(2, 5, (0, 3)) == _pykernels.band_minor(2, 5, (0, 3))


def test_backend_names():
    with pytest.raises(ValueError):
        kernels.laplace_expand(2, 2, backend="fortran")
    assert kernels.laplace_expand(2, 3, backend="python") == _pykernels.laplace_expand(2, 3)


def test_slice_placements_cover_laplace():
    # summing the placements for every g-multiset reproduces the full expansion
    m, n = 2, 4
    full = _pykernels.laplace_expand(m, n)
    for gidx in itertools.combinations_with_replacement(range(n + 1), m):
        acc = {}
        for rows, sign in _pykernels.slice_placements(m, n, gidx):
            for k, v in _pykernels.band_minor(m, n, rows).items():
                acc[k] = acc.get(k, 0) + sign * v
        acc = {k: v for k, v in acc.items() if v}
        assert acc == full.get(gidx, {})


def test_pure_python_switch():
    env = dict(os.environ, RESHEIGHT_PURE_PYTHON="1")
    code = "from resheight import BACKEND; from resheight.cubic import cubic_height; print(BACKEND, cubic_height(6))"
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.split() == ["python", "18"]
