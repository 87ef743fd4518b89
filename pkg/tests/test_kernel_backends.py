"""The compiled and pure-Python kernels must produce identical triples."""

import random

import pytest

from meroconn import _kernel
from meroconn._kernel import _pykernel

ckernel = pytest.importorskip("meroconn._kernel._ckernel")


def rand_triple(rng):
    return _pykernel.qnormalize(
        rng.randint(-50, 50), rng.randint(-50, 50), rng.randint(1, 30)
    )


def test_scalar_ops_agree():
    rng = random.Random(9)
    for _ in range(500):
        x, y = rand_triple(rng), rand_triple(rng)
        assert _pykernel.qadd(x, y) == ckernel.qadd(x, y)
        assert _pykernel.qsub(x, y) == ckernel.qsub(x, y)
        assert _pykernel.qmul(x, y) == ckernel.qmul(x, y)
        if y[0] or y[1]:
            assert _pykernel.qdiv(x, y) == ckernel.qdiv(x, y)
        if x[0] or x[1]:
            assert _pykernel.qinv(x) == ckernel.qinv(x)


def test_convolution_agrees():
    rng = random.Random(10)
    for _ in range(50):
        xs = [rand_triple(rng) for _ in range(rng.randint(1, 12))]
        ys = [rand_triple(rng) for _ in range(rng.randint(1, 12))]
        nout = rng.randint(1, len(xs) + len(ys))
        assert _pykernel.qconv(xs, ys, nout) == ckernel.qconv(xs, ys, nout)
        assert _pykernel.qvadd(xs, ys) == ckernel.qvadd(xs, ys)


def test_backend_switch_roundtrip():
    assert _kernel.active_backend() in _kernel.available_backends()
    before = _kernel.active_backend()
    try:
        _kernel.use_backend("python")
        assert _kernel.active_backend() == "python"
        from meroconn.field import gr

        assert (gr(1, 2) * gr(3, -1)).t == (5, 5, 1)
        _kernel.use_backend("c")
        assert (gr(1, 2) * gr(3, -1)).t == (5, 5, 1)
    finally:
        _kernel.use_backend(before)


def test_reduction_identical_across_backends():
    """A full canonical reduction gives identical exact output under both
    kernels (the benchmark compares their speed; this pins semantics)."""
    import random

    from meroconn.connection import canonical_reduce
    from meroconn.randomgen import rand_connection
    from meroconn.rootdata import Weight

    before = _kernel.active_backend()
    rng = random.Random(31)
    conn = rand_connection(rng, 3, 2, 8)
    try:
        _kernel.use_backend("c")
        form_c, gauge_c = canonical_reduce(conn, Weight([0, 0, 0]), 8)
        _kernel.use_backend("python")
        form_p, gauge_p = canonical_reduce(conn, Weight([0, 0, 0]), 8)
    finally:
        _kernel.use_backend(before)
    assert form_c.residue == form_p.residue
    assert form_c.polar == form_p.polar
    assert gauge_c == gauge_p
