# cython: language_level=3
# cython: boundscheck=False
# cython: wraparound=False
"""Compiled arithmetic kernel.

Same contract as ``_pykernel``: Gaussian rationals as normalized int
triples ``(a, b, d)``, ``d > 0``, ``gcd(a, b, d) == 1``.  Integers are
Python longs (values outgrow machine words quickly under exact
arithmetic); the win over the pure kernel is removing interpreter
dispatch from the convolution loops.
"""

from math import gcd

BACKEND = "c"

ZERO = (0, 0, 1)
ONE = (1, 0, 1)


cpdef tuple qnormalize(a, b, d):
    if d < 0:
        a = -a
        b = -b
        d = -d
    g = gcd(gcd(a, b), d)
    if g > 1:
        a //= g
        b //= g
        d //= g
    return (a, b, d)


cpdef tuple qadd(tuple x, tuple y):
    a1 = x[0]; b1 = x[1]; d1 = x[2]
    a2 = y[0]; b2 = y[1]; d2 = y[2]
    if d1 == d2:
        return qnormalize(a1 + a2, b1 + b2, d1)
    return qnormalize(a1 * d2 + a2 * d1, b1 * d2 + b2 * d1, d1 * d2)


cpdef tuple qsub(tuple x, tuple y):
    a1 = x[0]; b1 = x[1]; d1 = x[2]
    a2 = y[0]; b2 = y[1]; d2 = y[2]
    if d1 == d2:
        return qnormalize(a1 - a2, b1 - b2, d1)
    return qnormalize(a1 * d2 - a2 * d1, b1 * d2 - b2 * d1, d1 * d2)


cpdef tuple qneg(tuple x):
    return (-x[0], -x[1], x[2])


cpdef tuple qmul(tuple x, tuple y):
    a1 = x[0]; b1 = x[1]; d1 = x[2]
    a2 = y[0]; b2 = y[1]; d2 = y[2]
    if b1 == 0 and b2 == 0:
        return qnormalize(a1 * a2, 0, d1 * d2)
    return qnormalize(a1 * a2 - b1 * b2, a1 * b2 + b1 * a2, d1 * d2)


cpdef tuple qinv(tuple x):
    a = x[0]; b = x[1]; d = x[2]
    if a == 0 and b == 0:
        raise ZeroDivisionError("inverse of zero Gaussian rational")
    return qnormalize(d * a, -d * b, a * a + b * b)


cpdef tuple qdiv(tuple x, tuple y):
    a1 = x[0]; b1 = x[1]; d1 = x[2]
    a2 = y[0]; b2 = y[1]; d2 = y[2]
    if a2 == 0 and b2 == 0:
        raise ZeroDivisionError("division by zero Gaussian rational")
    n = a2 * a2 + b2 * b2
    re = a1 * a2 + b1 * b2
    im = b1 * a2 - a1 * b2
    return qnormalize(d2 * re, d2 * im, d1 * n)


cpdef list qconv(list xs, list ys, Py_ssize_t nout):
    cdef Py_ssize_t i, j, jmax, nx, ny
    cdef tuple x, y
    out = [ZERO] * nout
    nx = len(xs)
    ny = len(ys)
    if nx > nout:
        nx = nout
    for i in range(nx):
        x = <tuple> xs[i]
        a1 = x[0]
        b1 = x[1]
        if a1 == 0 and b1 == 0:
            continue
        d1 = x[2]
        jmax = ny
        if jmax > nout - i:
            jmax = nout - i
        for j in range(jmax):
            y = <tuple> ys[j]
            a2 = y[0]
            b2 = y[1]
            if a2 == 0 and b2 == 0:
                continue
            t = qnormalize(a1 * a2 - b1 * b2, a1 * b2 + b1 * a2, d1 * y[2])
            out[i + j] = qadd(<tuple> out[i + j], t)
    return out


cpdef list qvadd(list xs, list ys):
    cdef Py_ssize_t i, n, nx, ny
    nx = len(xs)
    ny = len(ys)
    n = nx if nx > ny else ny
    out = [ZERO] * n
    for i in range(n):
        x = xs[i] if i < nx else ZERO
        y = ys[i] if i < ny else ZERO
        out[i] = qadd(<tuple> x, <tuple> y)
    return out


cpdef list qvscale(list xs, tuple c):
    return [qmul(<tuple> x, c) for x in xs]
