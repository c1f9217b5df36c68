"""Independent product oracle for the tests.

Multiplies octonions directly as pairs of quaternions, with no shared code
with the package (which goes through a precomputed structure tensor).  Used
to freeze expected values for basis products, associators and form values.
"""

from __future__ import annotations

import numpy as np


def quat_mul(a, b):
    a0, a1, a2, a3 = a
    b0, b1, b2, b3 = b
    return np.array(
        [
            a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3,
            a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
            a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1,
            a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0,
        ]
    )


def quat_conj(a):
    return np.array([a[0], -a[1], -a[2], -a[3]])


def oct_mul(x, y):
    """(q, r)(s, t) = (qs - conj(t) r, tq + r conj(s)) on pairs of quaternions."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    q, r = x[:4], x[4:]
    s, t = y[:4], y[4:]
    return np.concatenate(
        [quat_mul(q, s) - quat_mul(quat_conj(t), r), quat_mul(t, q) + quat_mul(r, quat_conj(s))]
    )


def oct_associator(x, y, z):
    return oct_mul(oct_mul(x, y), z) - oct_mul(x, oct_mul(y, z))


def e(k):
    v = np.zeros(8)
    v[k] = 1.0
    return v
