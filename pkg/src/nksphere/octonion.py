"""Cayley algebra core.

Octonions are represented as plain numpy arrays of shape ``(..., 8)`` holding
coordinates in the orthonormal basis ``e0, ..., e7`` (``e0`` is the unit).
Imaginary octonions use shape ``(..., 7)`` for the coordinates along
``e1, ..., e7``.  Every function broadcasts over leading axes, so batches of
inputs are first-class.

Two independent encodings of the multiplication are kept:

* ``_REFERENCE_IMAGINARY_TABLE`` hard-codes the classical 7x7 table of signed
  basis products for the doubled-quaternion basis, and
* :func:`_cayley_dickson_tensor` rebuilds the full structure tensor from the
  doubling rule ``(q, r)(s, t) = (qs - conj(t) r, tq + r conj(s))``.

They are asserted equal at import time, so a transcription error in either
one cannot survive.  Structure constants are exact integers; products of
integer-valued inputs are computed in integer arithmetic.
"""

from __future__ import annotations

import numpy as np

__all__ = [
    "STRUCTURE_TENSOR",
    "assoc_form",
    "associator",
    "basis",
    "conjugate",
    "cross",
    "embed_imaginary",
    "imaginary_basis",
    "imaginary_part",
    "inner",
    "j_structure",
    "multiply",
    "norm",
    "real_part",
    "structure_constants",
]


def _quaternion_multiply(a: np.ndarray, b: np.ndarray) -> np.ndarray:
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


def _quaternion_conjugate(a: np.ndarray) -> np.ndarray:
    return np.array([a[0], -a[1], -a[2], -a[3]])


def _cayley_dickson_tensor() -> np.ndarray:
    """Full (8, 8, 8) integer structure tensor built from the doubling rule."""
    tensor = np.zeros((8, 8, 8), dtype=np.int64)
    eye = np.eye(8, dtype=np.int64)
    for i in range(8):
        for j in range(8):
            q, r = eye[i, :4], eye[i, 4:]
            s, t = eye[j, :4], eye[j, 4:]
            left = _quaternion_multiply(q, s) - _quaternion_multiply(_quaternion_conjugate(t), r)
            right = _quaternion_multiply(t, q) + _quaternion_multiply(r, _quaternion_conjugate(s))
            tensor[i, j] = np.concatenate([left, right])
    return tensor


# Classical table, rows e1..e7 times columns e1..e7; entry (k, sign) encodes
# sign * e_k, with k == 0 standing for the unit e0.
_REFERENCE_IMAGINARY_TABLE = (
    ((0, -1), (3, +1), (2, -1), (5, +1), (4, -1), (7, -1), (6, +1)),
    ((3, -1), (0, -1), (1, +1), (6, +1), (7, +1), (4, -1), (5, -1)),
    ((2, +1), (1, -1), (0, -1), (7, +1), (6, -1), (5, +1), (4, -1)),
    ((5, -1), (6, -1), (7, -1), (0, -1), (1, +1), (2, +1), (3, +1)),
    ((4, +1), (7, -1), (6, +1), (1, -1), (0, -1), (3, -1), (2, +1)),
    ((7, +1), (4, +1), (5, -1), (2, -1), (3, +1), (0, -1), (1, -1)),
    ((6, -1), (5, +1), (4, +1), (3, -1), (2, -1), (1, +1), (0, -1)),
)


def _reference_tensor() -> np.ndarray:
    tensor = np.zeros((8, 8, 8), dtype=np.int64)
    tensor[0, :, :] = np.eye(8, dtype=np.int64)
    tensor[:, 0, :] = np.eye(8, dtype=np.int64)
    for i in range(1, 8):
        for j in range(1, 8):
            k, sign = _REFERENCE_IMAGINARY_TABLE[i - 1][j - 1]
            tensor[i, j, k] = sign
    return tensor


STRUCTURE_TENSOR = _cayley_dickson_tensor()
_STRUCTURE_TENSOR_F = STRUCTURE_TENSOR.astype(np.float64)

if not np.array_equal(STRUCTURE_TENSOR, _reference_tensor()):  # pragma: no cover
    raise AssertionError("Cayley-Dickson structure tensor disagrees with the reference table")


def structure_constants() -> list[list[int]]:
    """Nonzero structure constants as ``[i, j, k, sign]`` quadruples.

    ``e_i e_j = sign * e_k`` for basis indices ``i, j, k`` in ``0..7``.
    """
    out = []
    for i in range(8):
        for j in range(8):
            for k in range(8):
                s = int(STRUCTURE_TENSOR[i, j, k])
                if s != 0:
                    out.append([i, j, k, s])
    return out


def basis(k: int) -> np.ndarray:
    """Basis octonion ``e_k`` for ``k`` in ``0..7``."""
    if not 0 <= k <= 7:
        raise ValueError(f"basis index must be in 0..7, got {k}")
    v = np.zeros(8)
    v[k] = 1.0
    return v


def imaginary_basis(k: int) -> np.ndarray:
    """Imaginary basis vector ``e_k`` (7 coordinates) for ``k`` in ``1..7``."""
    if not 1 <= k <= 7:
        raise ValueError(f"imaginary basis index must be in 1..7, got {k}")
    v = np.zeros(7)
    v[k - 1] = 1.0
    return v


def embed_imaginary(x: np.ndarray) -> np.ndarray:
    """Embed ``(..., 7)`` imaginary coordinates into ``(..., 8)`` octonions."""
    x = np.asarray(x)
    if x.shape[-1] != 7:
        raise ValueError(f"expected trailing dimension 7, got {x.shape}")
    out = np.zeros(x.shape[:-1] + (8,), dtype=np.result_type(x.dtype, np.float64))
    out[..., 1:] = x
    return out


def imaginary_part(x: np.ndarray) -> np.ndarray:
    """Coordinates of the imaginary part, shape ``(..., 7)``."""
    x = np.asarray(x)
    if x.shape[-1] != 8:
        raise ValueError(f"expected trailing dimension 8, got {x.shape}")
    return x[..., 1:]


def real_part(x: np.ndarray) -> np.ndarray:
    """Coefficient of ``e0``, shape ``(...,)``."""
    return np.asarray(x)[..., 0]


def multiply(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Octonion product ``x * y``; bilinear, broadcasts over leading axes.

    Integer inputs are multiplied in exact integer arithmetic.
    """
    x = np.asarray(x)
    y = np.asarray(y)
    if x.shape[-1] != 8 or y.shape[-1] != 8:
        raise ValueError("multiply expects (..., 8) arrays")
    if np.issubdtype(x.dtype, np.integer) and np.issubdtype(y.dtype, np.integer):
        return np.einsum("...i,...j,ijk->...k", x, y, STRUCTURE_TENSOR)
    return np.einsum("...i,...j,ijk->...k", x, y, _STRUCTURE_TENSOR_F)


def conjugate(x: np.ndarray) -> np.ndarray:
    """Conjugation: fixes the ``e0`` component, negates the imaginary part."""
    x = np.asarray(x)
    if x.shape[-1] != 8:
        raise ValueError("conjugate expects (..., 8) arrays")
    out = -x.copy()
    out[..., 0] = x[..., 0]
    return out


def inner(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Inner product; equals the ``e0`` component of ``(x conj(y) + y conj(x)) / 2``.

    The basis ``e0..e7`` is orthonormal for it, so this is the Euclidean dot
    product of coordinates.
    """
    x = np.asarray(x)
    y = np.asarray(y)
    return np.einsum("...i,...i->...", x, y)


def norm(x: np.ndarray) -> np.ndarray:
    """Euclidean norm of an octonion or imaginary octonion."""
    x = np.asarray(x)
    return np.sqrt(np.einsum("...i,...i->...", x, x))


def cross(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Vector product ``(xy - yx) / 2`` of imaginary octonions, shape ``(..., 7)``.

    For imaginary arguments this equals the imaginary part of ``xy``.
    """
    x = np.asarray(x)
    y = np.asarray(y)
    if x.shape[-1] != 7 or y.shape[-1] != 7:
        raise ValueError("cross expects (..., 7) imaginary coordinates")
    return multiply(embed_imaginary(x), embed_imaginary(y))[..., 1:]


def associator(x: np.ndarray, y: np.ndarray, z: np.ndarray) -> np.ndarray:
    """Associator ``(xy)z - x(yz)``; trilinear, shape ``(..., 8)``.

    Totally antisymmetric on imaginary arguments, zero whenever two arguments
    coincide.
    """
    x = np.asarray(x)
    y = np.asarray(y)
    z = np.asarray(z)
    return multiply(multiply(x, y), z) - multiply(x, multiply(y, z))


def assoc_form(x: np.ndarray, y: np.ndarray, z: np.ndarray) -> np.ndarray:
    """Associative 3-form ``phi(x, y, z) = <x, yz>`` on imaginary octonions.

    Totally antisymmetric; bounded by 1 in absolute value on orthonormal
    triples.
    """
    x = np.asarray(x)
    y = np.asarray(y)
    z = np.asarray(z)
    if x.shape[-1] != 7:
        raise ValueError("assoc_form expects (..., 7) imaginary coordinates")
    return np.einsum("...i,...i->...", x, cross(y, z))


def j_structure(p: np.ndarray, x: np.ndarray, tol: float = 1e-10) -> np.ndarray:
    """Almost complex structure ``J_p(X) = p * X = p x X`` on the unit sphere.

    Requires ``p`` unit and ``X`` tangent (``<p, X> = 0``) within ``tol``;
    violations raise instead of being projected away, so caller bugs surface.
    """
    p = np.asarray(p, dtype=float)
    x = np.asarray(x, dtype=float)
    if p.shape[-1] != 7 or x.shape[-1] != 7:
        raise ValueError("j_structure expects (..., 7) imaginary coordinates")
    unit_err = np.max(np.abs(norm(p) - 1.0))
    if unit_err > tol:
        raise ValueError(f"j_structure requires unit p; |norm(p) - 1| = {unit_err:.3e}")
    tang_err = np.max(np.abs(inner(p, x)))
    if tang_err > tol:
        raise ValueError(f"j_structure requires X tangent to p; |<p, X>| = {tang_err:.3e}")
    return cross(p, x)
