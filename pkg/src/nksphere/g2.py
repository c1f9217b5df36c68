"""Automorphism group machinery: derivations, basic triples, and the torus flow.

The Lie algebra sits inside ``so(7)`` through the half-normalized generators
``E_[i,j] = (E_ij - E_ji) / 2``.  Membership is decided by the exact Leibniz
test :func:`is_derivation`; orthogonal matrices are tested against the
multiplication itself by :func:`is_automorphism`.

``g2_standard_basis`` returns a conventional list of fourteen two-term
generators in this presentation together with their audit results.  Several
entries of that list fail the exact test; they are kept verbatim and flagged,
never silently repaired.  The Cartan pair actually used to generate the flow
is exposed by :func:`cartan_generators` and passes the audit.

The maximal-torus flow ``torus_flow(t, s)`` is the closed-form rotation by
``t`` in the ``(e2, e3)`` plane, ``-s`` in ``(e4, e5)`` and ``t - s`` in
``(e6, e7)``; equivalently ``expm(2t P0 + 2s Q0)`` for the audited Cartan
pair.  The full-angle parameter convention (plane angles equal to the
parameters, not half of them) is fixed by requiring the ``(e2, e3)`` block to
rotate by ``t``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import octonion as oc

__all__ = [
    "G2Automorphism",
    "GeneratorAudit",
    "PARAMETER_CONVENTION",
    "TORUS_WEIGHTS",
    "TorusFlow",
    "automorphism_from_basic_triple",
    "block_rotation",
    "cartan_generators",
    "g2_standard_basis",
    "is_automorphism",
    "is_derivation",
    "random_automorphism",
    "random_basic_triple",
    "so7_generator",
    "torus_flow",
]

PARAMETER_CONVENTION = "FULL"

# Signed integer weights of (t, s) on the invariant planes (e2,e3), (e4,e5),
# (e6,e7), in the orientation under which the multiplication closes.  The
# closing condition is w(6,7) = w(2,3) + w(4,5), i.e. the rows sum to zero
# against (1, 1, -1).
TORUS_WEIGHTS = ((1, 0), (0, -1), (1, -1))


def so7_generator(i: int, j: int) -> np.ndarray:
    """Half-normalized rotation generator ``E_[i,j] = (E_ij - E_ji) / 2``, indices 1..7."""
    if not (1 <= i <= 7 and 1 <= j <= 7 and i != j):
        raise ValueError(f"so7_generator needs distinct indices in 1..7, got ({i}, {j})")
    m = np.zeros((7, 7))
    m[i - 1, j - 1] = 0.5
    m[j - 1, i - 1] = -0.5
    return m


def _leibniz_residual(d: np.ndarray, tensor: np.ndarray):
    """Max residual of ``D(e_i e_j) - D(e_i) e_j - e_i D(e_j)`` over imaginary pairs."""
    zero = d.dtype.type(0)
    worst = zero
    for i in range(1, 8):
        for j in range(i + 1, 8):
            lhs = np.concatenate([[zero], d @ tensor[i, j, 1:]])
            dxi = np.concatenate([[zero], d[:, i - 1]])
            dyj = np.concatenate([[zero], d[:, j - 1]])
            rhs = dxi @ tensor[:, j, :] + dyj @ tensor[i, :, :]
            worst = max(worst, np.abs(lhs - rhs).max())
    return worst


def is_derivation(matrix: np.ndarray) -> tuple[bool, float]:
    """Exact Leibniz test ``D(xy) = D(x)y + x D(y)`` over the 21 imaginary basis pairs.

    Half-integer matrices are decided in exact integer arithmetic (multiplied
    through by 2); anything else falls back to floats with a ``1e-12``
    threshold.  Returns the verdict and the maximum residual norm.
    """
    matrix = np.asarray(matrix, dtype=float)
    if matrix.shape != (7, 7):
        raise ValueError(f"expected a 7x7 matrix, got {matrix.shape}")
    doubled = 2.0 * matrix
    if np.all(doubled == np.round(doubled)):
        worst = _leibniz_residual(np.round(doubled).astype(np.int64), oc.STRUCTURE_TENSOR)
        return worst == 0, float(worst) / 2.0
    worst = float(_leibniz_residual(matrix, oc.STRUCTURE_TENSOR.astype(float)))
    return worst < 1e-12, worst


def is_automorphism(matrix: np.ndarray, tol: float = 1e-10) -> tuple[bool, float]:
    """Orthogonality plus multiplicativity ``M(e_i) M(e_j) = M(e_i e_j)`` on all 49 pairs."""
    matrix = np.asarray(matrix, dtype=float)
    if matrix.shape != (7, 7):
        raise ValueError(f"expected a 7x7 matrix, got {matrix.shape}")
    resid = float(np.abs(matrix.T @ matrix - np.eye(7)).max())
    cols = matrix.T  # cols[k] = image of e_{k+1}
    prods = oc.multiply(
        oc.embed_imaginary(cols)[:, None, :], oc.embed_imaginary(cols)[None, :, :]
    )
    tensor = oc.STRUCTURE_TENSOR.astype(float)
    expected = np.zeros((7, 7, 8))
    expected[..., 0] = tensor[1:, 1:, 0]
    expected[..., 1:] = np.einsum("ijk,lk->ijl", tensor[1:, 1:, 1:], matrix)
    resid = max(resid, float(np.abs(prods - expected).max()))
    return resid < tol, resid


@dataclass(frozen=True)
class G2Automorphism:
    """Orthogonal 7x7 matrix preserving the octonion multiplication."""

    matrix: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=float)
        if m.shape != (7, 7):
            raise ValueError(f"G2Automorphism needs a 7x7 matrix, got {m.shape}")
        m = m.copy()
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @classmethod
    def identity(cls) -> "G2Automorphism":
        return cls(np.eye(7))

    def apply(self, x: np.ndarray) -> np.ndarray:
        """Image of imaginary coordinates, broadcasting over leading axes."""
        return np.asarray(x) @ self.matrix.T

    def inverse(self) -> "G2Automorphism":
        return G2Automorphism(self.matrix.T)

    def __matmul__(self, other: "G2Automorphism") -> "G2Automorphism":
        return G2Automorphism(self.matrix @ other.matrix)

    def to_json_dict(self) -> dict:
        return {"matrix": [[float(v) for v in row] for row in self.matrix]}


@dataclass(frozen=True)
class GeneratorAudit:
    name: str
    matrix: np.ndarray
    passes: bool
    residual: float

    def to_json_dict(self) -> dict:
        return {"name": self.name, "passes": self.passes, "residual": self.residual}


_GENERATOR_RECIPES = (
    ("P0", (3, 2), (6, 7)),
    ("P1", (1, 3), (5, 7)),
    ("P2", (2, 1), (7, 4)),
    ("P3", (1, 4), (7, 2)),
    ("P4", (5, 1), (3, 7)),
    ("P5", (1, 7), (3, 5)),
    ("P6", (6, 1), (1, 3)),
    ("Q0", (4, 5), (6, 7)),
    ("Q1", (6, 4), (5, 7)),
    ("Q2", (6, 5), (7, 4)),
    ("Q3", (3, 6), (7, 2)),
    ("Q4", (2, 6), (3, 7)),
    ("Q5", (4, 2), (3, 5)),
    ("Q6", (5, 2), (1, 3)),
)


def g2_standard_basis() -> list[GeneratorAudit]:
    """The conventional fourteen two-term generators, each with its exact audit.

    Entries failing the Leibniz test are returned unmodified with
    ``passes=False``; consumers needing a working Cartan pair should use
    :func:`cartan_generators`.
    """
    out = []
    for name, (i1, j1), (i2, j2) in _GENERATOR_RECIPES:
        m = so7_generator(i1, j1) + so7_generator(i2, j2)
        ok, resid = is_derivation(m)
        out.append(GeneratorAudit(name=name, matrix=m, passes=ok, residual=resid))
    return out


def cartan_generators() -> tuple[np.ndarray, np.ndarray]:
    """Audited Cartan pair ``(P0, Q0)`` generating :func:`torus_flow`.

    ``Q0 = E_[4,5] + E_[6,7]`` is the conventional generator; ``P0`` is
    ``E_[3,2] - E_[6,7]``, the single-sign repair of the conventional
    ``E_[3,2] + E_[6,7]`` (which fails the exact derivation test).  Both
    returned matrices pass :func:`is_derivation`.
    """
    p0 = so7_generator(3, 2) - so7_generator(6, 7)
    q0 = so7_generator(4, 5) + so7_generator(6, 7)
    return p0, q0


def block_rotation(u: float, v: float, w: float) -> np.ndarray:
    """Rotation by ``u`` in ``(e2,e3)``, ``v`` in ``(e4,e5)``, ``w`` in ``(e6,e7)``.

    Positive orientation rotates the first axis of each pair toward the
    second; ``e1`` is fixed.  The result is an algebra automorphism exactly
    when ``w = u + v``.
    """
    m = np.eye(7)
    for (i, j), angle in zip(((1, 2), (3, 4), (5, 6)), (u, v, w)):
        c, s = np.cos(angle), np.sin(angle)
        m[i, i] = c
        m[j, j] = c
        m[j, i] = s
        m[i, j] = -s
    return m


@dataclass(frozen=True)
class TorusFlow:
    """Maximal-torus automorphism ``exp(2t P0 + 2s Q0)``, cached as a matrix."""

    t: float
    s: float
    matrix: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=float)
        m = m.copy()
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    def apply(self, x: np.ndarray) -> np.ndarray:
        return np.asarray(x) @ self.matrix.T

    def as_automorphism(self) -> G2Automorphism:
        return G2Automorphism(self.matrix)

    def to_json_dict(self) -> dict:
        return {
            "t": self.t,
            "s": self.s,
            "parameter_convention": PARAMETER_CONVENTION,
            "matrix": [[float(v) for v in row] for row in self.matrix],
        }


def torus_flow(t: float, s: float) -> TorusFlow:
    """Closed-form torus automorphism: rotations ``(t, -s, t - s)`` of the three planes.

    Abelian (``torus_flow(t1,s1) . torus_flow(t2,s2) = torus_flow(t1+t2, s1+s2)``),
    2-pi periodic in both parameters, fixes ``e1`` exactly, and agrees with
    numerically exponentiating ``2t P0 + 2s Q0`` for the audited Cartan pair.
    """
    return TorusFlow(t=float(t), s=float(s), matrix=block_rotation(t, -s, t - s))


def random_basic_triple(rng: np.random.Generator) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Random orthonormal ``(h1, h2, h3)`` with ``h3`` orthogonal to ``h1 h2``."""
    h1 = rng.normal(size=7)
    h1 /= np.linalg.norm(h1)
    h2 = rng.normal(size=7)
    h2 -= (h2 @ h1) * h1
    h2 /= np.linalg.norm(h2)
    h12 = oc.cross(h1, h2)
    h3 = rng.normal(size=7)
    for u in (h1, h2, h12):
        h3 -= (h3 @ u) * u
    h3 /= np.linalg.norm(h3)
    return h1, h2, h3


def automorphism_from_basic_triple(h1, h2, h3, tol: float = 1e-8) -> G2Automorphism:
    """Unique automorphism with ``e1 -> h1``, ``e2 -> h2``, ``e4 -> h3``.

    Requires a basic triple: orthonormal vectors with ``h3`` orthogonal to
    ``h1 h2``.  The remaining images are forced by multiplicativity:
    ``e3 -> h1 h2``, ``e5 -> h1 h3``, ``e6 -> h2 h3``, ``e7 -> (h1 h2) h3``.
    """
    h1 = np.asarray(h1, dtype=float)
    h2 = np.asarray(h2, dtype=float)
    h3 = np.asarray(h3, dtype=float)
    triple = np.stack([h1, h2, h3])
    gram_err = np.abs(triple @ triple.T - np.eye(3)).max()
    if gram_err > tol:
        raise ValueError(f"basic triple is not orthonormal; max Gram error {gram_err:.3e}")
    h12 = oc.cross(h1, h2)
    align = abs(float(h3 @ h12))
    if align > tol:
        raise ValueError(f"h3 must be orthogonal to h1*h2; <h3, h1 h2> = {align:.3e}")
    cols = np.zeros((7, 7))
    cols[0] = h1
    cols[1] = h2
    cols[2] = h12
    cols[3] = h3
    cols[4] = oc.cross(h1, h3)
    cols[5] = oc.cross(h2, h3)
    cols[6] = oc.cross(h12, h3)
    return G2Automorphism(cols.T)


def random_automorphism(rng: np.random.Generator) -> G2Automorphism:
    """Automorphism built from a random basic triple."""
    return automorphism_from_basic_triple(*random_basic_triple(rng))
