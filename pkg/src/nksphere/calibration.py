"""Geometry of 3-planes in the imaginary octonions.

A plane is stored as an ordered orthonormal frame ``(f1, f2, f3)``.  The two
scalar invariants attached to it are the associative-form value
``phi(plane) = |phi(f1, f2, f3)|`` and the plane associator
``[f1, f2, f3]``, tied together by ``phi^2 + ||assoc||^2 / 4 = 1``.

The frame ``(F1 .. F7)`` produced by :func:`cayley_dickson_frame` multiplies
exactly like ``e1 .. e7``, which is what makes the constructive reduction of
any plane to the canonical one-parameter family possible.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import octonion as oc
from .g2 import G2Automorphism, automorphism_from_basic_triple

__all__ = [
    "CanonicalReduction",
    "Plane3",
    "associator_of_plane",
    "canonical_plane",
    "cayley_dickson_frame",
    "g2_equivalent",
    "gram_frame",
    "phi_of_plane",
    "plane_from_spanning",
    "random_plane",
    "signed_phi",
    "subspace_distance",
]

_ORTHONORMAL_TOL = 1e-12
_RANK_TOL = 1e-8
_ASSOCIATIVE_TOL = 1e-8
_SUBSPACE_TOL = 1e-8
_PHI_MATCH_TOL = 1e-9


@dataclass(frozen=True)
class Plane3:
    """Ordered orthonormal 3-frame spanning a subspace of the imaginary octonions."""

    frame: np.ndarray  # shape (3, 7), rows f1, f2, f3

    def __post_init__(self):
        frame = np.asarray(self.frame, dtype=float)
        if frame.shape != (3, 7):
            raise ValueError(f"Plane3 frame must have shape (3, 7), got {frame.shape}")
        gram = frame @ frame.T
        err = np.abs(gram - np.eye(3)).max()
        if err > _ORTHONORMAL_TOL:
            raise ValueError(f"Plane3 frame is not orthonormal; max Gram error {err:.3e}")
        frame.setflags(write=False)
        object.__setattr__(self, "frame", frame)

    @property
    def f1(self) -> np.ndarray:
        return self.frame[0]

    @property
    def f2(self) -> np.ndarray:
        return self.frame[1]

    @property
    def f3(self) -> np.ndarray:
        return self.frame[2]

    def to_json_dict(self) -> dict:
        return {"frame": [[float(v) for v in row] for row in self.frame]}


def plane_from_spanning(v1, v2, v3) -> Plane3:
    """Orthonormalize three spanning vectors into a :class:`Plane3`.

    The frame follows the input order (Gram-Schmidt orientation).  Inputs
    whose smallest singular value is below ``1e-8`` are rejected.
    """
    vs = np.asarray([v1, v2, v3], dtype=float)
    if vs.shape != (3, 7):
        raise ValueError(f"expected three 7-vectors, got shape {vs.shape}")
    smin = np.linalg.svd(vs, compute_uv=False)[-1]
    if smin <= _RANK_TOL:
        raise ValueError(f"spanning vectors are rank deficient; smallest singular value {smin:.3e}")
    q, r = np.linalg.qr(vs.T)
    # QR leaves the sign of each column free; pin it to the input orientation.
    signs = np.sign(np.diag(r))
    return Plane3(frame=(q * signs).T)


def random_plane(rng: np.random.Generator) -> Plane3:
    """Rotation-invariant random plane: orthonormalized standard-normal triple."""
    while True:
        vs = rng.normal(size=(3, 7))
        if np.linalg.svd(vs, compute_uv=False)[-1] > 1e-6:
            return plane_from_spanning(*vs)


def signed_phi(plane: Plane3) -> float:
    """Associative-form value of the ordered frame (sign depends on orientation)."""
    return float(oc.assoc_form(plane.f1, plane.f2, plane.f3))


def phi_of_plane(plane: Plane3) -> float:
    """Frame-independent invariant ``phi(plane) in [0, 1]``; 1 exactly on associative planes."""
    return abs(signed_phi(plane))


def associator_of_plane(plane: Plane3) -> np.ndarray:
    """Plane associator ``[f1, f2, f3]``; frame-independent up to sign.

    Its squared norm is ``4 (1 - phi^2)``.
    """
    full = oc.associator(
        oc.embed_imaginary(plane.f1),
        oc.embed_imaginary(plane.f2),
        oc.embed_imaginary(plane.f3),
    )
    return oc.imaginary_part(full)


def gram_frame(plane: Plane3) -> np.ndarray:
    """Gram matrix of ``(f1, f2, f3, f2 f3, f3 f1, f1 f2, [f1, f2, f3])``.

    Pattern: identity on the first six diagonal entries, the signed form value
    at ``(1,4), (2,5), (3,6)`` and symmetric places, ``4 (1 - phi^2)`` at
    ``(7,7)``, zero elsewhere.
    """
    f1, f2, f3 = plane.frame
    vecs = np.stack(
        [
            f1,
            f2,
            f3,
            oc.cross(f2, f3),
            oc.cross(f3, f1),
            oc.cross(f1, f2),
            associator_of_plane(plane),
        ]
    )
    return vecs @ vecs.T


def cayley_dickson_frame(plane: Plane3) -> np.ndarray:
    """Doubling frame ``F1 .. F7`` adapted to a non-associative plane, shape (7, 7).

    ``F1 = f1``, ``F2 = f2``, ``F3 = f1 f2``, ``F4 = [f1,f2,f3] / (2 sqrt(1-phi^2))``
    with the signed form value ``phi``, and ``F5 = F1 F4``, ``F6 = F2 F4``,
    ``F7 = F3 F4``.  The rows are orthonormal and satisfy the same
    multiplication table as ``e1 .. e7``.  Closed forms::

        F5 = (-phi f1 + f2 f3) / sqrt(1 - phi^2)
        F6 = (-phi f2 + f3 f1) / sqrt(1 - phi^2)
        F7 = (-f3 + phi f1 f2) / sqrt(1 - phi^2)

    Associative planes (``phi > 1 - 1e-8``) are rejected: the construction is
    genuinely singular there.
    """
    phi = signed_phi(plane)
    if abs(phi) >= 1.0 - _ASSOCIATIVE_TOL:
        raise ValueError(
            f"cayley_dickson_frame requires a non-associative plane; phi = {abs(phi):.12f}"
        )
    scale = np.sqrt(1.0 - phi * phi)
    f1, f2, f3 = plane.frame
    frame = np.zeros((7, 7))
    frame[0] = f1
    frame[1] = f2
    frame[2] = oc.cross(f1, f2)
    frame[3] = associator_of_plane(plane) / (2.0 * scale)
    frame[4] = oc.cross(frame[0], frame[3])
    frame[5] = oc.cross(frame[1], frame[3])
    frame[6] = oc.cross(frame[2], frame[3])
    return frame


def canonical_plane(phi: float) -> Plane3:
    """Canonical representative ``span(e1, e2, phi e3 - sqrt(1-phi^2) e7)``."""
    if not 0.0 <= phi <= 1.0:
        raise ValueError(f"phi must lie in [0, 1], got {phi}")
    third = phi * oc.imaginary_basis(3) - np.sqrt(1.0 - phi * phi) * oc.imaginary_basis(7)
    return Plane3(frame=np.stack([oc.imaginary_basis(1), oc.imaginary_basis(2), third]))


def subspace_distance(p1: Plane3, p2: Plane3) -> float:
    """Sine of the largest principal angle between the two subspaces."""
    proj1 = p1.frame.T @ p1.frame
    proj2 = p2.frame.T @ p2.frame
    return float(np.linalg.norm(proj1 - proj2, 2))


@dataclass(frozen=True)
class CanonicalReduction:
    """Automorphism carrying a plane onto its canonical representative.

    ``f3_image_sign`` records whether the third frame vector lands on
    ``phi e3 - sqrt(1-phi^2) e7`` (``-1``) or on ``phi e3 + sqrt(1-phi^2) e7``
    (``+1``); the construction below always yields ``-1`` because ``F4`` is
    taken along ``+[f1, f2, f3]``.
    """

    phi_value: float
    automorphism: G2Automorphism
    target: Plane3
    f3_image_sign: int

    def to_json_dict(self) -> dict:
        d = self.target.to_json_dict()
        d["phi"] = self.phi_value
        d["matrix"] = [[float(v) for v in row] for row in self.automorphism.matrix]
        d["f3_image_sign"] = self.f3_image_sign
        return d


def _orthogonal_completion(vectors: np.ndarray) -> np.ndarray:
    """First coordinate direction with a significant component off ``span(vectors)``."""
    for k in range(7):
        cand = oc.imaginary_basis(k + 1)
        resid = cand - vectors.T @ (vectors @ cand)
        n = np.linalg.norm(resid)
        if n > 0.3:
            return resid / n
    raise RuntimeError("no orthogonal completion found")  # unreachable for rank <= 3


def reduce_to_canonical(plane: Plane3) -> CanonicalReduction:
    """Constructive reduction of a plane onto its canonical representative.

    Non-associative planes map onto ``canonical_plane(phi)`` through the
    automorphism sending ``(F1, F2, F4)`` to ``(e1, e2, e4)``; associative
    planes map onto ``span(e1, e2, e3)`` through any basic-triple completion
    of ``(f1, f2)``.
    """
    phi_signed = signed_phi(plane)
    phi = abs(phi_signed)
    if phi >= 1.0 - _ASSOCIATIVE_TOL:
        f1, f2, _ = plane.frame
        h3 = _orthogonal_completion(np.stack([f1, f2, oc.cross(f1, f2)]))
        g = automorphism_from_basic_triple(f1, f2, h3)
        return CanonicalReduction(
            phi_value=1.0,
            automorphism=g.inverse(),
            target=canonical_plane(1.0),
            f3_image_sign=-1,
        )
    # Orientation-normalize so the form value of the working frame is >= 0;
    # otherwise the third vector would land on -(phi e3 + sqrt(1-phi^2) e7),
    # which spans a different line than the canonical target.
    working = plane if phi_signed >= 0.0 else Plane3(
        frame=np.stack([plane.f1, plane.f2, -plane.f3])
    )
    frame = cayley_dickson_frame(working)
    g = automorphism_from_basic_triple(frame[0], frame[1], frame[3])
    # g maps (e1, e2, e4) onto (F1, F2, F4); the inverse is the reduction.
    return CanonicalReduction(
        phi_value=phi,
        automorphism=g.inverse(),
        target=canonical_plane(phi),
        f3_image_sign=-1,
    )


def g2_equivalent(p1: Plane3, p2: Plane3) -> tuple[bool, G2Automorphism | None]:
    """Decide equivalence under the automorphism group, with a witness.

    Two planes are equivalent exactly when their form values agree (within
    ``1e-9``); the witness carries ``p1`` onto ``p2`` (subspace distance below
    ``1e-8`` for exactly matching form values).
    """
    if abs(phi_of_plane(p1) - phi_of_plane(p2)) >= _PHI_MATCH_TOL:
        return False, None
    r1 = reduce_to_canonical(p1)
    r2 = reduce_to_canonical(p2)
    witness = r2.automorphism.inverse() @ r1.automorphism
    return True, witness
