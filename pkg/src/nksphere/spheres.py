"""Slant analysis of 2-spheres cut out of the unit sphere by affine 3-planes.

A section is the set ``{center + radius * u : u unit in the direction plane}``;
it lies on the unit sphere exactly when ``|center|^2 + radius^2 = 1`` and the
center is orthogonal to the direction plane.  The Wirtinger (slant) angle at a
point is measured through :func:`wirtinger_cos`; a surface is *slant* when
that number is the same at every point.

Classification of the sections:

* great spheres (radius 1) are always slant with ``cos(angle) = phi(plane)``;
* small spheres over an associative plane are slant with ``cos(angle) = radius``
  for every admissible center;
* small spheres over a non-associative plane are slant exactly when the center
  is one of ``+/- sqrt(1 - r^2) [plane] / |[plane]|``, with
  ``cos(angle) = radius * phi(plane)``.

Sampling is deterministic: Fibonacci-lattice points in the plane coordinates,
tangent frames obtained by orthonormalizing coordinate directions, so a report
is a pure function of ``(inputs, n_samples)``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import octonion as oc
from .calibration import Plane3, associator_of_plane, phi_of_plane

__all__ = [
    "InconclusiveSlantError",
    "SlantReport",
    "SphereSection",
    "TangentFrame",
    "analyze_great_sphere",
    "analyze_small_sphere",
    "fibonacci_sphere",
    "slant_center",
    "wirtinger_cos",
]

SLANT_SPREAD_TOL = 1e-9
NOT_SLANT_SPREAD_TOL = 1e-4
_ANGLE_CLASS_TOL = 1e-8
# arccos resolves angles near 0 only to sqrt(machine eps); classify the
# almost-complex case on the cosine side as well.
_COS_CLASS_TOL = 1e-12
_FRAME_TOL = 1e-10
_ASSOCIATIVE_TOL = 1e-8
_SECTION_TOL = 1e-12


class InconclusiveSlantError(RuntimeError):
    """Measured spread fell between the slant and non-slant thresholds."""


@dataclass(frozen=True)
class TangentFrame:
    """Point ``p`` on the unit sphere with an orthonormal tangent pair ``(X, Y)``."""

    p: np.ndarray
    x: np.ndarray
    y: np.ndarray

    def __post_init__(self):
        mat = np.stack([np.asarray(v, dtype=float) for v in (self.p, self.x, self.y)])
        if mat.shape != (3, 7):
            raise ValueError("TangentFrame needs three 7-vectors")
        err = np.abs(mat @ mat.T - np.eye(3)).max()
        if err > _FRAME_TOL:
            raise ValueError(f"TangentFrame is not orthonormal; max Gram error {err:.3e}")
        for name, row in zip(("p", "x", "y"), mat):
            row.setflags(write=False)
            object.__setattr__(self, name, row)


def wirtinger_cos(frame: TangentFrame) -> float:
    """``|<X, p x Y>|``: cosine of the angle between ``J(span)`` and ``span``.

    Independent of which orthonormal basis of the tangent plane is supplied.
    """
    return abs(float(oc.inner(frame.x, oc.cross(frame.p, frame.y))))


@dataclass(frozen=True)
class SlantReport:
    is_slant: bool
    classification: str  # almost_complex | proper_slant | totally_real | not_slant
    angle_rad: float | None
    cos_angle: float | None
    spread: float
    n_samples: int

    def to_json_dict(self) -> dict:
        return {
            "is_slant": self.is_slant,
            "classification": self.classification,
            "angle_rad": self.angle_rad,
            "cos_angle": self.cos_angle,
            "spread": self.spread,
            "n_samples": self.n_samples,
        }


@dataclass(frozen=True)
class SphereSection:
    """Affine section: direction plane, radius in (0, 1], center orthogonal to the plane."""

    plane: Plane3
    radius: float
    center: np.ndarray

    def __post_init__(self):
        center = np.asarray(self.center, dtype=float)
        if center.shape != (7,):
            raise ValueError("center must be a 7-vector")
        if not 0.0 < self.radius <= 1.0:
            raise ValueError(f"radius must lie in (0, 1], got {self.radius}")
        on_sphere = abs(center @ center + self.radius**2 - 1.0)
        if on_sphere > _SECTION_TOL:
            raise ValueError(
                f"section misses the unit sphere: |center|^2 + r^2 - 1 = {on_sphere:.3e}"
            )
        in_plane = np.abs(self.plane.frame @ center).max()
        if in_plane > 1e-10:
            raise ValueError(f"center must be orthogonal to the plane; overlap {in_plane:.3e}")
        center.setflags(write=False)
        object.__setattr__(self, "center", center)


def fibonacci_sphere(n: int) -> np.ndarray:
    """Deterministic, roughly uniform points on the 2-sphere, shape (n, 3)."""
    if n < 1:
        raise ValueError("need at least one sample")
    k = np.arange(n, dtype=float)
    z = 1.0 - (2.0 * k + 1.0) / n
    r = np.sqrt(np.maximum(0.0, 1.0 - z * z))
    golden = np.pi * (3.0 - np.sqrt(5.0))
    theta = golden * k
    return np.stack([r * np.cos(theta), r * np.sin(theta), z], axis=1)


def _sample_frames(plane: Plane3, radius: float, center: np.ndarray, n_samples: int):
    """Sample points and tangent frames; returns (points, X, Y) as (n, 7) arrays.

    Tangent vectors live in the direction plane, orthogonal to the in-plane
    radius direction.
    """
    units3 = fibonacci_sphere(n_samples)  # coordinates in the plane frame
    units = units3 @ plane.frame  # (n, 7) unit vectors in the plane
    points = center[None, :] + radius * units
    # Orthonormal tangent pair inside the plane, orthogonal to the unit vector:
    # Gram-Schmidt the coordinate axis least aligned with each unit direction,
    # complete with the 3-dimensional cross product.
    least = np.argmin(np.abs(units3), axis=1)
    seeds = np.eye(3)[least]
    a3 = seeds - np.einsum("ni,ni->n", seeds, units3)[:, None] * units3
    a3 /= np.linalg.norm(a3, axis=1, keepdims=True)
    b3 = np.cross(units3, a3)
    return points, a3 @ plane.frame, b3 @ plane.frame


def _classify(cos_values: np.ndarray, n_samples: int, slant_tol: float, not_slant_tol: float) -> SlantReport:
    spread = float(cos_values.max() - cos_values.min())
    if spread < slant_tol:
        cos_angle = float(np.clip(cos_values.mean(), 0.0, 1.0))
        angle = float(np.arccos(cos_angle))
        if angle < _ANGLE_CLASS_TOL or 1.0 - cos_angle < _COS_CLASS_TOL:
            kind = "almost_complex"
        elif abs(angle - np.pi / 2.0) < _ANGLE_CLASS_TOL:
            kind = "totally_real"
        else:
            kind = "proper_slant"
        return SlantReport(True, kind, angle, cos_angle, spread, n_samples)
    if spread > not_slant_tol:
        return SlantReport(False, "not_slant", None, None, spread, n_samples)
    raise InconclusiveSlantError(
        f"spread {spread:.3e} falls between the slant ({slant_tol:g}) and "
        f"non-slant ({not_slant_tol:g}) thresholds"
    )


def analyze_great_sphere(
    plane: Plane3,
    n_samples: int = 32,
    slant_tol: float = SLANT_SPREAD_TOL,
    not_slant_tol: float = NOT_SLANT_SPREAD_TOL,
) -> SlantReport:
    """Slant report for the unit-sphere section of a linear 3-plane.

    Every great sphere is slant; the angle is ``arccos(phi(plane))``.
    """
    if n_samples < 8:
        raise ValueError("need at least 8 samples")
    points, xs, ys = _sample_frames(plane, 1.0, np.zeros(7), n_samples)
    cos_values = np.abs(oc.inner(xs, oc.cross(points, ys)))
    return _classify(cos_values, n_samples, slant_tol, not_slant_tol)


def slant_center(plane: Plane3, radius: float) -> tuple[np.ndarray, np.ndarray]:
    """The two centers for which a small sphere over a non-associative plane is slant.

    ``+/- sqrt(1 - r^2) [plane] / |[plane]|``; associative planes are rejected
    (there the center is unconstrained).
    """
    if not 0.0 < radius < 1.0:
        raise ValueError(f"radius must lie in (0, 1), got {radius}")
    if phi_of_plane(plane) >= 1.0 - _ASSOCIATIVE_TOL:
        raise ValueError("slant_center requires a non-associative plane")
    assoc = associator_of_plane(plane)
    direction = assoc / np.linalg.norm(assoc)
    c = np.sqrt(1.0 - radius * radius) * direction
    return c, -c


def analyze_small_sphere(
    section: SphereSection,
    n_samples: int = 32,
    slant_tol: float = SLANT_SPREAD_TOL,
    not_slant_tol: float = NOT_SLANT_SPREAD_TOL,
) -> SlantReport:
    """Slant report for an affine sphere section, sampled deterministically.

    Radius-1 sections delegate to :func:`analyze_great_sphere`.
    """
    if n_samples < 8:
        raise ValueError("need at least 8 samples")
    if section.radius == 1.0:
        return analyze_great_sphere(section.plane, n_samples, slant_tol, not_slant_tol)
    points, xs, ys = _sample_frames(section.plane, section.radius, section.center, n_samples)
    cos_values = np.abs(oc.inner(xs, oc.cross(points, ys)))
    return _classify(cos_values, n_samples, slant_tol, not_slant_tol)
