"""Two-dimensional coordinate-torus orbits on the unit sphere.

The surfaces studied here are orbits of the two-parameter group of block
rotations ``orbit_action(t, s)``: rotation by ``t`` in the ``(e2, e3)``
coordinate plane, by ``s`` in ``(e4, e5)`` and by ``s - t`` in ``(e6, e7)``.
Writing a point as ``p = (x1, x2, x3, y0, y1, y2, y3)``, the derivative fields
of the action are::

    Xbar = (0, -x3, x2, 0,  0,  y3, -y2)      (t-direction)
    Ybar = (0,  0,  0, -y1, y0, -y3,  y2)     (s-direction)

The action preserves the round metric (it sits in SO(7)), so each regular
orbit is a flat torus with a well-defined second fundamental form, mean
curvature and affine span; it fixes the ``x1`` coordinate, so every orbit
lies in a hyperplane slice of the sphere.

The slant cosine :func:`orbit_slant_cos` is the Wirtinger cosine of the frame
plane ``span(Xbar, Ybar)``.  It is invariant under the *automorphism* torus
:func:`nksphere.g2.torus_flow` (whose s-circle the action shares), which is
what makes it a single number attached to the whole family.  Note the two
tori differ: the ``t``-circle of the generating action is a rigid rotation
that does not preserve the almost complex structure, and the Wirtinger
cosine of a single orbit is constant along its ``s``-circle but in general
not along its ``t``-circle.  The landmark values are
``orbit_slant_cos = 1/3`` at ``(1/sqrt3)(0,0,1,0,1,1,0)`` (the global
maximum) and the one-parameter family :func:`minimal_family_point` of
minimal orbits.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import octonion as oc
from .g2 import block_rotation, so7_generator

__all__ = [
    "CONVENTION",
    "OrbitGeometry",
    "REGULARITY_TOL",
    "ScanResult",
    "linear_fullness",
    "mean_curvature_closed_form",
    "minimal_family_point",
    "orbit_action",
    "orbit_geometry",
    "orbit_slant_cos",
    "param_to_point",
    "random_regular_points",
    "regularity",
    "slant_cos_closed_form",
    "slant_cos_param",
    "slant_scan",
    "tangent_frame",
]

REGULARITY_TOL = 1e-10

CONVENTION = (
    "full-angle; blocks (e2,e3):+t (e4,e5):+s (e6,e7):s-t; "
    "frames d/dt=(0,-x3,x2,0,0,y3,-y2) d/ds=(0,0,0,-y1,y0,-y3,y2)"
)

# Generators of the action in the full-angle convention.  GEN_T equals twice
# the conventional two-term generator E_[3,2] + E_[6,7] (which is *not* a
# derivation -- see nksphere.g2), GEN_S equals minus twice the audited Q0.
GEN_T = 2.0 * (so7_generator(3, 2) + so7_generator(6, 7))
GEN_S = -2.0 * (so7_generator(4, 5) + so7_generator(6, 7))
_GEN_TT = GEN_T @ GEN_T
_GEN_TS = GEN_T @ GEN_S
_GEN_SS = GEN_S @ GEN_S

_CROSS_TENSOR = oc.STRUCTURE_TENSOR[1:, 1:, 1:].astype(float)


def orbit_action(t: float, s: float) -> np.ndarray:
    """Matrix of the generating action: rotations ``(t, s, s - t)`` of the three planes."""
    return block_rotation(t, s, s - t)


def _as_points(p) -> tuple[np.ndarray, bool]:
    arr = np.asarray(p, dtype=float)
    single = arr.ndim == 1
    arr = np.atleast_2d(arr)
    if arr.shape[-1] != 7:
        raise ValueError(f"expected points with 7 coordinates, got shape {arr.shape}")
    return arr, single


def _abc(points: np.ndarray):
    sq = points * points
    a = sq[..., 1] + sq[..., 2]
    b = sq[..., 3] + sq[..., 4]
    c = sq[..., 5] + sq[..., 6]
    return a, b, c


def regularity(p):
    """Regularity scalars ``(alpha, beta, gamma, is_regular)`` of a point.

    ``alpha = x2^2+x3^2+y0^2+y1^2``, ``beta = x2^2+x3^2+y2^2+y3^2``,
    ``gamma = y0^2+y1^2+y2^2+y3^2``; the orbit is two-dimensional exactly when
    all three are positive (threshold ``1e-10``).
    """
    points, single = _as_points(p)
    a, b, c = _abc(points)
    alpha, beta, gamma = a + b, a + c, b + c
    regular = np.minimum(np.minimum(alpha, beta), gamma) > REGULARITY_TOL
    if single:
        return float(alpha[0]), float(beta[0]), float(gamma[0]), bool(regular[0])
    return alpha, beta, gamma, regular


def _require_regular(points: np.ndarray, caller: str):
    alpha, beta, gamma = (np.atleast_1d(v) for v in _abc(points))
    al, be, ga = alpha + beta, alpha + gamma, beta + gamma
    bad = np.minimum(np.minimum(al, be), ga) <= REGULARITY_TOL
    if np.any(bad):
        i = int(np.argmax(bad))
        raise ValueError(
            f"{caller} requires a regular point; got (alpha, beta, gamma) = "
            f"({al[i]:.3e}, {be[i]:.3e}, {ga[i]:.3e})"
        )


def tangent_frame(p):
    """Frame ``(Xbar, Ybar, X, Y)`` of the orbit through a regular point.

    ``Xbar``/``Ybar`` are the action derivatives (``|Xbar|^2 = beta``,
    ``|Ybar|^2 = gamma``); ``(X, Y)`` is their Gram-Schmidt orthonormalization
    in that order.
    """
    points, single = _as_points(p)
    _require_regular(points, "tangent_frame")
    xbar = points @ GEN_T.T
    ybar = points @ GEN_S.T
    xn, yn = _orthonormalize(xbar, ybar)
    if single:
        return xbar[0], ybar[0], xn[0], yn[0]
    return xbar, ybar, xn, yn


def _orthonormalize(xbar: np.ndarray, ybar: np.ndarray):
    xn = xbar / np.linalg.norm(xbar, axis=-1, keepdims=True)
    yp = ybar - np.einsum("...i,...i->...", ybar, xn)[..., None] * xn
    yn = yp / np.linalg.norm(yp, axis=-1, keepdims=True)
    return xn, yn


def _cross_batch(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    return np.einsum("...i,...j,ijk->...k", x, y, _CROSS_TENSOR)


def _slant_cos_batch(points: np.ndarray) -> np.ndarray:
    xbar = points @ GEN_T.T
    ybar = points @ GEN_S.T
    xn, yn = _orthonormalize(xbar, ybar)
    return np.abs(np.einsum("...i,...i->...", xn, _cross_batch(points, yn)))


def orbit_slant_cos(p):
    """Wirtinger cosine of the orbit frame plane, from first principles.

    Equals :func:`slant_cos_closed_form`; invariant under the automorphism
    torus flow; lies in ``[0, 1/3]`` with the maximum attained at
    ``+/- (1/sqrt3)(0,0,1,0,1,1,0)``.
    """
    points, single = _as_points(p)
    _require_regular(points, "orbit_slant_cos")
    out = _slant_cos_batch(points)
    return float(out[0]) if single else out


def slant_cos_closed_form(p):
    """Coordinate formula for the slant cosine.

    ``|x3 y1 y2 - x2 y0 y2 - x2 y1 y3 - x3 y0 y3| / sqrt(alpha beta - (x2^2+x3^2)^2)``.
    """
    points, single = _as_points(p)
    _require_regular(points, "slant_cos_closed_form")
    x2, x3, y0, y1, y2, y3 = (points[..., k] for k in range(1, 7))
    num = np.abs(x3 * y1 * y2 - x2 * y0 * y2 - x2 * y1 * y3 - x3 * y0 * y3)
    a, b, c = _abc(points)
    den = np.sqrt((a + b) * (a + c) - a * a)
    out = num / den
    return float(out[0]) if single else out


def param_to_point(x1, a, b, c):
    """Slice parameterization ``(x1, a, b, c) -> point`` with ``x2 = y0 = 0``.

    ``x3 = sqrt(1-x1^2) sin a cos b``, ``y1 = sqrt(1-x1^2) sin b``,
    ``y2 = sqrt(1-x1^2) cos a sin c cos b``, ``y3 = sqrt(1-x1^2) cos a cos c cos b``.
    The result is a unit vector for any parameters.
    """
    x1, a, b, c = np.broadcast_arrays(
        *(np.asarray(v, dtype=float) for v in (x1, a, b, c))
    )
    scale = np.sqrt(np.maximum(0.0, 1.0 - x1 * x1))
    out = np.zeros(x1.shape + (7,))
    out[..., 0] = x1
    out[..., 2] = scale * np.sin(a) * np.cos(b)
    out[..., 4] = scale * np.sin(b)
    out[..., 5] = scale * np.cos(a) * np.sin(c) * np.cos(b)
    out[..., 6] = scale * np.cos(a) * np.cos(c) * np.cos(b)
    return out


def slant_cos_param(x1, a, b, c):
    """Slant cosine in slice parameters.

    ``|sin 2b sin 2a| / (2 sqrt(4 sin^2 b + cos^2 b sin^2 2a)) * sqrt(1-x1^2) * |sin c|``.
    Parameter combinations with ``sin b = sin 2a = 0`` make the expression
    ``0/0`` (the image point is non-regular); they evaluate to ``0.0`` by
    convention.
    """
    x1, a, b, c = np.broadcast_arrays(
        *(np.asarray(v, dtype=float) for v in (x1, a, b, c))
    )
    num = np.abs(np.sin(2 * b) * np.sin(2 * a))
    den = 2.0 * np.sqrt(4.0 * np.sin(b) ** 2 + np.cos(b) ** 2 * np.sin(2 * a) ** 2)
    with np.errstate(invalid="ignore"):
        ratio = np.where(den > 0.0, num / np.where(den > 0.0, den, 1.0), 0.0)
    out = ratio * np.sqrt(np.maximum(0.0, 1.0 - x1 * x1)) * np.abs(np.sin(c))
    return float(out) if out.ndim == 0 else out


def minimal_family_point(c: float) -> np.ndarray:
    """Minimal-orbit family ``(1/sqrt3)(0, 0, 1, 0, 1, cos c, sin c)``.

    Always regular; its slant cosine is ``|cos c| / 3`` and its orbit has
    vanishing mean curvature for every ``c``.
    """
    root3 = np.sqrt(3.0)
    return np.array([0.0, 0.0, 1.0, 0.0, 1.0, np.cos(c), np.sin(c)]) / root3


def mean_curvature_closed_form(p):
    """Closed-form mean curvature vector at a slice point ``(x1, 0, x3, 0, y1, y2, y3)``.

    With ``D = (y1^2+y2^2+y3^2) x3^2 + y1^2 (y2^2+y3^2)`` and
    ``N(u, v) = u ((2u^2 + 2y2^2 + 2y3^2 - 1) v^2 + (2u^2 - 1)(y2^2 + y3^2))``
    the components are ``(2 x1, 0, N(x3,y1)/D, 0, N(y1,x3)/D,
    y2 (2 - (x3^2+y1^2)/D), y3 (2 - (x3^2+y1^2)/D))``.  Note the first two
    arguments of ``N`` swap while ``y2, y3`` stay fixed.  Points with
    ``D <= 1e-12`` are rejected.
    """
    points, single = _as_points(p)
    off_slice = np.abs(points[..., [1, 3]]).max()
    if off_slice > 1e-10:
        raise ValueError(
            f"mean_curvature_closed_form needs slice points (x2 = y0 = 0); got {off_slice:.3e}"
        )
    x1, x3, y1, y2, y3 = (points[..., k] for k in (0, 2, 4, 5, 6))
    yy = y2 * y2 + y3 * y3
    d = (y1 * y1 + yy) * x3 * x3 + y1 * y1 * yy
    if np.any(d <= 1e-12):
        raise ValueError("mean_curvature_closed_form is singular: D <= 1e-12")

    def n_of(u, v):
        return u * ((2 * u * u + 2 * yy - 1) * v * v + (2 * u * u - 1) * yy)

    out = np.zeros_like(points)
    out[..., 0] = 2 * x1
    out[..., 2] = n_of(x3, y1) / d
    out[..., 4] = n_of(y1, x3) / d
    out[..., 5] = y2 * (2 - (x3 * x3 + y1 * y1) / d)
    out[..., 6] = y3 * (2 - (x3 * x3 + y1 * y1) / d)
    return out[0] if single else out


def _geometry_batch(points: np.ndarray, gen_t: np.ndarray = GEN_T, gen_s: np.ndarray = GEN_S):
    """Metric, second fundamental form, Gauss curvature and mean curvature.

    Second derivatives of the orbit map are projected onto the complement of
    ``span(p, Xbar, Ybar)``; subtracting the ``p``-component accounts for the
    sphere connection.  Custom commuting generators may be supplied.
    """
    default = gen_t is GEN_T and gen_s is GEN_S
    xbar = points @ gen_t.T
    ybar = points @ gen_s.T
    g11 = np.einsum("...i,...i->...", xbar, xbar)
    g12 = np.einsum("...i,...i->...", xbar, ybar)
    g22 = np.einsum("...i,...i->...", ybar, ybar)
    det = g11 * g22 - g12 * g12

    xn, yn = _orthonormalize(xbar, ybar)

    def perp(v):
        for u in (points, xn, yn):
            v = v - np.einsum("...i,...i->...", v, u)[..., None] * u
        return v

    h11 = perp(points @ (_GEN_TT if default else gen_t @ gen_t).T)
    h12 = perp(points @ (_GEN_TS if default else gen_t @ gen_s).T)
    h22 = perp(points @ (_GEN_SS if default else gen_s @ gen_s).T)
    inv = 1.0 / det
    mean_h = (
        g22[..., None] * h11 - 2.0 * g12[..., None] * h12 + g11[..., None] * h22
    ) * inv[..., None]
    gauss_k = 1.0 + (
        np.einsum("...i,...i->...", h11, h22) - np.einsum("...i,...i->...", h12, h12)
    ) * inv
    return {
        "g11": g11,
        "g12": g12,
        "g22": g22,
        "h11": h11,
        "h12": h12,
        "h22": h22,
        "gauss_k": gauss_k,
        "mean_h": mean_h,
    }


@dataclass(frozen=True)
class OrbitGeometry:
    """Intrinsic and extrinsic data of one orbit at its base point."""

    metric: np.ndarray  # (2, 2) first fundamental form in (t, s)
    h11: np.ndarray
    h12: np.ndarray
    h22: np.ndarray
    gauss_k: float
    mean_h: np.ndarray
    mean_h_norm: float
    slant_cos: float
    convention: str = CONVENTION

    def to_json_dict(self) -> dict:
        return {
            "metric": [[float(v) for v in row] for row in self.metric],
            "K": self.gauss_k,
            "H": [float(v) for v in self.mean_h],
            "H_norm": self.mean_h_norm,
            "slant_cos": self.slant_cos,
            "convention": self.convention,
        }


def orbit_geometry(p) -> OrbitGeometry:
    """Full geometric report for the orbit of a regular point."""
    points, _ = _as_points(p)
    _require_regular(points, "orbit_geometry")
    geo = _geometry_batch(points)
    metric = np.array(
        [
            [geo["g11"][0], geo["g12"][0]],
            [geo["g12"][0], geo["g22"][0]],
        ]
    )
    mean_h = geo["mean_h"][0]
    return OrbitGeometry(
        metric=metric,
        h11=geo["h11"][0],
        h12=geo["h12"][0],
        h22=geo["h22"][0],
        gauss_k=float(geo["gauss_k"][0]),
        mean_h=mean_h,
        mean_h_norm=float(np.linalg.norm(mean_h)),
        slant_cos=float(_slant_cos_batch(points)[0]),
    )


def linear_fullness(p, n_samples: int = 64) -> tuple[int, float]:
    """Affine dimension of a sampled orbit and its fixed first coordinate.

    Samples a uniform ``(t, s)`` grid of at least ``n_samples`` points and
    returns the rank of the centered cloud (relative singular-value threshold
    ``1e-8``) together with the common ``x1`` value.  Regular generic orbits
    fill 6 affine dimensions inside the hyperplane ``x1 = const``.
    """
    if n_samples < 50:
        raise ValueError("need at least 50 samples")
    point = np.asarray(p, dtype=float)
    if point.shape != (7,):
        raise ValueError("expected a single 7-vector")
    n = int(np.ceil(np.sqrt(n_samples)))
    grid = np.linspace(0.0, 2.0 * np.pi, n, endpoint=False)
    cloud = np.array([orbit_action(t, s) @ point for t in grid for s in grid])
    centered = cloud - cloud.mean(axis=0)
    sv = np.linalg.svd(centered, compute_uv=False)
    rank = int(np.sum(sv > 1e-8 * max(sv[0], 1e-300)))
    return rank, float(point[0])


def random_regular_points(rng: np.random.Generator, n: int) -> np.ndarray:
    """Uniform random points on the unit sphere, resampled until regular."""
    out = np.empty((n, 7))
    filled = 0
    while filled < n:
        batch = rng.normal(size=(n - filled, 7))
        batch /= np.linalg.norm(batch, axis=1, keepdims=True)
        a, b, c = _abc(batch)
        keep = np.minimum(np.minimum(a + b, a + c), b + c) > 1e-6
        kept = batch[keep]
        out[filled : filled + len(kept)] = kept
        filled += len(kept)
    return out


_DEFAULT_RANGES = (
    (-1.0, 1.0),
    (-np.pi / 2.0, np.pi / 2.0),
    (-np.pi / 2.0, np.pi / 2.0),
    (0.0, 2.0 * np.pi),
)

_AXIS_NAMES = ("x1", "a", "b", "c")


@dataclass(frozen=True)
class ScanResult:
    """Row-major scan over the slice parameter lattice."""

    params: np.ndarray  # (n, 4) lattice nodes (x1, a, b, c)
    slant_cos: np.ndarray
    mean_h_norm: np.ndarray  # NaN on non-regular rows
    gauss_k: np.ndarray  # NaN on non-regular rows
    regular: np.ndarray  # bool
    resolution: tuple[int, int, int, int]
    ranges: tuple[tuple[float, float], ...]

    def summary(self) -> dict:
        reg = self.regular
        vals = self.slant_cos[reg]
        idx = int(np.argmax(np.where(reg, self.slant_cos, -1.0)))
        refined_params, refined_val = _refine_max(self.params[idx], self.ranges)
        bins_total = int(np.ceil((1.0 / 3.0) / 0.01))
        filled = np.unique(np.minimum((vals / 0.01).astype(int), bins_total - 1))
        covered = int(len(filled))
        return {
            "n_rows": int(len(self.params)),
            "n_regular": int(reg.sum()),
            "max_slant_cos": float(vals.max()) if len(vals) else 0.0,
            "argmax": {k: float(v) for k, v in zip(_AXIS_NAMES, self.params[idx])},
            "max_slant_cos_refined": float(refined_val),
            "argmax_refined": {k: float(v) for k, v in zip(_AXIS_NAMES, refined_params)},
            "bins_total": bins_total,
            "bins_covered": covered,
            "bin_width": 0.01,
        }


def _refine_max(start: np.ndarray, ranges) -> tuple[np.ndarray, float]:
    """Deterministic coordinate pattern search for the scan maximum."""
    lo = np.array([r[0] for r in ranges])
    hi = np.array([r[1] for r in ranges])
    x = np.array(start, dtype=float)
    steps = (hi - lo) / 16.0
    best = float(slant_cos_param(*x))
    for _ in range(200):
        improved = False
        for axis in range(4):
            for sign in (1.0, -1.0):
                cand = x.copy()
                cand[axis] = np.clip(cand[axis] + sign * steps[axis], lo[axis], hi[axis])
                val = float(slant_cos_param(*cand))
                if val > best:
                    best, x = val, cand
                    improved = True
        if not improved:
            steps *= 0.5
            if steps.max() < 1e-13:
                break
    return x, best


def slant_scan(
    resolution: tuple[int, int, int, int] = (32, 32, 32, 32),
    ranges: tuple[tuple[float, float], ...] = _DEFAULT_RANGES,
    chunk: int = 1 << 17,
) -> ScanResult:
    """Deterministic row-major scan of the parameter lattice.

    Lattices are closed-open uniform (``lo + k (hi - lo) / n``).  Per node the
    scan records the slant cosine (first principles on regular nodes, the
    parameterized closed form on degenerate ones), the mean-curvature norm and
    the Gauss-equation curvature (NaN on non-regular nodes).
    """
    if len(resolution) != 4 or any(r < 2 for r in resolution):
        raise ValueError(f"resolution needs 4 axes with at least 2 nodes each, got {resolution}")
    if len(ranges) != 4 or any(r[1] <= r[0] for r in ranges):
        raise ValueError(f"malformed ranges: {ranges}")
    axes = [
        lo + (hi - lo) * np.arange(n) / n for (lo, hi), n in zip(ranges, resolution)
    ]
    mesh = np.meshgrid(*axes, indexing="ij")
    params = np.stack([m.reshape(-1) for m in mesh], axis=1)
    n = len(params)
    slant = np.empty(n)
    hnorm = np.full(n, np.nan)
    gauss = np.full(n, np.nan)
    regular = np.empty(n, dtype=bool)
    for lo_i in range(0, n, chunk):
        sl = slice(lo_i, min(lo_i + chunk, n))
        block = params[sl]
        pts = param_to_point(block[:, 0], block[:, 1], block[:, 2], block[:, 3])
        a, b, c = _abc(pts)
        reg = np.minimum(np.minimum(a + b, a + c), b + c) > REGULARITY_TOL
        regular[sl] = reg
        svals = slant_cos_param(block[:, 0], block[:, 1], block[:, 2], block[:, 3])
        if np.any(reg):
            svals = np.where(reg, 0.0, svals)
            sub = pts[reg]
            svals[np.flatnonzero(reg)] = _slant_cos_batch(sub)
            geo = _geometry_batch(sub)
            hn = np.linalg.norm(geo["mean_h"], axis=-1)
            tmp = np.full(len(block), np.nan)
            tmp[np.flatnonzero(reg)] = hn
            hnorm[sl] = tmp
            tmp = np.full(len(block), np.nan)
            tmp[np.flatnonzero(reg)] = geo["gauss_k"]
            gauss[sl] = tmp
        slant[sl] = svals
    return ScanResult(
        params=params,
        slant_cos=slant,
        mean_h_norm=hnorm,
        gauss_k=gauss,
        regular=regular,
        resolution=tuple(int(r) for r in resolution),
        ranges=tuple((float(lo), float(hi)) for lo, hi in ranges),
    )
