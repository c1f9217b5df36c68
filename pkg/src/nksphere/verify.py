"""Property-verification suites.

Each check function draws its randomness from an explicit generator, measures
a worst-case residual and compares it against a named tolerance, so the whole
battery is reproducible from a single seed and individual tolerances can be
overridden from the command line.  The acceptance tests call the same
functions with the same counts; the CLI groups them per module.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from . import calibration as ca
from . import g2
from . import octonion as oc
from . import orbits as orb
from . import spheres as sp

__all__ = ["CheckResult", "SuiteResult", "DEFAULT_SEED", "DEFAULT_TOLERANCES", "SUITE_NAMES", "run_verify"]

DEFAULT_SEED = 12648430

DEFAULT_TOLERANCES: dict[str, float] = {
    "algebra": 1e-12,
    "lemma_cyclic": 1e-10,
    "nearly_kahler": 1e-6,
    "eq_phi_assoc": 1e-10,
    "gram": 1e-10,
    "frame_independence": 1e-10,
    "g2_invariance": 1e-9,
    "calibration_bound": 1e-12,
    "calibration_tightness": 1e-3,
    "cd_frame": 1e-10,
    "reduction_subspace": 1e-8,
    "witness_residual": 1e-10,
    "torus_automorphism": 1e-12,
    "group_law": 1e-12,
    "expm_agreement": 1e-10,
    "basic_triple": 1e-10,
    "structure_invariance": 1e-10,
    "wirtinger_independence": 1e-12,
    "tangential_ratio": 1e-10,
    "slant_spread": 1e-9,
    "slant_angle": 1e-9,
    "not_slant_spread": 1e-4,
    "covariance": 1e-10,
    "landmark": 1e-12,
    "closed_form": 1e-10,
    "slant_constancy": 1e-10,
    "frame_norms": 1e-12,
    "flatness": 1e-12,
    "gauss": 1e-8,
    "range_upper": 1e-9,
    "range_attain": 1e-6,
    "mean_h_zero": 1e-10,
    "family_slant": 1e-10,
    "zero_set": 1e-8,
    "convention": 1e-10,
}


@dataclass
class CheckResult:
    name: str
    passed: bool
    residual: float
    tolerance: float
    n: int
    note: str = ""
    details: list = field(default_factory=list)

    def to_json_dict(self) -> dict:
        d = {
            "name": self.name,
            "passed": self.passed,
            "residual": self.residual,
            "tolerance": self.tolerance,
            "n": self.n,
        }
        if self.note:
            d["note"] = self.note
        if self.details:
            d["details"] = self.details
        return d


@dataclass
class SuiteResult:
    name: str
    checks: list[CheckResult]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def max_residual(self) -> float:
        return max((c.residual for c in self.checks), default=0.0)

    def to_json_dict(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "max_residual": self.max_residual,
            "checks": [c.to_json_dict() for c in self.checks],
        }


def _random_octonions(rng, n):
    return rng.normal(size=(n, 8))


def _random_imaginary(rng, n):
    return rng.normal(size=(n, 7))


def _random_unit_imaginary(rng, n):
    v = rng.normal(size=(n, 7))
    return v / np.linalg.norm(v, axis=1, keepdims=True)


# ----------------------------------------------------------------- octonions


def check_table_fidelity() -> CheckResult:
    """All 49 imaginary basis products in exact integers against the reference table."""
    eye = np.eye(8, dtype=np.int64)
    resid = 0
    for i in range(1, 8):
        for j in range(1, 8):
            prod = oc.multiply(eye[i], eye[j])
            resid = max(resid, int(np.abs(prod - oc.STRUCTURE_TENSOR[i, j]).max()))
    return CheckResult("table_fidelity", resid == 0, float(resid), 0.0, 49,
                       note="exact integer arithmetic")


def check_identity_element(rng, tol, n=10_000) -> CheckResult:
    x = _random_octonions(rng, n)
    e0 = np.zeros(8)
    e0[0] = 1.0
    resid = max(
        float(np.abs(oc.multiply(e0, x) - x).max()),
        float(np.abs(oc.multiply(x, e0) - x).max()),
    )
    return CheckResult("identity_element", resid <= tol, resid, tol, n)


def check_conjugation(rng, tol, n=10_000) -> CheckResult:
    x = _random_octonions(rng, n)
    y = _random_octonions(rng, n)
    resid = float(np.abs(oc.conjugate(oc.conjugate(x)) - x).max())
    anti = oc.conjugate(oc.multiply(x, y)) - oc.multiply(oc.conjugate(y), oc.conjugate(x))
    resid = max(resid, float(np.abs(anti).max()))
    return CheckResult("conjugation", resid <= tol, resid, tol, n)


def check_product_split(rng, tol, n=10_000) -> CheckResult:
    """xy = -<x,y> e0 + x cross y for imaginary x, y."""
    x = _random_imaginary(rng, n)
    y = _random_imaginary(rng, n)
    prod = oc.multiply(oc.embed_imaginary(x), oc.embed_imaginary(y))
    expected = oc.embed_imaginary(oc.cross(x, y))
    expected[:, 0] = -oc.inner(x, y)
    resid = float(np.abs(prod - expected).max())
    return CheckResult("product_split", resid <= tol, resid, tol, n)


def check_alternative_law(rng, tol, n=10_000) -> CheckResult:
    """conj(x)(xy) = (conj(x)x) y."""
    x = _random_octonions(rng, n)
    y = _random_octonions(rng, n)
    lhs = oc.multiply(oc.conjugate(x), oc.multiply(x, y))
    rhs = oc.multiply(oc.multiply(oc.conjugate(x), x), y)
    resid = float(np.abs(lhs - rhs).max())
    return CheckResult("alternative_law", resid <= tol, resid, tol, n)


def check_inner_multiplicativity(rng, tol, n=10_000) -> CheckResult:
    """<xy, xz> = <x,x><y,z> = <yx, zx>."""
    x = _random_octonions(rng, n)
    y = _random_octonions(rng, n)
    z = _random_octonions(rng, n)
    left = oc.inner(oc.multiply(x, y), oc.multiply(x, z))
    right = oc.inner(oc.multiply(y, x), oc.multiply(z, x))
    mid = oc.inner(x, x) * oc.inner(y, z)
    resid = max(float(np.abs(left - mid).max()), float(np.abs(right - mid).max()))
    return CheckResult("inner_multiplicativity", resid <= tol, resid, tol, n)


def check_cyclic_products(rng, tol, n=10_000) -> CheckResult:
    """x(yz) = y(zx) = z(xy) on orthonormal (not necessarily imaginary-free) triples."""
    frames = np.linalg.qr(rng.normal(size=(n, 7, 3)))[0]
    x = oc.embed_imaginary(frames[:, :, 0])
    y = oc.embed_imaginary(frames[:, :, 1])
    z = oc.embed_imaginary(frames[:, :, 2])
    a = oc.multiply(x, oc.multiply(y, z))
    b = oc.multiply(y, oc.multiply(z, x))
    c = oc.multiply(z, oc.multiply(x, y))
    resid = max(float(np.abs(a - b).max()), float(np.abs(b - c).max()))
    return CheckResult("cyclic_products", resid <= tol, resid, tol, n)


def check_norm_composition(rng, tol, n=10_000) -> CheckResult:
    x = _random_octonions(rng, n)
    y = _random_octonions(rng, n)
    resid = float(np.abs(oc.norm(oc.multiply(x, y)) - oc.norm(x) * oc.norm(y)).max())
    # normalize the scale so the threshold is meaningful for |x| ~ sqrt(8)
    resid /= float(max(1.0, np.median(oc.norm(x) * oc.norm(y))))
    return CheckResult("norm_composition", resid <= tol, resid, tol, n, note="relative")


def check_inner_definition(rng, tol, n=10_000) -> CheckResult:
    x = _random_octonions(rng, n)
    y = _random_octonions(rng, n)
    sym = 0.5 * (oc.multiply(x, oc.conjugate(y)) + oc.multiply(y, oc.conjugate(x)))
    resid = float(np.abs(sym[:, 0] - oc.inner(x, y)).max())
    resid = max(resid, float(np.abs(sym[:, 1:]).max()))
    return CheckResult("inner_definition", resid <= tol, resid, tol, n)


def check_j_properties(rng, tol, n=10_000) -> CheckResult:
    p = _random_unit_imaginary(rng, n)
    x = _random_imaginary(rng, n)
    x = x - oc.inner(x, p)[:, None] * p
    jx = oc.j_structure(p, x)
    resid = float(np.abs(oc.multiply(oc.embed_imaginary(p), oc.embed_imaginary(x))
                         - oc.embed_imaginary(jx)).max())
    jjx = oc.j_structure(p, jx)
    resid = max(resid, float(np.abs(jjx + x).max()))
    y = _random_imaginary(rng, n)
    y = y - oc.inner(y, p)[:, None] * p
    jy = oc.j_structure(p, y)
    resid = max(resid, float(np.abs(oc.inner(jx, jy) - oc.inner(x, y)).max()))
    return CheckResult("j_properties", resid <= tol, resid, tol, n)


def check_nearly_kahler(rng, tol, n=256, h=1e-5) -> CheckResult:
    """Tangential part of d/dt J_{gamma(t)} X(t) vanishes along great circles.

    gamma is the geodesic with gamma(0) = p, gamma'(0) = X, and X(t) is the
    parallel transport of X (the velocity field); central difference in t.
    """
    p = _random_unit_imaginary(rng, n)
    x = _random_imaginary(rng, n)
    x = x - oc.inner(x, p)[:, None] * p
    x /= np.linalg.norm(x, axis=1, keepdims=True)

    def field(t):
        gamma = np.cos(t) * p + np.sin(t) * x
        xt = -np.sin(t) * p + np.cos(t) * x
        return oc.cross(gamma, xt)

    deriv = (field(h) - field(-h)) / (2.0 * h)
    tangential = deriv - oc.inner(deriv, p)[:, None] * p
    resid = float(np.abs(tangential).max())
    return CheckResult("nearly_kahler", resid <= tol, resid, tol, n)


def suite_octonion_core(rng, tol) -> SuiteResult:
    t = tol
    return SuiteResult(
        "octonion_core",
        [
            check_table_fidelity(),
            check_identity_element(rng, t["algebra"]),
            check_conjugation(rng, t["algebra"]),
            check_product_split(rng, t["algebra"]),
            check_alternative_law(rng, t["algebra"]),
            check_inner_multiplicativity(rng, t["algebra"]),
            check_cyclic_products(rng, t["lemma_cyclic"]),
            check_norm_composition(rng, t["algebra"]),
            check_inner_definition(rng, t["algebra"]),
            check_j_properties(rng, t["algebra"]),
            check_nearly_kahler(rng, t["nearly_kahler"]),
        ],
    )


# --------------------------------------------------------------- calibration


def check_phi_assoc_identity(rng, tol, n=10_000) -> CheckResult:
    frames = np.linalg.qr(rng.normal(size=(n, 7, 3)))[0].transpose(0, 2, 1)
    phi = oc.assoc_form(frames[:, 0], frames[:, 1], frames[:, 2])
    full = oc.associator(
        oc.embed_imaginary(frames[:, 0]),
        oc.embed_imaginary(frames[:, 1]),
        oc.embed_imaginary(frames[:, 2]),
    )
    norm2 = np.einsum("ni,ni->n", full, full)
    resid = float(np.abs(phi * phi + 0.25 * norm2 - 1.0).max())
    return CheckResult("phi_assoc_identity", resid <= tol, resid, tol, n)


def check_gram_pattern(rng, tol, n=10_000) -> CheckResult:
    frames = np.linalg.qr(rng.normal(size=(n, 7, 3)))[0].transpose(0, 2, 1)
    f1, f2, f3 = frames[:, 0], frames[:, 1], frames[:, 2]
    vecs = np.stack(
        [
            f1, f2, f3,
            oc.cross(f2, f3), oc.cross(f3, f1), oc.cross(f1, f2),
            oc.imaginary_part(oc.associator(*(oc.embed_imaginary(v) for v in (f1, f2, f3)))),
        ],
        axis=1,
    )
    gram = np.einsum("nik,njk->nij", vecs, vecs)
    phi = oc.assoc_form(f1, f2, f3)
    expected = np.zeros_like(gram)
    idx = np.arange(6)
    expected[:, idx, idx] = 1.0
    for k in range(3):
        expected[:, k, k + 3] = phi
        expected[:, k + 3, k] = phi
    expected[:, 6, 6] = 4.0 * (1.0 - phi * phi)
    resid = float(np.abs(gram - expected).max())
    return CheckResult("gram_pattern", resid <= tol, resid, tol, n)


def check_frame_independence(rng, tol, n=1000) -> CheckResult:
    resid = 0.0
    for _ in range(n):
        plane = ca.random_plane(rng)
        rot = np.linalg.qr(rng.normal(size=(3, 3)))[0]
        if np.linalg.det(rot) < 0:
            rot[0] *= -1.0
        reframed = ca.Plane3(frame=rot @ plane.frame)
        resid = max(resid, abs(ca.phi_of_plane(plane) - ca.phi_of_plane(reframed)))
        a1 = ca.associator_of_plane(plane)
        a2 = ca.associator_of_plane(reframed)
        resid = max(resid, abs(np.linalg.norm(a1) - np.linalg.norm(a2)))
        if np.linalg.norm(a1) > 1e-6:
            d1, d2 = a1 / np.linalg.norm(a1), a2 / np.linalg.norm(a2)
            resid = max(resid, min(np.abs(d1 - d2).max(), np.abs(d1 + d2).max()))
    return CheckResult("frame_independence", resid <= tol, resid, tol, n)


def check_g2_invariance(rng, tol, n=1000) -> CheckResult:
    resid = 0.0
    for _ in range(n):
        plane = ca.random_plane(rng)
        g = g2.random_automorphism(rng)
        moved = ca.Plane3(frame=g.apply(plane.frame))
        resid = max(resid, abs(ca.phi_of_plane(plane) - ca.phi_of_plane(moved)))
        a1 = g.apply(ca.associator_of_plane(plane))
        a2 = ca.associator_of_plane(moved)
        resid = max(resid, min(np.abs(a1 - a2).max(), np.abs(a1 + a2).max()))
    return CheckResult("g2_invariance", resid <= tol, resid, tol, n)


def check_calibration_bound(rng, bound_tol, tight_tol, n=100_000) -> CheckResult:
    """|form| <= 1 on orthonormal triples; the bound is attained.

    Random sampling alone does not reach the contact set at this sample size
    (its codimension in the Grassmannian is 4), so tightness is witnessed by
    the canonical family, whose frames evaluate to every value in [0, 1].
    """
    frames = np.linalg.qr(rng.normal(size=(n, 7, 3)))[0].transpose(0, 2, 1)
    phi = np.abs(oc.assoc_form(frames[:, 0], frames[:, 1], frames[:, 2]))
    excess = float(phi.max() - 1.0)
    sweep = [abs(ca.signed_phi(ca.canonical_plane(v))) for v in np.linspace(0.0, 1.0, 21)]
    witnessed = float(max(float(phi.max()), max(sweep)))
    passed = excess <= bound_tol and witnessed > 1.0 - tight_tol
    note = f"random max {phi.max():.6f}; tightness witnessed by the canonical family"
    return CheckResult("calibration_bound", passed, max(excess, 0.0), bound_tol, n, note=note)


def check_cd_frame(rng, tol, n=300) -> CheckResult:
    """The adapted 7-frame multiplies like the coordinate basis; closed forms hold."""
    tensor = oc.STRUCTURE_TENSOR.astype(float)
    resid = 0.0
    closed = 0.0
    k = 0
    while k < n:
        plane = ca.random_plane(rng)
        phi = ca.signed_phi(plane)
        if abs(phi) > 0.99:
            continue
        k += 1
        frame = ca.cayley_dickson_frame(plane)
        resid = max(resid, float(np.abs(frame @ frame.T - np.eye(7)).max()))
        prods = oc.multiply(
            oc.embed_imaginary(frame)[:, None, :], oc.embed_imaginary(frame)[None, :, :]
        )
        expected = np.zeros((7, 7, 8))
        expected[..., 0] = tensor[1:, 1:, 0]
        expected[..., 1:] = np.einsum("ijk,kl->ijl", tensor[1:, 1:, 1:], frame)
        resid = max(resid, float(np.abs(prods - expected).max()))
        s = np.sqrt(1.0 - phi * phi)
        f1, f2, f3 = plane.frame
        closed = max(closed, float(np.abs(frame[4] - (-phi * f1 + oc.cross(f2, f3)) / s).max()))
        closed = max(closed, float(np.abs(frame[5] - (-phi * f2 + oc.cross(f3, f1)) / s).max()))
        closed = max(closed, float(np.abs(frame[6] - (-f3 + phi * oc.cross(f1, f2)) / s).max()))
    worst = max(resid, closed)
    return CheckResult(
        "cd_frame", worst <= tol, worst, tol, n,
        note="F5/F6 closed forms hold with the sign -phi f1 + f2 f3 (signed form value)",
    )


def check_reduction(rng, tol_subspace, tol_auto, n=300) -> CheckResult:
    resid_sub = 0.0
    resid_auto = 0.0
    resid_f3 = 0.0
    for k in range(n):
        if k % 10 == 0:
            g = g2.random_automorphism(rng)
            plane = ca.Plane3(frame=g.apply(ca.canonical_plane(1.0).frame))
        else:
            plane = ca.random_plane(rng)
        red = ca.reduce_to_canonical(plane)
        moved = ca.Plane3(frame=red.automorphism.apply(plane.frame))
        resid_sub = max(resid_sub, ca.subspace_distance(moved, red.target))
        resid_auto = max(resid_auto, g2.is_automorphism(red.automorphism.matrix)[1])
        if red.phi_value < 1.0 - 1e-6:
            phi = red.phi_value
            expect = phi * oc.imaginary_basis(3) - np.sqrt(1 - phi * phi) * oc.imaginary_basis(7)
            sign = ca.signed_phi(plane)
            f3img = red.automorphism.apply(plane.f3 if sign >= 0 else -plane.f3)
            resid_f3 = max(resid_f3, float(np.abs(f3img - expect).max()))
    worst = max(resid_sub, resid_auto, resid_f3)
    passed = resid_sub <= tol_subspace and max(resid_auto, resid_f3) <= max(tol_auto, tol_subspace)
    return CheckResult("reduction", passed, worst, tol_subspace, n)


def check_equivalence(rng, tol_resid, tol_subspace, n_pairs=100) -> CheckResult:
    resid = 0.0
    ok = True
    for _ in range(n_pairs):
        seed_plane = ca.random_plane(rng)
        g1, gsecond = g2.random_automorphism(rng), g2.random_automorphism(rng)
        p1 = ca.Plane3(frame=g1.apply(seed_plane.frame))
        p2 = ca.Plane3(frame=gsecond.apply(seed_plane.frame))
        same, witness = ca.g2_equivalent(p1, p2)
        if not same:
            ok = False
            continue
        resid = max(resid, g2.is_automorphism(witness.matrix)[1])
        moved = ca.Plane3(frame=witness.apply(p1.frame))
        resid = max(resid, ca.subspace_distance(moved, p2))
    rejected = 0
    tried = 0
    while tried < n_pairs:
        p1 = ca.random_plane(rng)
        p2 = ca.random_plane(rng)
        if abs(ca.phi_of_plane(p1) - ca.phi_of_plane(p2)) <= 0.01:
            continue
        tried += 1
        same, _ = ca.g2_equivalent(p1, p2)
        if not same:
            rejected += 1
    passed = ok and rejected == tried and resid <= max(tol_resid, tol_subspace)
    note = f"{n_pairs} equal-form pairs accepted, {rejected}/{tried} distinct-form pairs rejected"
    return CheckResult("equivalence", passed, resid, tol_subspace, 2 * n_pairs, note=note)


def suite_calibration(rng, tol) -> SuiteResult:
    return SuiteResult(
        "calibration",
        [
            check_phi_assoc_identity(rng, tol["eq_phi_assoc"]),
            check_gram_pattern(rng, tol["gram"]),
            check_frame_independence(rng, tol["frame_independence"]),
            check_g2_invariance(rng, tol["g2_invariance"]),
            check_calibration_bound(rng, tol["calibration_bound"], tol["calibration_tightness"]),
            check_cd_frame(rng, tol["cd_frame"]),
            check_reduction(rng, tol["reduction_subspace"], tol["witness_residual"]),
            check_equivalence(rng, tol["witness_residual"], tol["reduction_subspace"]),
        ],
    )


# ----------------------------------------------------------------------- g2


def check_generator_audit() -> CheckResult:
    """Exact audit of the conventional fourteen generators; failures are reported."""
    audits = g2.g2_standard_basis()
    details = [a.to_json_dict() for a in audits]
    failing = [a.name for a in audits if not a.passes]
    note = "failing (kept verbatim): " + ", ".join(failing) if failing else "all pass"
    return CheckResult("generator_audit", True, 0.0, 0.0, len(audits), note=note, details=details)


def check_cartan_pair() -> CheckResult:
    p0, q0 = g2.cartan_generators()
    ok_p, res_p = g2.is_derivation(p0)
    ok_q, res_q = g2.is_derivation(q0)
    resid = max(res_p, res_q)
    return CheckResult("cartan_pair_derivation", ok_p and ok_q and resid == 0.0, resid, 0.0, 2,
                       note="exact integer arithmetic")


def check_torus_automorphism(rng, tol, n=1000) -> CheckResult:
    resid = 0.0
    for _ in range(n):
        t, s = rng.uniform(-4 * np.pi, 4 * np.pi, size=2)
        resid = max(resid, g2.is_automorphism(g2.torus_flow(t, s).matrix, tol)[1])
    return CheckResult("torus_automorphism", resid <= tol, resid, tol, n)


def check_group_law(rng, tol, n=1000) -> CheckResult:
    resid = 0.0
    for _ in range(n):
        t1, s1, t2, s2 = rng.uniform(-4 * np.pi, 4 * np.pi, size=4)
        lhs = g2.torus_flow(t1, s1).matrix @ g2.torus_flow(t2, s2).matrix
        rhs = g2.torus_flow(t1 + t2, s1 + s2).matrix
        resid = max(resid, float(np.abs(lhs - rhs).max()))
    resid = max(resid, float(np.abs(g2.torus_flow(2 * np.pi, 2 * np.pi).matrix - np.eye(7)).max()))
    return CheckResult("group_law", resid <= tol, resid, tol, n, note="includes 2pi periodicity")


def check_fixes_e1() -> CheckResult:
    resid = 0.0
    for t, s in ((0.3, 0.4), (1.0, -2.0), (np.pi, np.e)):
        m = g2.torus_flow(t, s).matrix
        e1 = np.zeros(7)
        e1[0] = 1.0
        resid = max(resid, float(np.abs(m @ e1 - e1).max()))
    weights = np.array(g2.TORUS_WEIGHTS)
    balanced = np.array_equal(weights[0] + weights[1], weights[2])
    return CheckResult("fixes_e1_weights", resid == 0.0 and balanced, resid, 0.0, 3,
                       note="e1 fixed exactly; plane weights satisfy w67 = w23 + w45")


def check_expm_agreement(rng, tol, n=200) -> CheckResult:
    p0, q0 = g2.cartan_generators()
    resid = 0.0
    for _ in range(n):
        t, s = rng.uniform(-4 * np.pi, 4 * np.pi, size=2)
        reference = scipy.linalg.expm(2.0 * t * p0 + 2.0 * s * q0)
        resid = max(resid, float(np.abs(g2.torus_flow(t, s).matrix - reference).max()))
    return CheckResult("expm_agreement", resid <= tol, resid, tol, n,
                       note="closed form vs scaling-and-squaring exponential")


def check_structure_invariance(rng, tol, n=1000) -> CheckResult:
    """Torus and basic-triple automorphisms preserve the inner product, the
    3-form, and commute with the almost complex structure."""
    resid = 0.0
    for k in range(n):
        if k % 2 == 0:
            m = g2.torus_flow(*rng.uniform(-np.pi, np.pi, size=2)).matrix
        else:
            m = g2.random_automorphism(rng).matrix
        x, y, z = rng.normal(size=(3, 7))
        resid = max(resid, float(np.abs(m.T @ m - np.eye(7)).max()))
        resid = max(resid, abs(float(oc.assoc_form(m @ x, m @ y, m @ z) - oc.assoc_form(x, y, z))))
        p = rng.normal(size=7)
        p /= np.linalg.norm(p)
        w = rng.normal(size=7)
        w -= (w @ p) * p
        resid = max(resid, float(np.abs(oc.cross(m @ p, m @ w) - m @ oc.cross(p, w)).max()))
    return CheckResult("structure_invariance", resid <= tol, resid, tol, n)


def check_basic_triples(rng, tol, n=300) -> CheckResult:
    resid = 0.0
    for _ in range(n):
        h1, h2, h3 = g2.random_basic_triple(rng)
        g = g2.automorphism_from_basic_triple(h1, h2, h3)
        resid = max(resid, g2.is_automorphism(g.matrix, tol)[1])
        images = g.apply(np.eye(7))
        resid = max(resid, float(np.abs(images[0] - h1).max()))
        resid = max(resid, float(np.abs(images[1] - h2).max()))
        resid = max(resid, float(np.abs(images[3] - h3).max()))
    return CheckResult("basic_triples", resid <= tol, resid, tol, n)


def suite_g2_group(rng, tol) -> SuiteResult:
    return SuiteResult(
        "g2_group",
        [
            check_generator_audit(),
            check_cartan_pair(),
            check_torus_automorphism(rng, tol["torus_automorphism"]),
            check_group_law(rng, tol["group_law"]),
            check_fixes_e1(),
            check_expm_agreement(rng, tol["expm_agreement"]),
            check_structure_invariance(rng, tol["structure_invariance"]),
            check_basic_triples(rng, tol["basic_triple"]),
        ],
    )


# -------------------------------------------------------------------- spheres


def _random_tangent_frame(rng) -> sp.TangentFrame:
    q = np.linalg.qr(rng.normal(size=(7, 3)))[0]
    return sp.TangentFrame(p=q[:, 0], x=q[:, 1], y=q[:, 2])


def check_wirtinger_independence(rng, tol, n=1000) -> CheckResult:
    resid = 0.0
    for _ in range(n):
        frame = _random_tangent_frame(rng)
        theta = rng.uniform(0.0, 2.0 * np.pi)
        x2 = np.cos(theta) * frame.x + np.sin(theta) * frame.y
        y2 = -np.sin(theta) * frame.x + np.cos(theta) * frame.y
        rotated = sp.TangentFrame(p=frame.p, x=x2, y=y2)
        resid = max(resid, abs(sp.wirtinger_cos(frame) - sp.wirtinger_cos(rotated)))
    return CheckResult("wirtinger_independence", resid <= tol, resid, tol, n)


def check_tangential_ratio(rng, tol, n=1000) -> CheckResult:
    """|P Z| / |Z| equals the Wirtinger cosine for every Z in the tangent plane."""
    resid = 0.0
    for _ in range(n):
        frame = _random_tangent_frame(rng)
        w = sp.wirtinger_cos(frame)
        theta = rng.uniform(0.0, 2.0 * np.pi)
        z = np.cos(theta) * frame.x + np.sin(theta) * frame.y
        jz = oc.cross(frame.p, z)
        pz = oc.inner(jz, frame.x) * frame.x + oc.inner(jz, frame.y) * frame.y
        resid = max(resid, abs(float(np.linalg.norm(pz)) - w))
    return CheckResult("tangential_ratio", resid <= tol, resid, tol, n)


def check_great_spheres(rng, spread_tol, angle_tol, n=1000, samples=32) -> CheckResult:
    resid_spread = 0.0
    resid_angle = 0.0
    for _ in range(n):
        plane = ca.random_plane(rng)
        report = sp.analyze_great_sphere(plane, samples, slant_tol=spread_tol)
        resid_spread = max(resid_spread, report.spread)
        resid_angle = max(resid_angle, abs(report.angle_rad - np.arccos(ca.phi_of_plane(plane))))
    worst = max(resid_spread, resid_angle)
    passed = resid_spread <= spread_tol and resid_angle <= angle_tol
    return CheckResult("great_spheres", passed, worst, max(spread_tol, angle_tol), n)


def _random_associative_plane(rng) -> ca.Plane3:
    g = g2.random_automorphism(rng)
    return ca.Plane3(frame=g.apply(ca.canonical_plane(1.0).frame))


def check_associative_small_spheres(rng, spread_tol, angle_tol, n=1000, samples=32) -> CheckResult:
    resid = 0.0
    for _ in range(n):
        plane = _random_associative_plane(rng)
        r = rng.uniform(0.05, 0.95)
        xi = rng.normal(size=7)
        xi -= plane.frame.T @ (plane.frame @ xi)
        xi /= np.linalg.norm(xi)
        section = sp.SphereSection(plane=plane, radius=r, center=np.sqrt(1 - r * r) * xi)
        report = sp.analyze_small_sphere(section, samples, slant_tol=spread_tol)
        resid = max(resid, report.spread, abs(report.angle_rad - np.arccos(r)))
    return CheckResult("associative_small_spheres", resid <= max(spread_tol, angle_tol),
                       resid, max(spread_tol, angle_tol), n)


def check_small_sphere_centers(rng, spread_tol, angle_tol, n=1000, samples=32) -> CheckResult:
    resid = 0.0
    for _ in range(n):
        plane = ca.random_plane(rng)
        if ca.phi_of_plane(plane) > 0.99:
            continue
        r = rng.uniform(0.05, 0.95)
        centers = sp.slant_center(plane, r)
        center = centers[int(rng.integers(0, 2))]
        section = sp.SphereSection(plane=plane, radius=r, center=center)
        report = sp.analyze_small_sphere(section, samples, slant_tol=spread_tol)
        resid = max(resid, report.spread)
        resid = max(resid, abs(report.angle_rad - np.arccos(r * ca.phi_of_plane(plane))))
    return CheckResult("small_sphere_centers", resid <= max(spread_tol, angle_tol),
                       resid, max(spread_tol, angle_tol), n)


def check_small_sphere_perturbed(rng, not_slant_tol, n=100, samples=64) -> CheckResult:
    """Centers rotated off the admissible axis by at least 0.1 rad are not slant."""
    min_spread = np.inf
    k = 0
    while k < n:
        plane = ca.random_plane(rng)
        if ca.phi_of_plane(plane) > 0.95:
            continue
        k += 1
        r = rng.uniform(0.2, 0.8)
        good = sp.slant_center(plane, r)[0]
        axis = good / np.linalg.norm(good)
        v = rng.normal(size=7)
        v -= plane.frame.T @ (plane.frame @ v)
        v -= (v @ axis) * axis
        v /= np.linalg.norm(v)
        theta = rng.uniform(0.1, np.pi / 2)
        center = np.sqrt(1 - r * r) * (np.cos(theta) * axis + np.sin(theta) * v)
        section = sp.SphereSection(plane=plane, radius=r, center=center)
        report = sp.analyze_small_sphere(section, samples, not_slant_tol=not_slant_tol)
        if report.is_slant:
            min_spread = -np.inf
            break
        min_spread = min(min_spread, report.spread)
    passed = min_spread > not_slant_tol
    return CheckResult("small_sphere_perturbed", passed, float(min_spread), not_slant_tol, n,
                       note="residual is the minimum observed spread (must exceed tolerance)")


def check_sphere_covariance(rng, tol, n=200, samples=32) -> CheckResult:
    resid = 0.0
    for k in range(n):
        if k % 2 == 0:
            plane = _random_associative_plane(rng)
        else:
            plane = ca.random_plane(rng)
            if ca.phi_of_plane(plane) > 0.99:
                plane = ca.canonical_plane(0.5)
        r = rng.uniform(0.2, 0.9)
        if ca.phi_of_plane(plane) > 1 - 1e-8:
            xi = rng.normal(size=7)
            xi -= plane.frame.T @ (plane.frame @ xi)
            xi /= np.linalg.norm(xi)
            center = np.sqrt(1 - r * r) * xi
        else:
            center = sp.slant_center(plane, r)[0]
        section = sp.SphereSection(plane=plane, radius=r, center=center)
        g = g2.random_automorphism(rng)
        moved = sp.SphereSection(
            plane=ca.Plane3(frame=g.apply(plane.frame)), radius=r, center=g.apply(center)
        )
        rep1 = sp.analyze_small_sphere(section, samples)
        rep2 = sp.analyze_small_sphere(moved, samples)
        if rep1.classification != rep2.classification:
            return CheckResult("sphere_covariance", False, np.inf, tol, n,
                               note="classification changed under an automorphism")
        resid = max(resid, abs(rep1.angle_rad - rep2.angle_rad))
    return CheckResult("sphere_covariance", resid <= tol, resid, tol, n)


def suite_slant_spheres(rng, tol) -> SuiteResult:
    return SuiteResult(
        "slant_spheres",
        [
            check_wirtinger_independence(rng, tol["wirtinger_independence"]),
            check_tangential_ratio(rng, tol["tangential_ratio"]),
            check_great_spheres(rng, tol["slant_spread"], tol["slant_angle"]),
            check_associative_small_spheres(rng, tol["slant_spread"], tol["slant_angle"]),
            check_small_sphere_centers(rng, tol["slant_spread"], tol["slant_angle"]),
            check_small_sphere_perturbed(rng, tol["not_slant_spread"]),
            check_sphere_covariance(rng, tol["covariance"]),
        ],
    )


# --------------------------------------------------------------------- orbits


_LANDMARK = np.array([0.0, 0.0, 1.0, 0.0, 1.0, 1.0, 0.0]) / np.sqrt(3.0)


def check_landmark(tol) -> CheckResult:
    resid = 0.0
    for p in (_LANDMARK, -_LANDMARK):
        resid = max(resid, abs(orb.orbit_slant_cos(p) - 1.0 / 3.0))
        resid = max(resid, abs(orb.slant_cos_closed_form(p) - 1.0 / 3.0))
    return CheckResult("landmark", resid <= tol, resid, tol, 2,
                       note="first principles and closed form at the extremal points")


def check_closed_form_agreement(rng, tol, n=10_000) -> CheckResult:
    pts = orb.random_regular_points(rng, n)
    resid = float(np.abs(orb.orbit_slant_cos(pts) - orb.slant_cos_closed_form(pts)).max())
    return CheckResult("closed_form_agreement", resid <= tol, resid, tol, n)


def check_slant_constancy(rng, tol, n_points=100, n_flows=100) -> CheckResult:
    """The slant cosine is invariant under the automorphism torus flow."""
    pts = orb.random_regular_points(rng, n_points)
    base = orb.orbit_slant_cos(pts)
    resid = 0.0
    for _ in range(n_flows):
        t, s = rng.uniform(-2 * np.pi, 2 * np.pi, size=2)
        moved = pts @ g2.torus_flow(t, s).matrix.T
        resid = max(resid, float(np.abs(orb.orbit_slant_cos(moved) - base).max()))
    return CheckResult("slant_constancy", resid <= tol, resid, tol, n_points * n_flows)


def check_frame_norms(rng, tol, n=10_000) -> CheckResult:
    pts = orb.random_regular_points(rng, n)
    alpha, beta, gamma, _ = orb.regularity(pts)
    xbar, ybar, _, _ = orb.tangent_frame(pts)
    resid = max(
        float(np.abs(np.einsum("ni,ni->n", xbar, xbar) - beta).max()),
        float(np.abs(np.einsum("ni,ni->n", ybar, ybar) - gamma).max()),
    )
    return CheckResult("frame_norms", resid <= tol, resid, tol, n)


def check_flatness(rng, metric_tol, gauss_tol, n_orbits=1000, grid=16) -> CheckResult:
    pts = orb.random_regular_points(rng, n_orbits)
    angles = np.linspace(0.0, 2.0 * np.pi, grid, endpoint=False)
    mats = np.stack([orb.orbit_action(t, s) for t in angles for s in angles])
    clouds = np.einsum("gij,nj->ngi", mats, pts)  # (n, g^2, 7)
    flat = clouds.reshape(-1, 7)
    geo = orb._geometry_batch(flat)
    spread = 0.0
    for key in ("g11", "g12", "g22"):
        vals = geo[key].reshape(n_orbits, -1)
        spread = max(spread, float((vals.max(axis=1) - vals.min(axis=1)).max()))
    kmax = float(np.abs(geo["gauss_k"]).max())
    passed = spread <= metric_tol and kmax <= gauss_tol
    return CheckResult("flatness", passed, max(spread, kmax), max(metric_tol, gauss_tol),
                       n_orbits * grid * grid,
                       note=f"metric spread {spread:.2e}, max |K| {kmax:.2e}")


def check_range(rng, upper_tol, attain_tol, n_random=100_000,
                resolution=(32, 32, 32, 32)) -> CheckResult:
    scan = orb.slant_scan(resolution=resolution)
    summary = scan.summary()
    pts = orb.random_regular_points(rng, n_random)
    rand_vals = orb.orbit_slant_cos(pts)
    overall_max = max(summary["max_slant_cos"], float(rand_vals.max()))
    refined = summary["max_slant_cos_refined"]
    bins_total = summary["bins_total"]
    vals = np.concatenate([scan.slant_cos[scan.regular], rand_vals])
    covered = len(np.unique(np.minimum((vals / 0.01).astype(int), bins_total - 1)))
    excess = max(overall_max - 1.0 / 3.0, refined - 1.0 / 3.0, 0.0)
    passed = (
        overall_max <= 1.0 / 3.0 + upper_tol
        and refined >= 1.0 / 3.0 - attain_tol
        and covered == bins_total
    )
    note = (
        f"scan+random max {overall_max:.12f}, refined {refined:.12f}, "
        f"bins {covered}/{bins_total}"
    )
    return CheckResult("range", passed, excess, upper_tol,
                       int(np.prod(resolution)) + n_random, note=note)


def check_minimal_family(tol_h, tol_slant, n=12) -> CheckResult:
    resid = 0.0
    for c in np.arange(n) * (2.0 * np.pi / n):
        p = orb.minimal_family_point(c)
        geo = orb.orbit_geometry(p)
        resid = max(resid, geo.mean_h_norm)
        resid = max(resid, abs(geo.slant_cos - abs(np.cos(c)) / 3.0))
    return CheckResult("minimal_family", resid <= max(tol_h, tol_slant), resid,
                       max(tol_h, tol_slant), n)


def _random_slice_points(rng, n):
    pts = rng.normal(size=(n, 7))
    pts[:, 1] = 0.0
    pts[:, 3] = 0.0
    pts /= np.linalg.norm(pts, axis=1, keepdims=True)
    a, b, c = orb._abc(pts)
    keep = np.minimum(np.minimum(a + b, a + c), b + c) > 1e-6
    return pts[keep]


def check_zero_sets(rng, zero_tol, vector_tol, n=1000) -> CheckResult:
    """Numeric mean curvature and the closed form agree (values and zero sets)."""
    pts = _random_slice_points(rng, n)
    geo = orb._geometry_batch(pts)
    numeric = geo["mean_h"]
    closed = orb.mean_curvature_closed_form(pts)
    resid = float(np.abs(numeric - closed).max())
    numeric_zero = np.linalg.norm(numeric, axis=1) < zero_tol
    closed_zero = np.linalg.norm(closed, axis=1) < zero_tol
    agree = bool(np.all(numeric_zero == closed_zero))
    family_ok = True
    for c in np.arange(12) * (np.pi / 6.0):
        p = orb.minimal_family_point(c)
        family_ok &= np.linalg.norm(orb.mean_curvature_closed_form(p)) < zero_tol
        family_ok &= orb.orbit_geometry(p).mean_h_norm < zero_tol
    passed = agree and family_ok and resid <= vector_tol
    note = "closed form matches the numeric mean curvature componentwise on the slice"
    return CheckResult("zero_sets", passed, resid, vector_tol, len(pts), note=note)


def check_convention_independence(rng, tol, n=2000) -> CheckResult:
    """Mirroring the s-rotation of the (e4, e5) block changes nothing observable."""
    pts = orb.random_regular_points(rng, n)
    base = orb.orbit_slant_cos(pts)
    gen_s2 = np.zeros((7, 7))
    gen_s2[3, 4], gen_s2[4, 3] = 1.0, -1.0  # (e4,e5) rotated the other way
    gen_s2[6, 5], gen_s2[5, 6] = 1.0, -1.0
    xbar = pts @ orb.GEN_T.T
    ybar2 = pts @ gen_s2.T
    xn, yn = orb._orthonormalize(xbar, ybar2)
    mirrored = np.abs(np.einsum("ni,ni->n", xn, orb._cross_batch(pts, yn)))
    resid = float(np.abs(mirrored - base).max())
    slice_pts = _random_slice_points(rng, 200)
    geo1 = orb._geometry_batch(slice_pts)
    geo2 = orb._geometry_batch(slice_pts, gen_s=gen_s2)
    resid = max(resid, float(np.abs(geo2["gauss_k"] - geo1["gauss_k"]).max()))
    h1 = np.linalg.norm(geo1["mean_h"], axis=1) < 1e-8
    h2 = np.linalg.norm(geo2["mean_h"], axis=1) < 1e-8
    passed = resid <= tol and bool(np.all(h1 == h2))
    return CheckResult("convention_independence", passed, resid, tol, n)


def check_fullness(rng, n=100) -> CheckResult:
    pts = orb.random_regular_points(rng, n)
    worst_rank = 6
    offset_exact = True
    for p in pts:
        rank, offset = orb.linear_fullness(p, 64)
        worst_rank = min(worst_rank, rank)
        offset_exact &= offset == p[0]
    passed = worst_rank == 6 and offset_exact
    return CheckResult("linear_fullness", passed, float(6 - worst_rank), 0.0, n,
                       note="affine dimension 6, hyperplane offset equals x1 exactly")


def suite_torus_orbits(rng, tol) -> SuiteResult:
    return SuiteResult(
        "torus_orbits",
        [
            check_landmark(tol["landmark"]),
            check_closed_form_agreement(rng, tol["closed_form"]),
            check_slant_constancy(rng, tol["slant_constancy"]),
            check_frame_norms(rng, tol["frame_norms"]),
            check_flatness(rng, tol["flatness"], tol["gauss"]),
            check_range(rng, tol["range_upper"], tol["range_attain"]),
            check_minimal_family(tol["mean_h_zero"], tol["family_slant"]),
            check_zero_sets(rng, tol["zero_set"], tol["closed_form"]),
            check_convention_independence(rng, tol["convention"]),
            check_fullness(rng),
        ],
    )


# --------------------------------------------------------------------- runner


_SUITES = {
    "octonion_core": suite_octonion_core,
    "calibration": suite_calibration,
    "g2_group": suite_g2_group,
    "slant_spheres": suite_slant_spheres,
    "torus_orbits": suite_torus_orbits,
}

SUITE_NAMES = tuple(_SUITES)


def run_verify(
    seed: int = DEFAULT_SEED,
    only: tuple[str, ...] | None = None,
    tolerances: dict[str, float] | None = None,
) -> dict:
    """Run the property suites and return a JSON-ready report.

    Per-suite random streams are spawned from the seed by suite index, so a
    filtered run reproduces exactly the unfiltered per-suite results.
    """
    tol = dict(DEFAULT_TOLERANCES)
    for name, value in (tolerances or {}).items():
        if name not in tol:
            raise ValueError(f"unknown tolerance {name!r}; known: {', '.join(sorted(tol))}")
        tol[name] = float(value)
    if only:
        unknown = set(only) - set(_SUITES)
        if unknown:
            raise ValueError(f"unknown suite(s): {', '.join(sorted(unknown))}")
    children = np.random.SeedSequence(seed).spawn(len(_SUITES))
    suites = []
    for (name, fn), child in zip(_SUITES.items(), children):
        if only and name not in only:
            continue
        suites.append(fn(np.random.default_rng(child), tol))
    return {
        "seed": int(seed),
        "tolerances": {k: float(v) for k, v in sorted(tol.items())},
        "suites": [s.to_json_dict() for s in suites],
        "all_passed": all(s.passed for s in suites),
    }
