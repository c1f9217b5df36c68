import numpy as np
import pytest

from nksphere import calibration as ca
from nksphere import g2
from nksphere import octonion as oc
from nksphere import spheres as sp

IM = [None] + [oc.imaginary_basis(k) for k in range(1, 8)]


def plane(*indices):
    return ca.plane_from_spanning(*(IM[k] for k in indices))


def test_wirtinger_examples():
    frame = sp.TangentFrame(p=IM[1], x=IM[2], y=IM[3])
    assert sp.wirtinger_cos(frame) == pytest.approx(1.0, abs=1e-15)
    frame = sp.TangentFrame(p=IM[1], x=IM[2], y=IM[5])
    assert sp.wirtinger_cos(frame) == pytest.approx(0.0, abs=1e-15)


def test_wirtinger_rotation_invariance(rng):
    q = np.linalg.qr(rng.normal(size=(7, 3)))[0]
    frame = sp.TangentFrame(p=q[:, 0], x=q[:, 1], y=q[:, 2])
    base = sp.wirtinger_cos(frame)
    for theta in rng.uniform(0, 2 * np.pi, size=10):
        x2 = np.cos(theta) * frame.x + np.sin(theta) * frame.y
        y2 = -np.sin(theta) * frame.x + np.cos(theta) * frame.y
        assert sp.wirtinger_cos(sp.TangentFrame(frame.p, x2, y2)) == pytest.approx(
            base, abs=1e-12
        )


def test_tangent_frame_validation():
    with pytest.raises(ValueError, match="orthonormal"):
        sp.TangentFrame(p=IM[1], x=IM[1], y=IM[2])


def test_great_sphere_associative_plane():
    report = sp.analyze_great_sphere(plane(1, 2, 3))
    assert report.is_slant
    assert report.classification == "almost_complex"
    assert report.angle_rad == pytest.approx(0.0, abs=1e-7)


def test_great_sphere_totally_real():
    report = sp.analyze_great_sphere(plane(1, 2, 7))
    assert report.is_slant
    assert report.classification == "totally_real"
    assert report.angle_rad == pytest.approx(np.pi / 2, abs=1e-12)


def test_great_sphere_proper_slant():
    third = (IM[3] - IM[7]) / np.sqrt(2.0)
    report = sp.analyze_great_sphere(ca.plane_from_spanning(IM[1], IM[2], third))
    assert report.classification == "proper_slant"
    assert report.angle_rad == pytest.approx(np.pi / 4, abs=1e-12)


def test_great_spheres_always_slant(rng):
    for _ in range(50):
        p = ca.random_plane(rng)
        report = sp.analyze_great_sphere(p)
        assert report.is_slant and report.spread < 1e-9
        assert report.angle_rad == pytest.approx(
            np.arccos(ca.phi_of_plane(p)), abs=1e-9
        )


def test_slant_center_examples():
    plus, minus = sp.slant_center(plane(1, 2, 7), 0.5)
    np.testing.assert_allclose(plus, -np.sqrt(3) / 2 * IM[4], atol=1e-14)
    np.testing.assert_allclose(minus, np.sqrt(3) / 2 * IM[4], atol=1e-14)
    plus, _ = sp.slant_center(plane(1, 2, 4), 0.5)
    np.testing.assert_allclose(plus, np.sqrt(3) / 2 * IM[7], atol=1e-14)


def test_slant_center_rejects_associative():
    with pytest.raises(ValueError, match="non-associative"):
        sp.slant_center(plane(1, 2, 3), 0.5)


def test_small_sphere_associative_plane_angle():
    section = sp.SphereSection(plane=plane(1, 2, 3), radius=0.5,
                               center=np.sqrt(3) / 2 * IM[7])
    report = sp.analyze_small_sphere(section)
    assert report.is_slant
    assert report.angle_rad == pytest.approx(np.pi / 3, abs=1e-12)


def test_small_sphere_totally_real():
    section = sp.SphereSection(plane=plane(1, 2, 7), radius=0.5,
                               center=-np.sqrt(3) / 2 * IM[4])
    report = sp.analyze_small_sphere(section)
    assert report.is_slant
    assert report.classification == "totally_real"
    assert report.angle_rad == pytest.approx(np.pi / 2, abs=1e-12)


def test_small_sphere_wrong_center_not_slant():
    section = sp.SphereSection(plane=plane(1, 2, 7), radius=0.5,
                               center=np.sqrt(3) / 2 * IM[5])
    report = sp.analyze_small_sphere(section)
    assert not report.is_slant
    assert report.classification == "not_slant"
    assert report.spread > 0.01


def test_small_sphere_correct_center_angle(rng):
    for _ in range(25):
        p = ca.random_plane(rng)
        if ca.phi_of_plane(p) > 0.99:
            continue
        r = rng.uniform(0.1, 0.9)
        center = sp.slant_center(p, r)[int(rng.integers(0, 2))]
        report = sp.analyze_small_sphere(sp.SphereSection(plane=p, radius=r, center=center))
        assert report.is_slant
        assert report.angle_rad == pytest.approx(
            np.arccos(r * ca.phi_of_plane(p)), abs=1e-9
        )


def test_radius_one_routes_to_great_sphere():
    section = sp.SphereSection(plane=plane(1, 2, 3), radius=1.0, center=np.zeros(7))
    report = sp.analyze_small_sphere(section)
    assert report.classification == "almost_complex"


def test_section_validation():
    with pytest.raises(ValueError, match="unit sphere"):
        sp.SphereSection(plane=plane(1, 2, 3), radius=0.5, center=IM[7])
    with pytest.raises(ValueError, match="orthogonal"):
        sp.SphereSection(plane=plane(1, 2, 3), radius=0.5,
                         center=np.sqrt(3) / 2 * IM[3])
    with pytest.raises(ValueError, match="radius"):
        sp.SphereSection(plane=plane(1, 2, 3), radius=1.5, center=np.zeros(7))


def test_automorphism_covariance(rng):
    p = ca.canonical_plane(0.6)
    r = 0.7
    center = sp.slant_center(p, r)[0]
    section = sp.SphereSection(plane=p, radius=r, center=center)
    g = g2.random_automorphism(rng)
    moved = sp.SphereSection(
        plane=ca.Plane3(frame=g.apply(p.frame)), radius=r, center=g.apply(center)
    )
    rep1 = sp.analyze_small_sphere(section)
    rep2 = sp.analyze_small_sphere(moved)
    assert rep1.classification == rep2.classification
    assert rep1.angle_rad == pytest.approx(rep2.angle_rad, abs=1e-10)


def test_fibonacci_sphere_deterministic_and_unit():
    a = sp.fibonacci_sphere(64)
    b = sp.fibonacci_sphere(64)
    np.testing.assert_array_equal(a, b)
    np.testing.assert_allclose(np.linalg.norm(a, axis=1), 1.0, atol=1e-14)


def test_report_json_schema():
    report = sp.analyze_great_sphere(plane(1, 2, 3))
    d = report.to_json_dict()
    assert set(d) == {"is_slant", "classification", "angle_rad", "cos_angle", "spread",
                      "n_samples"}
