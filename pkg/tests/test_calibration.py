import numpy as np
import pytest

from nksphere import calibration as ca
from nksphere import g2
from nksphere import octonion as oc

from reference import e, oct_associator, oct_mul

IM = [None] + [oc.imaginary_basis(k) for k in range(1, 8)]


def plane(*indices):
    return ca.plane_from_spanning(*(IM[k] for k in indices))


def test_plane_from_spanning_orthonormal_passthrough():
    p = plane(1, 2, 3)
    np.testing.assert_allclose(p.frame, np.stack([IM[1], IM[2], IM[3]]), atol=1e-15)


def test_plane_from_spanning_gram_schmidt():
    p = ca.plane_from_spanning(IM[1], IM[1] + IM[2], IM[7])
    np.testing.assert_allclose(p.frame, np.stack([IM[1], IM[2], IM[7]]), atol=1e-14)


def test_plane_from_spanning_rejects_dependent():
    with pytest.raises(ValueError, match="singular value"):
        ca.plane_from_spanning(IM[1], 2.0 * IM[1], IM[3])


def test_phi_examples():
    assert ca.phi_of_plane(plane(1, 2, 3)) == pytest.approx(1.0, abs=1e-15)
    assert ca.phi_of_plane(plane(1, 2, 7)) == pytest.approx(0.0, abs=1e-15)
    assert ca.phi_of_plane(ca.canonical_plane(0.5)) == pytest.approx(0.5, abs=1e-15)


def test_associator_of_plane_examples():
    np.testing.assert_allclose(ca.associator_of_plane(plane(1, 2, 3)), 0.0, atol=1e-15)
    # frozen from the quaternion-pair oracle
    np.testing.assert_allclose(
        ca.associator_of_plane(plane(1, 2, 7)), oct_associator(e(1), e(2), e(7))[1:], atol=1e-15
    )
    np.testing.assert_allclose(ca.associator_of_plane(plane(1, 2, 7)), -2.0 * IM[4], atol=1e-15)
    np.testing.assert_allclose(ca.associator_of_plane(plane(1, 2, 4)), 2.0 * IM[7], atol=1e-15)


def expected_gram(phi):
    g = np.eye(7)
    for k in range(3):
        g[k, k + 3] = g[k + 3, k] = phi
    g[6, 6] = 4.0 * (1.0 - phi * phi)
    return g


def test_gram_examples():
    np.testing.assert_allclose(
        ca.gram_frame(plane(1, 2, 4)), np.diag([1, 1, 1, 1, 1, 1, 4]), atol=1e-14
    )
    np.testing.assert_allclose(ca.gram_frame(plane(1, 2, 3)), expected_gram(1.0), atol=1e-14)


def test_gram_random_plane_matches_pattern(rng):
    for _ in range(50):
        p = ca.random_plane(rng)
        np.testing.assert_allclose(
            ca.gram_frame(p), expected_gram(ca.signed_phi(p)), atol=1e-10
        )


def test_phi_associator_identity(rng):
    for _ in range(200):
        p = ca.random_plane(rng)
        phi = ca.phi_of_plane(p)
        norm2 = np.sum(ca.associator_of_plane(p) ** 2)
        assert phi * phi + 0.25 * norm2 == pytest.approx(1.0, abs=1e-10)


def test_frame_independence_of_invariants(rng):
    p = ca.random_plane(rng)
    rot = np.linalg.qr(rng.normal(size=(3, 3)))[0]
    q = ca.Plane3(frame=rot @ p.frame)
    assert ca.phi_of_plane(q) == pytest.approx(ca.phi_of_plane(p), abs=1e-12)
    a1, a2 = ca.associator_of_plane(p), ca.associator_of_plane(q)
    assert np.linalg.norm(a1) == pytest.approx(np.linalg.norm(a2), abs=1e-12)


def test_cayley_dickson_frame_example():
    frame = ca.cayley_dickson_frame(plane(1, 2, 7))
    expected = np.stack([IM[1], IM[2], IM[3], -IM[4], -IM[5], -IM[6], -IM[7]])
    np.testing.assert_allclose(frame, expected, atol=1e-14)


def test_cayley_dickson_frame_canonical_half():
    frame = ca.cayley_dickson_frame(ca.canonical_plane(0.5))
    np.testing.assert_allclose(frame[3], IM[4], atol=1e-14)


def test_cayley_dickson_frame_rejects_associative():
    with pytest.raises(ValueError, match="non-associative"):
        ca.cayley_dickson_frame(plane(2, 4, 6))


def test_cayley_dickson_frame_multiplies_like_basis(rng):
    for _ in range(25):
        p = ca.random_plane(rng)
        if ca.phi_of_plane(p) > 0.99:
            continue
        frame = ca.cayley_dickson_frame(p)
        np.testing.assert_allclose(frame @ frame.T, np.eye(7), atol=1e-10)
        for i in range(7):
            for j in range(7):
                prod = oct_mul(
                    np.concatenate([[0.0], frame[i]]), np.concatenate([[0.0], frame[j]])
                )
                expected_re = -1.0 if i == j else 0.0
                expected_im = oc.STRUCTURE_TENSOR[i + 1, j + 1, 1:].astype(float) @ frame
                assert prod[0] == pytest.approx(expected_re, abs=1e-10)
                np.testing.assert_allclose(prod[1:], expected_im, atol=1e-10)


def test_reduce_canonical_half_is_identity():
    red = ca.reduce_to_canonical(ca.canonical_plane(0.5))
    np.testing.assert_allclose(red.automorphism.matrix, np.eye(7), atol=1e-14)
    assert red.phi_value == pytest.approx(0.5, abs=1e-14)


def test_reduce_plane127():
    p = plane(1, 2, 7)
    red = ca.reduce_to_canonical(p)
    m = red.automorphism
    np.testing.assert_allclose(m.apply(IM[1]), IM[1], atol=1e-14)
    np.testing.assert_allclose(m.apply(IM[2]), IM[2], atol=1e-14)
    np.testing.assert_allclose(m.apply(-IM[4]), IM[4], atol=1e-14)
    moved = ca.Plane3(frame=m.apply(p.frame))
    assert ca.subspace_distance(moved, red.target) < 1e-10
    # canonical plane at phi = 0 spans (e1, e2, e7)
    assert ca.subspace_distance(red.target, plane(1, 2, 7)) < 1e-14


def test_reduce_associative_plane():
    red = ca.reduce_to_canonical(plane(2, 4, 6))
    moved = ca.Plane3(frame=red.automorphism.apply(plane(2, 4, 6).frame))
    assert ca.subspace_distance(moved, plane(1, 2, 3)) < 1e-10
    assert red.phi_value == 1.0


def test_reduce_random_planes_land_on_target(rng):
    for _ in range(30):
        p = ca.random_plane(rng)
        red = ca.reduce_to_canonical(p)
        assert g2.is_automorphism(red.automorphism.matrix)[1] < 1e-10
        moved = ca.Plane3(frame=red.automorphism.apply(p.frame))
        assert ca.subspace_distance(moved, red.target) < 1e-8


def test_g2_equivalent_examples():
    same, witness = ca.g2_equivalent(plane(1, 2, 3), plane(2, 4, 6))
    assert same
    moved = ca.Plane3(frame=witness.apply(plane(1, 2, 3).frame))
    assert ca.subspace_distance(moved, plane(2, 4, 6)) < 1e-8

    different, witness = ca.g2_equivalent(plane(1, 2, 3), plane(1, 2, 7))
    assert not different and witness is None

    p = ca.canonical_plane(0.25)
    same, witness = ca.g2_equivalent(p, p)
    assert same
    moved = ca.Plane3(frame=witness.apply(p.frame))
    assert ca.subspace_distance(moved, p) < 1e-8


def test_g2_invariance_of_phi(rng):
    for _ in range(30):
        p = ca.random_plane(rng)
        g = g2.random_automorphism(rng)
        moved = ca.Plane3(frame=g.apply(p.frame))
        assert ca.phi_of_plane(moved) == pytest.approx(ca.phi_of_plane(p), abs=1e-9)


def test_plane_json_roundtrip():
    p = ca.canonical_plane(0.3)
    d = p.to_json_dict()
    assert np.asarray(d["frame"]).shape == (3, 7)
    red = ca.reduce_to_canonical(p)
    j = red.to_json_dict()
    assert set(j) >= {"frame", "phi", "matrix"}
