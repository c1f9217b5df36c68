import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nksphere import octonion as oc

from reference import e, oct_associator, oct_mul

E = [oc.basis(k) for k in range(8)]
IM = [None] + [oc.imaginary_basis(k) for k in range(1, 8)]


def test_all_basis_products_match_oracle():
    for i in range(8):
        for j in range(8):
            np.testing.assert_array_equal(oc.multiply(E[i], E[j]), oct_mul(e(i), e(j)))


def test_basis_product_examples():
    np.testing.assert_array_equal(oc.multiply(E[1], E[2]), E[3])
    np.testing.assert_array_equal(oc.multiply(E[4], E[7]), E[3])
    np.testing.assert_array_equal(oc.multiply(E[1], E[5]), -E[4])


def test_identity_element(rng):
    x = rng.normal(size=(50, 8))
    np.testing.assert_allclose(oc.multiply(E[0], x), x, atol=1e-15)
    np.testing.assert_allclose(oc.multiply(x, E[0]), x, atol=1e-15)


def test_integer_products_stay_integer():
    x = np.array([1, 2, 3, 4, 5, 6, 7, 8], dtype=np.int64)
    y = np.array([8, -7, 6, -5, 4, -3, 2, -1], dtype=np.int64)
    prod = oc.multiply(x, y)
    assert prod.dtype == np.int64
    np.testing.assert_array_equal(prod, oct_mul(x, y).astype(np.int64))


def test_conjugate():
    np.testing.assert_array_equal(oc.conjugate(E[0]), E[0])
    np.testing.assert_array_equal(oc.conjugate(E[3]), -E[3])


def test_conjugate_involution(rng):
    x = rng.normal(size=(100, 8))
    np.testing.assert_array_equal(oc.conjugate(oc.conjugate(x)), x)


def test_inner_orthonormal_basis():
    assert oc.inner(E[2], E[2]) == 1.0
    assert oc.inner(E[1], E[5]) == 0.0


def test_inner_multiplicativity(rng):
    x, y, z = rng.normal(size=(3, 8))
    lhs = oc.inner(oc.multiply(x, y), oc.multiply(x, z))
    assert lhs == pytest.approx(oc.inner(x, x) * oc.inner(y, z), abs=1e-12)


def test_cross_examples():
    np.testing.assert_allclose(oc.cross(IM[1], IM[2]), IM[3], atol=0)
    np.testing.assert_allclose(oc.cross(IM[4], IM[5]), IM[1], atol=0)


def test_cross_antisymmetry(rng):
    x = rng.normal(size=(40, 7))
    np.testing.assert_allclose(oc.cross(x, x), 0.0, atol=1e-12)
    y = rng.normal(size=(40, 7))
    np.testing.assert_allclose(oc.cross(x, y), -oc.cross(y, x), atol=1e-12)


def test_cross_is_antisymmetrized_product(rng):
    x = rng.normal(size=(40, 7))
    y = rng.normal(size=(40, 7))
    xe, ye = oc.embed_imaginary(x), oc.embed_imaginary(y)
    half = 0.5 * (oc.multiply(xe, ye) - oc.multiply(ye, xe))
    np.testing.assert_allclose(oc.embed_imaginary(oc.cross(x, y)), half, atol=1e-12)


def test_associator_examples():
    np.testing.assert_array_equal(oc.associator(E[1], E[2], E[3]), np.zeros(8))
    expected = oct_associator(e(1), e(2), e(4))
    np.testing.assert_array_equal(oc.associator(E[1], E[2], E[4]), expected)
    np.testing.assert_array_equal(expected, 2.0 * E[7])


def test_associator_alternativity(rng):
    x, y = rng.normal(size=(2, 8))
    np.testing.assert_allclose(oc.associator(x, x, y), 0.0, atol=1e-12)
    np.testing.assert_allclose(oc.associator(x, y, y), 0.0, atol=1e-12)


def test_associator_antisymmetry_on_imaginary(rng):
    x, y, z = (oc.embed_imaginary(v) for v in rng.normal(size=(3, 7)))
    a = oc.associator(x, y, z)
    np.testing.assert_allclose(oc.associator(y, x, z), -a, atol=1e-12)
    np.testing.assert_allclose(oc.associator(x, z, y), -a, atol=1e-12)


def test_assoc_form_examples():
    assert oc.assoc_form(IM[1], IM[2], IM[3]) == 1.0
    assert oc.assoc_form(IM[1], IM[2], IM[4]) == 0.0


def test_assoc_form_degenerate(rng):
    x, y = rng.normal(size=(2, 7))
    assert oc.assoc_form(x, x, y) == pytest.approx(0.0, abs=1e-12)


def test_j_structure_examples():
    np.testing.assert_allclose(oc.j_structure(IM[1], IM[2]), IM[3], atol=0)
    np.testing.assert_allclose(oc.j_structure(IM[1], IM[5]), -IM[4], atol=0)
    np.testing.assert_allclose(
        oc.j_structure(IM[1], oc.j_structure(IM[1], IM[2])), -IM[2], atol=0
    )


def test_j_structure_rejects_bad_inputs():
    with pytest.raises(ValueError, match="unit"):
        oc.j_structure(2.0 * IM[1], IM[2])
    with pytest.raises(ValueError, match="tangent"):
        oc.j_structure(IM[1], IM[1])


coords = st.lists(
    st.floats(min_value=-10, max_value=10, allow_nan=False), min_size=8, max_size=8
).map(np.array)


@settings(deadline=None)
@given(coords, coords, coords)
def test_multiply_is_bilinear(x, y, z):
    lhs = oc.multiply(x, y + z)
    np.testing.assert_allclose(lhs, oc.multiply(x, y) + oc.multiply(x, z), atol=1e-9)


@settings(deadline=None)
@given(coords, coords)
def test_norm_composition(x, y):
    assert oc.norm(oc.multiply(x, y)) == pytest.approx(oc.norm(x) * oc.norm(y), abs=1e-9)


@settings(deadline=None)
@given(coords, coords)
def test_conjugation_antihomomorphism(x, y):
    lhs = oc.conjugate(oc.multiply(x, y))
    rhs = oc.multiply(oc.conjugate(y), oc.conjugate(x))
    np.testing.assert_allclose(lhs, rhs, atol=1e-9)


@settings(deadline=None)
@given(coords)
def test_x_times_conjugate_is_norm(x):
    prod = oc.multiply(x, oc.conjugate(x))
    expected = np.zeros(8)
    expected[0] = oc.inner(x, x)
    np.testing.assert_allclose(prod, expected, atol=1e-9)


def test_structure_constants_export():
    quads = oc.structure_constants()
    assert [1, 2, 3, 1] in quads
    assert [4, 7, 3, 1] in quads
    assert [1, 1, 0, -1] in quads
    # 64 nonzero products of basis pairs in total
    assert len(quads) == 64
