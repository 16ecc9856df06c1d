import numpy as np
import pytest

from qhspace.numkit import max_residual
from qhspace.reconstruct import (
    ReconstructionError,
    algebra_map,
    eigenvector_test,
    gauge_transform,
    restriction_morphism,
    validate_morphism,
    verify_algebra_map,
)


@pytest.fixture(scope="module")
def s3_restriction(s3_modules):
    return restriction_morphism(s3_modules["order2"], s3_modules["trivial"])


def test_restriction_morphism_validates(s3_restriction):
    cert = validate_morphism(s3_restriction)
    assert cert.passed, cert.to_text()


def test_restriction_fdims(s3_restriction):
    # both irreps of the order-2 subgroup become trivial once restricted
    assert s3_restriction.fdims.tolist() == [[1, 1]]


def test_algebra_map_is_unital_star_hom(s3_restriction):
    cert = verify_algebra_map(s3_restriction)
    assert cert.passed, cert.to_text()


def test_algebra_map_image_dimension(s3_restriction):
    th = algebra_map(s3_restriction)
    assert th.shape == (6, 3)
    assert np.linalg.matrix_rank(th) == 3


def test_eigenvector_residual_exact_zero(s3_restriction, s3_cat):
    for a in s3_cat.labels:
        assert eigenvector_test(s3_restriction, a) == 0.0


def test_perron_eigenvector_of_action_matrix(s3_restriction, s3_cat):
    # the std-label action matrix [[1,1],[1,1]] has eigenvector (1,1) at 2
    two = [a for a in s3_cat.labels if s3_cat.dim(a) == 2][0]
    mx = s3_restriction.source.dims[two]
    fd = s3_restriction.fdims
    assert mx.tolist() == [[1, 1], [1, 1]]
    assert np.array_equal(fd @ mx, 2 * fd)


def test_gauge_transform_preserves_algebra_map(s3_restriction):
    rng = np.random.default_rng(3)
    unitaries = {}
    jy, jx = s3_restriction.fdims.shape
    for p in range(jy):
        for r in range(jx):
            if (p, r) == (s3_restriction.y_base, s3_restriction.x_base):
                continue
            d = int(s3_restriction.fdims[p, r])
            if d == 0:
                continue
            z = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
            q, _ = np.linalg.qr(z)
            unitaries[(p, r)] = q
    mor2 = gauge_transform(s3_restriction, unitaries)
    assert validate_morphism(mor2).passed
    assert np.array_equal(algebra_map(s3_restriction), algebra_map(mor2))


def test_gauge_must_fix_base_block(s3_restriction):
    key = (s3_restriction.y_base, s3_restriction.x_base)
    with pytest.raises(ReconstructionError):
        gauge_transform(s3_restriction, {key: np.array([[1j]])})


def test_restriction_requires_nesting(s3_modules):
    with pytest.raises(ReconstructionError):
        restriction_morphism(s3_modules["order2"], s3_modules["order3"])


def test_identity_restriction_is_trivial(s3_modules):
    mor = restriction_morphism(s3_modules["order2"], s3_modules["order2"])
    assert np.array_equal(mor.fdims, np.eye(2, dtype=np.int64))
    assert validate_morphism(mor).passed
    th = algebra_map(mor)
    assert th.shape == (3, 3)
    assert np.linalg.matrix_rank(th) == 3
