import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qhspace.numkit import (
    HermitianityError,
    NumericalRankError,
    OrthonormalBasis,
    dagger,
    kron,
    max_residual,
    phase_fix,
    psd_check,
    solution_basis,
)

complex_vectors = st.lists(
    st.tuples(st.floats(-10, 10), st.floats(-10, 10)), min_size=1, max_size=8
).map(lambda pairs: np.array([complex(a, b) for a, b in pairs]))


@given(complex_vectors)
@settings(max_examples=50, deadline=None)
def test_phase_fix_idempotent_and_norm_preserving(v):
    w = phase_fix(v)
    assert np.allclose(np.abs(w), np.abs(v))
    assert np.allclose(phase_fix(w), w)
    if np.max(np.abs(v)) > 0:
        j = int(np.argmax(np.abs(w)))
        assert w[j].real > 0 and abs(w[j].imag) < 1e-12 * max(1.0, abs(w[j]))


@given(complex_vectors, st.floats(0.1, 3.0), st.floats(0, 2 * np.pi))
@settings(max_examples=50, deadline=None)
def test_phase_fix_gauge_independent(v, r, t):
    if np.max(np.abs(v)) == 0:
        return
    mags = np.abs(v)
    top = np.sort(mags)[::-1]
    # skip near-ties: the winning coordinate may switch under rounding
    if len(top) > 1 and top[0] - top[1] < 1e-6 * (1 + top[0]):
        return
    w = phase_fix(v * r * np.exp(1j * t))
    assert np.allclose(w, r * phase_fix(v), atol=1e-8)


def test_solution_basis_empty_constraints_is_standard_basis():
    basis = solution_basis([], 4)
    assert len(basis) == 4
    assert np.array_equal(basis.matrix(), np.eye(4))


def test_solution_basis_kernel():
    a = np.array([[1.0, 1.0, 0.0], [0.0, 0.0, 1.0]])
    basis = solution_basis([lambda v: a @ v], 3)
    assert len(basis) == 1
    v = basis.vectors[0]
    assert max_residual(a @ v, np.zeros(2)) < 1e-12


def test_solution_basis_zero_map_full_kernel():
    basis = solution_basis([lambda v: np.zeros(2)], 3)
    assert len(basis) == 3


def test_solution_basis_threshold_cluster_raises():
    a = np.diag([1.0, 5e-9, 1e-15])
    with pytest.raises(NumericalRankError):
        solution_basis([lambda v: a @ v], 3, tol=1e-9)


def test_psd_check():
    ok, lo = psd_check(np.array([[2.0, 0], [0, 1.0]]))
    assert ok and lo == pytest.approx(1.0)
    ok, lo = psd_check(np.array([[1.0, 0], [0, -1.0]]))
    assert not ok and lo == pytest.approx(-1.0)
    with pytest.raises(HermitianityError):
        psd_check(np.array([[0.0, 1.0], [0.0, 0.0]]))


def test_kron_index_convention():
    a = np.diag([1.0, 2.0])
    b = np.diag([3.0, 5.0])
    k = kron(a, b)
    assert k[1 * 2 + 0, 1 * 2 + 0] == pytest.approx(2.0 * 3.0)


def test_dagger():
    m = np.array([[1 + 2j, 3.0], [0.0, 4j]])
    assert max_residual(dagger(dagger(m)), m) == 0.0


def test_orthonormal_basis_matrix_shape():
    b = OrthonormalBasis(3, ())
    assert b.matrix().shape == (3, 0)
