"""Dense complex linear-algebra kernel shared by every other module.

All morphisms are plain ``numpy`` arrays of ``complex128``.  The one piece of
policy that lives here is the deterministic phase convention for computed
bases: every downstream structure constant depends on the basis choice, so it
has to be canonical and reproducible bit-for-bit.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

DEFAULT_TOL = 1e-9


class NumericalRankError(Exception):
    """Singular values cluster at the rank-decision threshold."""


class HermitianityError(Exception):
    """Matrix expected Hermitian is not, beyond tolerance."""


def as_matrix(a) -> np.ndarray:
    m = np.asarray(a, dtype=np.complex128)
    if m.ndim != 2:
        raise ValueError(f"expected a matrix, got ndim={m.ndim}")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix has non-finite entries")
    return m


def kron(a, b) -> np.ndarray:
    """Kronecker product with the (i, j) -> i*dim(b)+j index convention."""
    return np.kron(as_matrix(a), as_matrix(b))


def dagger(a) -> np.ndarray:
    return np.conj(np.asarray(a)).T


def phase_fix(v: np.ndarray) -> np.ndarray:
    """Rotate a vector so its largest-modulus coordinate is real positive.

    Ties are broken by lowest index.  Zero vectors are returned unchanged.
    """
    flat = v.ravel()
    mags = np.abs(flat)
    j = int(np.argmax(mags))
    if mags[j] == 0.0:
        return v
    # rotate by the argument rather than dividing by the modulus: the
    # division overflows for subnormal coordinates
    phase = np.exp(-1j * np.angle(flat[j]))
    return v * phase


@dataclass(frozen=True)
class OrthonormalBasis:
    """Orthonormal column vectors of a subspace of C^ambient_dim."""

    ambient_dim: int
    vectors: tuple[np.ndarray, ...]
    tolerance: float = DEFAULT_TOL

    def __len__(self) -> int:
        return len(self.vectors)

    def matrix(self) -> np.ndarray:
        """Basis as the columns of an ambient_dim x len(self) matrix."""
        if not self.vectors:
            return np.zeros((self.ambient_dim, 0), dtype=np.complex128)
        return np.column_stack([v.ravel() for v in self.vectors])


def solution_basis(constraints, dim: int, tol: float = DEFAULT_TOL) -> OrthonormalBasis:
    """Orthonormal basis of the joint kernel of linear maps on C^dim.

    ``constraints`` is a sequence of callables sending a length-``dim`` vector
    to a residual vector; the joint kernel is extracted from the SVD of the
    stacked constraint matrix.  An empty constraint list yields the standard
    basis.  Rank is decided by singular values above ``tol`` times the largest
    one; a cluster of singular values within a factor 10 of the threshold is
    reported as ill-conditioned input.
    """
    constraints = list(constraints)
    if not constraints:
        eye = np.eye(dim, dtype=np.complex128)
        return OrthonormalBasis(dim, tuple(eye[:, j].copy() for j in range(dim)), tol)

    rows = []
    eye = np.eye(dim, dtype=np.complex128)
    for lin in constraints:
        cols = [np.asarray(lin(eye[:, j]), dtype=np.complex128).ravel() for j in range(dim)]
        rows.append(np.column_stack(cols))
    stacked = np.vstack(rows)

    _, svals, vh = np.linalg.svd(stacked)
    # floor the cutoff at tol itself so an all-zero constraint matrix is
    # recognized as rank 0 instead of rank decided by roundoff noise
    cutoff = tol * max(1.0, svals[0]) if svals.size else 0.0
    if svals.size:
        near = svals[(svals > cutoff / 10.0) & (svals < cutoff * 10.0)]
        if near.size:
            raise NumericalRankError(
                f"singular values {near} cluster at threshold {cutoff:.3e}"
            )
    rank = int(np.sum(svals > cutoff)) if svals.size else 0
    kernel = vh[rank:, :].conj()  # rows span the kernel
    vectors = tuple(phase_fix(kernel[j, :].copy()) for j in range(kernel.shape[0]))
    return OrthonormalBasis(dim, vectors, tol)


def psd_check(g, tol: float = DEFAULT_TOL) -> tuple[bool, float]:
    """Check positive semidefiniteness of a Hermitian matrix.

    Returns ``(is_psd, min_eigenvalue)``; raises if ``g`` is not Hermitian
    within ``tol`` (relative to its largest entry).
    """
    m = as_matrix(g)
    if m.shape[0] != m.shape[1]:
        raise ValueError("psd_check expects a square matrix")
    scale = max(1.0, float(np.max(np.abs(m))) if m.size else 1.0)
    asym = float(np.max(np.abs(m - dagger(m)))) if m.size else 0.0
    if asym > tol * scale:
        raise HermitianityError(f"max asymmetry {asym:.3e} exceeds tolerance")
    if m.size == 0:
        return True, 0.0
    evals = np.linalg.eigvalsh((m + dagger(m)) / 2.0)
    lo = float(evals[0])
    return lo >= -tol * scale, lo


def max_residual(a, b) -> float:
    """Max-norm distance between two arrays (broadcast-compatible)."""
    return float(np.max(np.abs(np.asarray(a) - np.asarray(b)))) if np.asarray(a).size else 0.0
