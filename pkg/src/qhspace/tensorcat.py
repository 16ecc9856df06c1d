"""Finite presentations of semisimple rigid tensor C*-categories.

A presentation is fully concrete: irreducible labels are integers with label 0
the tensor unit, every object carries a Hilbert space dimension, fusion is a
family of isometries into concrete tensor products, and duality is a pair of
conjugate solution vectors per label.  Two backends are provided: unitary
representations of a finite group (identity associator) and pointed fusion
data over a finite group with a 3-cocycle (scalar associator).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .certificate import Certificate
from .grouprep import FiniteGroup, IrrepTable, UnitaryRep, intertwiner_basis, tensor_rep
from .numkit import DEFAULT_TOL, dagger, kron, max_residual

UNIT_LABEL = 0


class CocycleError(Exception):
    """3-cocycle data violates the cocycle identity or normalization."""


class PresentationError(Exception):
    pass


@dataclass(frozen=True)
class PointedFusionData:
    """A finite group together with a normalized unit-modulus 3-cocycle.

    ``cocycle[g, h, k]`` is the associator scalar for the label triple
    (g, h, k).  Validation is exhaustive over all quadruples.
    """

    group: FiniteGroup
    cocycle: np.ndarray

    def __post_init__(self):
        om = np.asarray(self.cocycle, dtype=np.complex128)
        object.__setattr__(self, "cocycle", om)
        n = self.group.order
        if om.shape != (n, n, n):
            raise CocycleError(f"cocycle shape {om.shape} does not match group order {n}")
        if np.max(np.abs(np.abs(om) - 1.0)) > 1e-12:
            raise CocycleError("cocycle values must be unit modulus")
        e = self.group.identity
        for g in range(n):
            for h in range(n):
                for sl in ((e, g, h), (g, e, h), (g, h, e)):
                    if abs(om[sl] - 1.0) > 1e-12:
                        raise CocycleError(f"cocycle not normalized at {sl}")
        mul = self.group.mul
        for g in range(n):
            for h in range(n):
                for k in range(n):
                    for l in range(n):
                        lhs = om[h, k, l] * om[g, mul(h, k), l] * om[g, h, k]
                        rhs = om[mul(g, h), k, l] * om[g, h, mul(k, l)]
                        if abs(lhs - rhs) > 1e-10:
                            raise CocycleError(
                                f"cocycle identity fails at quadruple ({g},{h},{k},{l})"
                            )


def standard_cyclic_cocycle(n: int) -> PointedFusionData:
    """Order-n cocycle representative on the cyclic group Z_n.

    omega(a, b, c) = exp(2*pi*i * a * (b + c - ((b+c) mod n)) / n**2); the
    middle factor is n times the carry bit of b + c.
    """
    from .grouprep import cyclic_group

    group = cyclic_group(n)
    idx = np.arange(n)
    carry = idx[:, None] + idx[None, :] - (idx[:, None] + idx[None, :]) % n
    om = np.exp(2j * np.pi * idx[:, None, None] * carry[None, :, :] / n**2)
    return PointedFusionData(group, om)


@dataclass
class CategoryPresentation:
    """All data of the category in fixed bases.

    ``fusion[(a, b)]`` maps each channel label c to a tuple of isometries
    iota^c_{ab,k}, each a (dim_a*dim_b) x dim_c matrix with iota^t iota = id.
    ``conj_solutions[a]`` is the pair (R_a, Rbar_a) of column vectors solving
    the two snake identities; they may be rescaled by users, so derived
    quantities that must not depend on the scaling recompute canonical ones.
    """

    kind: str  # "group" or "pointed"
    obj_dim: tuple[int, ...]
    dual_map: tuple[int, ...]
    qdim: tuple[float, ...]
    fusion: dict[tuple[int, int], dict[int, tuple[np.ndarray, ...]]]
    conj_solutions: dict[int, tuple[np.ndarray, np.ndarray]] = field(default_factory=dict)
    reps: tuple[UnitaryRep, ...] | None = None  # group backend only
    pointed: PointedFusionData | None = None  # pointed backend only

    def __post_init__(self):
        if not self.conj_solutions:
            self.conj_solutions = {a: self.canonical_conjugates(a) for a in self.labels}

    @property
    def labels(self) -> range:
        return range(len(self.obj_dim))

    def dim(self, a: int) -> int:
        return self.obj_dim[a]

    def channels(self, a: int, b: int) -> tuple[int, ...]:
        return tuple(sorted(self.fusion[(a, b)].keys()))

    def mult(self, a: int, b: int, c: int) -> int:
        return len(self.fusion[(a, b)].get(c, ()))

    def isometries(self, a: int, b: int, c: int) -> tuple[np.ndarray, ...]:
        return self.fusion[(a, b)].get(c, ())

    def assoc_scalar(self, a: int, b: int, c: int) -> complex:
        """Scalar of the associator (a x b) x c -> a x (b x c)."""
        if self.pointed is not None:
            return complex(self.pointed.cocycle[a, b, c])
        return 1.0

    def associator(self, a: int, b: int, c: int) -> np.ndarray:
        d = self.obj_dim[a] * self.obj_dim[b] * self.obj_dim[c]
        return self.assoc_scalar(a, b, c) * np.eye(d, dtype=np.complex128)

    def canonical_conjugates(self, a: int) -> tuple[np.ndarray, np.ndarray]:
        """Deterministic normalized conjugate pair computed from fusion data.

        R_a is sqrt(qdim) times the unique unit fusion isometry into the
        trivial channel of abar x a; Rbar_a is the unique solution of the
        first snake identity, solved with the associator in place.
        """
        abar = self.dual_map[a]
        da, dbar = self.obj_dim[a], self.obj_dim[abar]
        iotas = self.isometries(abar, a, UNIT_LABEL)
        if len(iotas) != 1:
            raise PresentationError(f"trivial channel of ({abar},{a}) is not one-dimensional")
        r = np.sqrt(self.qdim[a]) * iotas[0].reshape(dbar * da, 1)
        # first snake: (Rbar^* x id_a) assoc(a,abar,a)^-1 (id_a x R) = id_a,
        # linear in conj(Rbar) with a unique solution
        assoc_inv = np.conj(self.assoc_scalar(a, abar, a)) * np.eye(
            da * dbar * da, dtype=np.complex128
        )
        b = assoc_inv @ kron(np.eye(da), r)  # (da*dbar*da) x da, index (k,m,j) x i
        b4 = b.reshape(da, dbar, da, da)
        m = b4.transpose(3, 2, 0, 1).reshape(da * da, da * dbar)
        rhs = np.eye(da, dtype=np.complex128).ravel()
        x, _, _, _ = np.linalg.lstsq(m, rhs, rcond=None)
        rbar = np.conj(x).reshape(da * dbar, 1)
        return r, rbar

    def snake_residuals(self, a: int, pair: tuple[np.ndarray, np.ndarray] | None = None) -> tuple[float, float]:
        """Residuals of the two conjugate identities for label a."""
        abar = self.dual_map[a]
        da, dbar = self.obj_dim[a], self.obj_dim[abar]
        r, rbar = self.conj_solutions[a] if pair is None else pair
        eye_a = np.eye(da, dtype=np.complex128)
        eye_bar = np.eye(dbar, dtype=np.complex128)
        s1 = (
            kron(dagger(rbar), eye_a)
            @ (np.conj(self.assoc_scalar(a, abar, a)) * kron(eye_a, r))
        )
        s2 = (
            kron(dagger(r), eye_bar)
            @ (np.conj(self.assoc_scalar(abar, a, abar)) * kron(eye_bar, rbar))
        )
        return max_residual(s1, eye_a), max_residual(s2, eye_bar)

    def with_rescaled_conjugates(self, scale: complex) -> "CategoryPresentation":
        """Copy with every conjugate pair (R, Rbar) -> (s R, conj(s)^-1 Rbar)."""
        s = complex(scale)
        if s == 0:
            raise ValueError("conjugate rescaling must be nonzero")
        new_conj = {
            a: (s * r, (1.0 / np.conj(s)) * rbar) for a, (r, rbar) in self.conj_solutions.items()
        }
        return CategoryPresentation(
            self.kind, self.obj_dim, self.dual_map, self.qdim, self.fusion,
            new_conj, self.reps, self.pointed,
        )

    @cached_property
    def total_dim(self) -> float:
        return float(sum(q * q for q in self.qdim))


def from_group(table: IrrepTable, tol: float = DEFAULT_TOL) -> CategoryPresentation:
    """Representation category of a finite group as a presentation.

    Fusion isometries are orthonormal intertwiner bases scaled by
    sqrt(dim) of the channel so each is an isometry; tensoring with the
    trivial label is represented by exact identity matrices.
    """
    reps = table.irreps
    n = len(reps)
    dims = tuple(r.dim for r in reps)
    fusion: dict[tuple[int, int], dict[int, tuple[np.ndarray, ...]]] = {}
    for a in range(n):
        for b in range(n):
            if a == UNIT_LABEL:
                fusion[(a, b)] = {b: (np.eye(dims[b], dtype=np.complex128),)}
                continue
            if b == UNIT_LABEL:
                fusion[(a, b)] = {a: (np.eye(dims[a], dtype=np.complex128),)}
                continue
            prod = tensor_rep(reps[a], reps[b])
            by_channel: dict[int, tuple[np.ndarray, ...]] = {}
            for c in range(n):
                basis = intertwiner_basis(reps[c], prod, tol)
                if len(basis):
                    scale = np.sqrt(dims[c])
                    by_channel[c] = tuple(scale * t for t in basis.vectors)
            fusion[(a, b)] = by_channel
    return CategoryPresentation(
        kind="group",
        obj_dim=dims,
        dual_map=table.dual_map,
        qdim=tuple(float(d) for d in dims),
        fusion=fusion,
        reps=reps,
    )


def from_pointed(data: PointedFusionData) -> CategoryPresentation:
    """Pointed category: labels are group elements, fusion follows the group law."""
    group = data.group
    if group.identity != UNIT_LABEL:
        raise PresentationError("pointed backend expects the identity at index 0")
    n = group.order
    one = np.ones((1, 1), dtype=np.complex128)
    fusion = {(g, h): {group.mul(g, h): (one.copy(),)} for g in range(n) for h in range(n)}
    dual = tuple(int(group.inv(g)) for g in range(n))
    return CategoryPresentation(
        kind="pointed",
        obj_dim=(1,) * n,
        dual_map=dual,
        qdim=(1.0,) * n,
        fusion=fusion,
        pointed=data,
    )


def frobenius_on_category(cat: CategoryPresentation, a: int, b: int, c: int):
    """Linear bijection Mor(u_a x u_b, u_c) <-> Mor(u_b, u_abar x u_c).

    Returns (forward, backward) callables; their round-trip is the identity
    by the conjugate identities.  Morphisms are matrices mapping the source
    space to the target space in the fixed tensor-product bases.
    """
    abar = cat.dual_map[a]
    da, db, dc = cat.dim(a), cat.dim(b), cat.dim(c)
    dbar = cat.dim(abar)
    r, rbar = cat.conj_solutions[a]
    eye_b = np.eye(db, dtype=np.complex128)
    eye_c = np.eye(dc, dtype=np.complex128)
    eye_a = np.eye(da, dtype=np.complex128)
    eye_bar = np.eye(dbar, dtype=np.complex128)
    alpha = cat.assoc_scalar(abar, a, b)
    beta_inv = np.conj(cat.assoc_scalar(a, abar, c))

    def forward(f: np.ndarray) -> np.ndarray:
        f = np.asarray(f, dtype=np.complex128).reshape(dc, da * db)
        return kron(eye_bar, f) @ (alpha * kron(r, eye_b))

    def backward(g: np.ndarray) -> np.ndarray:
        g = np.asarray(g, dtype=np.complex128).reshape(dbar * dc, db)
        return kron(dagger(rbar), eye_c) @ (beta_inv * kron(eye_a, g))

    return forward, backward


def _recoupling_residual(cat: CategoryPresentation, a: int, b: int, c: int) -> float:
    """Unitarity defect of the change of basis between the two fusion paths.

    For each total channel e, the compositions through a x b and through
    b x c both give bases of the same morphism space; the matrix of inner
    products between them must be unitary.
    """
    worst = 0.0
    dims = cat.obj_dim
    eye_c = np.eye(dims[c], dtype=np.complex128)
    eye_a = np.eye(dims[a], dtype=np.complex128)
    alpha_inv = np.conj(cat.assoc_scalar(a, b, c))
    totals = set()
    for d in cat.channels(a, b):
        totals.update(cat.channels(d, c))
    for e in sorted(totals):
        left = []
        for d in cat.channels(a, b):
            for iota_ab in cat.isometries(a, b, d):
                for iota_dc in cat.isometries(d, c, e):
                    left.append(kron(iota_ab, eye_c) @ iota_dc)
        right = []
        for dd in cat.channels(b, c):
            for iota_bc in cat.isometries(b, c, dd):
                for iota_ad in cat.isometries(a, dd, e):
                    right.append(alpha_inv * (kron(eye_a, iota_bc) @ iota_ad))
        if len(left) != len(right):
            return float("inf")
        if not left:
            continue
        de = dims[e]
        w = np.empty((len(left), len(right)), dtype=np.complex128)
        for i, x in enumerate(left):
            for j, y in enumerate(right):
                w[i, j] = np.trace(dagger(x) @ y) / de
        worst = max(worst, max_residual(dagger(w) @ w, np.eye(len(left))))
    return worst


def verify_presentation(cat: CategoryPresentation, tol: float = DEFAULT_TOL) -> Certificate:
    """Check every structural invariant of the presentation."""
    cert = Certificate(subject=f"category[{cat.kind}]", tolerance=tol)
    dims = cat.obj_dim
    n = len(dims)

    cert.add_flag("unit_dim", "tensor unit is one-dimensional", dims[UNIT_LABEL] == 1)
    unit_res = 0.0
    unit_ok = True
    for b in cat.labels:
        for key, want in (((UNIT_LABEL, b), b), ((b, UNIT_LABEL), b)):
            chans = cat.channels(*key)
            if chans != (want,):
                unit_ok = False
                continue
            unit_res = max(unit_res, max_residual(cat.isometries(*key, want)[0], np.eye(dims[b])))
    cert.add_flag("unit_channels", "tensoring with the unit is the identity channel", unit_ok)
    cert.add("unit_isometries", "unit fusion isometries equal identity matrices", unit_res)

    dual_ok = all(
        cat.mult(a, b, UNIT_LABEL) == (1 if b == cat.dual_map[a] else 0)
        for a in cat.labels
        for b in cat.labels
    )
    cert.add_flag("dual_channels", "trivial channel multiplicity is delta(b, dual(a))", dual_ok)

    count_ok = all(
        sum(cat.mult(a, b, c) * dims[c] for c in cat.channels(a, b)) == dims[a] * dims[b]
        for a in cat.labels
        for b in cat.labels
    )
    cert.add_flag("fusion_dim_count", "channel dimensions sum to the product dimension", count_ok)

    ortho = 0.0
    complete = 0.0
    for a in cat.labels:
        for b in cat.labels:
            cols = [iota for c in cat.channels(a, b) for iota in cat.isometries(a, b, c)]
            m = np.hstack(cols)
            eye = np.eye(m.shape[1], dtype=np.complex128)
            ortho = max(ortho, max_residual(dagger(m) @ m, eye))
            complete = max(complete, max_residual(m @ dagger(m), np.eye(dims[a] * dims[b])))
    cert.add("isometry_orthogonality", "fusion isometries have orthogonal ranges", ortho)
    cert.add("isometry_completeness", "fusion isometry ranges sum to the identity", complete)

    if cat.kind == "group" and cat.reps is not None:
        equi = 0.0
        group = cat.reps[0].group
        for a in cat.labels:
            for b in cat.labels:
                for c in cat.channels(a, b):
                    for iota in cat.isometries(a, b, c):
                        for g in range(group.order):
                            big = kron(cat.reps[a].matrix(g), cat.reps[b].matrix(g))
                            equi = max(equi, max_residual(big @ iota, iota @ cat.reps[c].matrix(g)))
        cert.add("fusion_equivariance", "fusion isometries intertwine the group action", equi)
    if cat.kind == "pointed" and cat.pointed is not None:
        law_ok = all(
            cat.channels(g, h) == (cat.pointed.group.mul(g, h),)
            for g in cat.labels
            for h in cat.labels
        )
        cert.add_flag("pointed_group_law", "fusion channels follow the group law", law_ok)

    snake = 0.0
    norm_res = 0.0
    member = 0.0
    for a in cat.labels:
        s1, s2 = cat.snake_residuals(a)
        snake = max(snake, s1, s2)
        r, rbar = cat.conj_solutions[a]
        norm_res = max(
            norm_res, abs(float(np.linalg.norm(r)) * float(np.linalg.norm(rbar)) - cat.qdim[a])
        )
        abar = cat.dual_map[a]
        v = cat.isometries(abar, a, UNIT_LABEL)[0].reshape(-1, 1)
        w = cat.isometries(a, abar, UNIT_LABEL)[0].reshape(-1, 1)
        member = max(
            member,
            max_residual(r, v @ (dagger(v) @ r)) / max(1.0, float(np.linalg.norm(r))),
            max_residual(rbar, w @ (dagger(w) @ rbar)) / max(1.0, float(np.linalg.norm(rbar))),
        )
    cert.add("conjugate_snakes", "both conjugate identities hold for every label", snake)
    cert.add("conjugate_normalization", "norm(R)*norm(Rbar) equals the quantum dimension", norm_res)
    cert.add("conjugate_membership", "conjugate vectors lie in the trivial fusion channel", member)

    qdim_ok = all(q >= 1.0 - tol for q in cat.qdim)
    cert.add_flag("qdim_bound", "quantum dimensions are at least one", qdim_ok)
    if cat.kind == "group":
        cert.add_flag(
            "qdim_integer",
            "group backend quantum dimensions equal the space dimensions",
            all(q == float(d) for q, d in zip(cat.qdim, dims)),
        )

    recoup = 0.0
    for a in cat.labels:
        for b in cat.labels:
            for c in cat.labels:
                recoup = max(recoup, _recoupling_residual(cat, a, b, c))
    cert.add("recoupling_unitarity", "the two iterated-fusion bases are unitarily related", recoup)
    return cert
