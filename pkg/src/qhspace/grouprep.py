"""Finite groups and their unitary representations.

This is the concrete backend realizing the representation category of a
classical finite group: multiplication tables, unitary representation
matrices, intertwiner spaces via the averaging projector, and irreducible
decomposition of the regular representation.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .numkit import DEFAULT_TOL, OrthonormalBasis, dagger, kron, max_residual, solution_basis


class GroupAxiomError(Exception):
    pass


class IrrepExtractionError(Exception):
    pass


@dataclass(frozen=True)
class FiniteGroup:
    """A finite group as a Cayley table on element indices 0..order-1."""

    mult_table: np.ndarray  # order x order, int
    identity: int = 0

    def __post_init__(self):
        table = np.asarray(self.mult_table, dtype=np.int64)
        object.__setattr__(self, "mult_table", table)
        n = self.order
        if table.shape != (n, n):
            raise GroupAxiomError("multiplication table is not square")
        for i in range(n):
            if sorted(table[i, :]) != list(range(n)) or sorted(table[:, i]) != list(range(n)):
                raise GroupAxiomError(f"table is not a Latin square at row/col {i}")
            if table[self.identity, i] != i or table[i, self.identity] != i:
                raise GroupAxiomError(f"identity law fails at element {i}")
        # associativity: exhaustive up to order 256, sampled beyond
        if n <= 256:
            t = table
            for g in range(n):
                if not np.array_equal(t[t[g, :], :][:, :], t[g, t]):
                    raise GroupAxiomError(f"associativity fails involving element {g}")
        else:
            rng = np.random.default_rng(0)
            for g, h, k in rng.integers(0, n, size=(4096, 3)):
                if table[table[g, h], k] != table[g, table[h, k]]:
                    raise GroupAxiomError(f"associativity fails at ({g},{h},{k})")

    @property
    def order(self) -> int:
        return self.mult_table.shape[0]

    def mul(self, g: int, h: int) -> int:
        return int(self.mult_table[g, h])

    @cached_property
    def inverse(self) -> np.ndarray:
        inv = np.empty(self.order, dtype=np.int64)
        for g in range(self.order):
            inv[g] = int(np.where(self.mult_table[g, :] == self.identity)[0][0])
        return inv

    def inv(self, g: int) -> int:
        return int(self.inverse[g])

    @cached_property
    def conjugacy_classes(self) -> tuple[tuple[int, ...], ...]:
        """Classes sorted by their smallest element index."""
        seen = set()
        classes = []
        for g in range(self.order):
            if g in seen:
                continue
            orbit = {self.mul(self.mul(h, g), self.inv(h)) for h in range(self.order)}
            seen |= orbit
            classes.append(tuple(sorted(orbit)))
        classes.sort(key=lambda c: c[0])
        return tuple(classes)

    def close_subset(self, generators, cap: int | None = None) -> tuple[int, ...]:
        """Subgroup generated by the given element indices."""
        cap = cap or self.order
        elems = {self.identity}
        frontier = list(set(generators) | {self.identity})
        while frontier:
            g = frontier.pop()
            for h in list(elems):
                for prod in (self.mul(g, h), self.mul(h, g)):
                    if prod not in elems:
                        elems.add(prod)
                        frontier.append(prod)
            if g not in elems:
                elems.add(g)
            if len(elems) > cap:
                raise GroupAxiomError("subgroup closure exceeded parent order")
        return tuple(sorted(elems))


def cyclic_group(n: int) -> FiniteGroup:
    idx = np.arange(n)
    return FiniteGroup((idx[:, None] + idx[None, :]) % n)


def group_from_permutations(perms: list[tuple[int, ...]]) -> FiniteGroup:
    """Group of the given permutation list (must be closed); element order as given."""
    index = {p: i for i, p in enumerate(perms)}
    n = len(perms)
    table = np.empty((n, n), dtype=np.int64)
    for i, p in enumerate(perms):
        for j, q in enumerate(perms):
            comp = tuple(p[q[k]] for k in range(len(p)))
            if comp not in index:
                raise GroupAxiomError("permutation list is not closed under composition")
            table[i, j] = index[comp]
    ident = index[tuple(range(len(perms[0])))]
    if ident != 0:
        raise GroupAxiomError("identity permutation must come first")
    return FiniteGroup(table)


def symmetric_group(n: int) -> FiniteGroup:
    from itertools import permutations

    perms = sorted(permutations(range(n)))
    return group_from_permutations(list(perms))


def dihedral_group(n: int) -> FiniteGroup:
    """Dihedral group of order 2n: elements (rotation r, flip f) as r + n*f."""
    size = 2 * n
    table = np.empty((size, size), dtype=np.int64)
    for a in range(size):
        r1, f1 = a % n, a // n
        for b in range(size):
            r2, f2 = b % n, b // n
            r = (r1 - r2) % n if f1 else (r1 + r2) % n
            table[a, b] = r + n * ((f1 + f2) % 2)
    return FiniteGroup(table)


@dataclass(frozen=True)
class UnitaryRep:
    """A unitary representation given by one matrix per group element."""

    group: FiniteGroup
    matrices: tuple[np.ndarray, ...]

    @property
    def dim(self) -> int:
        return self.matrices[0].shape[0]

    def matrix(self, g: int) -> np.ndarray:
        return self.matrices[g]

    @cached_property
    def character(self) -> np.ndarray:
        return np.array([np.trace(m) for m in self.matrices])

    def validate(self, tol: float = DEFAULT_TOL) -> float:
        """Max residual over unitarity and multiplicativity checks."""
        worst = 0.0
        eye = np.eye(self.dim)
        for g, m in enumerate(self.matrices):
            worst = max(worst, max_residual(dagger(m) @ m, eye))
        for g in range(self.group.order):
            for h in range(self.group.order):
                prod = self.matrices[g] @ self.matrices[h]
                worst = max(worst, max_residual(prod, self.matrices[self.group.mul(g, h)]))
        return worst


def trivial_rep(group: FiniteGroup) -> UnitaryRep:
    one = np.ones((1, 1), dtype=np.complex128)
    return UnitaryRep(group, tuple(one for _ in range(group.order)))


def tensor_rep(u: UnitaryRep, v: UnitaryRep) -> UnitaryRep:
    if u.group is not v.group and not np.array_equal(u.group.mult_table, v.group.mult_table):
        raise ValueError("tensor product needs a common group")
    return UnitaryRep(u.group, tuple(kron(u.matrix(g), v.matrix(g)) for g in range(u.group.order)))


def direct_sum_rep(u: UnitaryRep, v: UnitaryRep) -> UnitaryRep:
    mats = []
    for g in range(u.group.order):
        m = np.zeros((u.dim + v.dim, u.dim + v.dim), dtype=np.complex128)
        m[: u.dim, : u.dim] = u.matrix(g)
        m[u.dim :, u.dim :] = v.matrix(g)
        mats.append(m)
    return UnitaryRep(u.group, tuple(mats))


def conjugate_rep(u: UnitaryRep) -> UnitaryRep:
    return UnitaryRep(u.group, tuple(np.conj(m) for m in u.matrices))


def regular_rep(group: FiniteGroup) -> UnitaryRep:
    n = group.order
    mats = []
    for g in range(n):
        m = np.zeros((n, n), dtype=np.complex128)
        for h in range(n):
            m[group.mul(g, h), h] = 1.0
        mats.append(m)
    return UnitaryRep(group, tuple(mats))


def intertwiner_basis(u: UnitaryRep, v: UnitaryRep, tol: float = DEFAULT_TOL) -> OrthonormalBasis:
    """Orthonormal basis of {T : T u(g) = v(g) T for all g}.

    Computed by the averaging projector T -> (1/|G|) sum_g v(g) T u(g)^-1
    followed by kernel extraction of (P - id).
    """
    group = u.group
    n = group.order
    du, dv = u.dim, v.dim

    def avg_minus_id(vec):
        t = vec.reshape(dv, du)
        acc = np.zeros_like(t)
        for g in range(n):
            acc += v.matrix(g) @ t @ u.matrix(group.inv(g))
        return (acc / n - t).ravel()

    basis = solution_basis([avg_minus_id], du * dv, tol)
    return OrthonormalBasis(du * dv, tuple(w.reshape(dv, du) for w in basis.vectors), tol)


@dataclass(frozen=True)
class IrrepTable:
    """A complete set of pairwise non-isomorphic irreducibles.

    Label 0 is always the trivial representation; ``dual_map`` pairs each
    label with the one carrying the conjugate character.
    """

    group: FiniteGroup
    irreps: tuple[UnitaryRep, ...]
    dual_map: tuple[int, ...]

    trivial_label = 0

    @property
    def labels(self) -> range:
        return range(len(self.irreps))

    def dim(self, a: int) -> int:
        return self.irreps[a].dim

    def validate(self, tol: float = 1e-8) -> None:
        n = self.group.order
        if sum(r.dim**2 for r in self.irreps) != n:
            raise IrrepExtractionError("sum of squared dimensions does not match group order")
        if self.irreps[0].dim != 1 or max_residual(self.irreps[0].character, np.ones(n)) > tol:
            raise IrrepExtractionError("label 0 is not the trivial representation")
        for a, u in enumerate(self.irreps):
            if u.validate(tol) > tol:
                raise IrrepExtractionError(f"irrep {a} fails unitarity/multiplicativity")
            for b, v in enumerate(self.irreps):
                want = 1 if a == b else 0
                if len(intertwiner_basis(u, v)) != want:
                    raise IrrepExtractionError(f"intertwiner dimension wrong for pair ({a},{b})")
        dm = self.dual_map
        for a in self.labels:
            if dm[dm[a]] != a:
                raise IrrepExtractionError("dual map is not an involution")
            resid = max_residual(self.irreps[dm[a]].character, np.conj(self.irreps[a].character))
            if resid > tol:
                raise IrrepExtractionError(f"dual map wrong at label {a}")
        if dm[0] != 0:
            raise IrrepExtractionError("trivial label must be self-dual")


def _character_key(group: FiniteGroup, rep: UnitaryRep, digits: int = 6):
    chars = rep.character
    key = []
    for cls in group.conjugacy_classes:
        val = chars[cls[0]]
        key.append((round(val.real, digits), round(val.imag, digits)))
    return (rep.dim, tuple(key))


def extract_irreps(group: FiniteGroup, seed: int = 0, tol: float = DEFAULT_TOL) -> IrrepTable:
    """Decompose the regular representation into a full irrep table.

    A seeded random Hermitian matrix is averaged over the group action to
    give a commutant element; its eigenspaces are invariant, generically
    irreducible, subspaces.  Degenerate seeds are retried up to 8 times.
    """
    reg = regular_rep(group)
    n = group.order
    last_err = None
    for attempt in range(8):
        rng = np.random.default_rng(seed + attempt)
        h = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        h = (h + dagger(h)) / 2.0
        c = np.zeros((n, n), dtype=np.complex128)
        for g in range(n):
            c += reg.matrix(g) @ h @ reg.matrix(group.inv(g))
        c = (c + dagger(c)) / (2.0 * n)
        evals, evecs = np.linalg.eigh(c)
        # cluster eigenvalues into invariant subspaces
        blocks = []
        start = 0
        for j in range(1, n + 1):
            if j == n or evals[j] - evals[j - 1] > 1e-6:
                blocks.append(evecs[:, start:j])
                start = j
        try:
            candidates = []
            for basis in blocks:
                mats = tuple(dagger(basis) @ reg.matrix(g) @ basis for g in range(n))
                cand = UnitaryRep(group, mats)
                if cand.validate(1e-8) > 1e-8:
                    raise IrrepExtractionError("eigenspace is not invariant")
                if len(intertwiner_basis(cand, cand, tol)) != 1:
                    raise IrrepExtractionError("eigenspace is not irreducible")
                candidates.append(cand)
            reps: list[UnitaryRep] = []
            for cand in candidates:
                if not any(len(intertwiner_basis(cand, r, tol)) > 0 for r in reps):
                    reps.append(cand)
            if sum(r.dim**2 for r in reps) != n:
                raise IrrepExtractionError("incomplete set of irreducibles")
            reps.sort(key=lambda r: _character_key(group, r))
            # move the trivial rep to label 0 (it sorts first among dim-1 anyway,
            # but be explicit)
            triv = next(
                i for i, r in enumerate(reps) if r.dim == 1 and max_residual(r.character, np.ones(n)) < 1e-8
            )
            reps.insert(0, reps.pop(triv))
            dual = []
            for a, r in enumerate(reps):
                matches = [
                    b
                    for b, s in enumerate(reps)
                    if s.dim == r.dim and max_residual(s.character, np.conj(r.character)) < 1e-8
                ]
                if len(matches) != 1:
                    raise IrrepExtractionError(f"dual of irrep {a} not unique")
                dual.append(matches[0])
            table = IrrepTable(group, tuple(reps), tuple(dual))
            table.validate()
            return table
        except IrrepExtractionError as err:
            last_err = err
            continue
    raise IrrepExtractionError(f"irrep extraction failed after 8 seeds: {last_err}")


@dataclass(frozen=True)
class Subgroup:
    """A subgroup presented by the sorted tuple of its element indices."""

    parent: FiniteGroup
    elements: tuple[int, ...]

    def __post_init__(self):
        elems = tuple(sorted(set(self.elements)))
        object.__setattr__(self, "elements", elems)
        index = set(elems)
        if self.parent.identity not in index:
            raise GroupAxiomError("subgroup must contain the identity")
        for g in elems:
            for h in elems:
                if self.parent.mul(g, h) not in index:
                    raise GroupAxiomError(f"subset not closed: {g}*{h} escapes")

    @classmethod
    def generated(cls, parent: FiniteGroup, generators) -> "Subgroup":
        return cls(parent, parent.close_subset(generators))

    @cached_property
    def as_group(self) -> FiniteGroup:
        pos = {g: i for i, g in enumerate(self.elements)}
        n = len(self.elements)
        table = np.empty((n, n), dtype=np.int64)
        for i, g in enumerate(self.elements):
            for j, h in enumerate(self.elements):
                table[i, j] = pos[self.parent.mul(g, h)]
        return FiniteGroup(table, identity=pos[self.parent.identity])

    @property
    def order(self) -> int:
        return len(self.elements)

    def left_cosets(self) -> tuple[tuple[int, ...], ...]:
        """Left cosets g*H, each sorted, ordered by smallest element."""
        seen = set()
        cosets = []
        for g in range(self.parent.order):
            if g in seen:
                continue
            coset = tuple(sorted(self.parent.mul(g, h) for h in self.elements))
            seen |= set(coset)
            cosets.append(coset)
        cosets.sort(key=lambda c: c[0])
        return tuple(cosets)


def restrict(u: UnitaryRep, sub: Subgroup) -> UnitaryRep:
    """Restriction of a representation to a subgroup (reindexed matrices)."""
    if sub.parent is not u.group and not np.array_equal(sub.parent.mult_table, u.group.mult_table):
        raise ValueError("subgroup does not belong to the representation's group")
    return UnitaryRep(sub.as_group, tuple(u.matrix(g) for g in sub.elements))
