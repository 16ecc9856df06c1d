import numpy as np
import pytest

from qhspace.modcat import module_from_pointed, module_from_subgroup
from qhspace.numkit import max_residual
from qhspace.reconstruct import (
    ReconstructionError,
    block_consistency,
    build_algebra,
    build_bimodule,
    classical_roundtrip,
    cp_certificate,
    star_matrix,
    verify_algebra,
    verify_bimodule,
)
from qhspace.tensorcat import UNIT_LABEL

from test_oracles import invariant_dimension_by_characters


def test_algebra_dims_match_character_oracle(s3_table, s3_subgroups, s3_modules):
    for name, sub in s3_subgroups.items():
        alg = build_algebra(s3_modules[name], base=0)
        assert alg.dim == invariant_dimension_by_characters(s3_table, sub), name


def test_star_algebra_axioms(s3_modules, z4_pointed_module, z4_coset_module):
    mods = list(s3_modules.values()) + [z4_pointed_module, z4_coset_module]
    for f in mods:
        for base in range(f.n_base):
            cert = verify_algebra(build_algebra(f, base))
            assert cert.passed, cert.to_text()


def test_pointed_algebra_dim_is_stabilizer_order(z4_pointed_module, z4_coset_module):
    assert build_algebra(z4_pointed_module, 0).dim == 1
    assert build_algebra(z4_coset_module, 0).dim == 2


def test_unit_structure_constants_exact(s3_modules):
    alg = build_algebra(s3_modules["order2"], 0)
    o = alg.index[(UNIT_LABEL, 0, 0)]
    eye = np.eye(alg.dim)
    assert np.array_equal(alg.tensor[o, :, :], eye)
    assert np.array_equal(alg.tensor[:, o, :], eye)


def test_gram_routes_agree(s3_modules, z4_coset_module):
    for f in (s3_modules["order2"], s3_modules["trivial"], z4_coset_module):
        alg = build_algebra(f, 0)
        assert max_residual(alg.gram_from_product(), alg.gram_closed_form()) < 1e-12


def test_cp_certificates(s3_modules, z4_pointed_module, z4_coset_module):
    mods = list(s3_modules.values()) + [z4_pointed_module, z4_coset_module]
    for f in mods:
        cert = cp_certificate(build_algebra(f, 0))
        assert cert.passed, cert.to_text()


def test_classical_roundtrip_function_algebras(s3_modules, z4_cat, z4):
    from qhspace.grouprep import Subgroup, cyclic_group, extract_irreps
    from qhspace import tensorcat

    cases = [build_algebra(s3_modules["trivial"], 0)]
    for n in (2, 4):
        g = cyclic_group(n)
        cat = tensorcat.from_group(extract_irreps(g, seed=0))
        f = module_from_subgroup(cat, Subgroup.generated(g, []))
        cases.append(build_algebra(f, 0))
    for alg, order in zip(cases, (6, 2, 4)):
        cert = classical_roundtrip(alg)
        assert cert.passed, cert.to_text()
        assert alg.dim == order


def test_function_algebra_commutative(s3_modules):
    # functions on G commute even for nonabelian G
    alg = build_algebra(s3_modules["trivial"], 0)
    t = alg.tensor
    assert float(np.max(np.abs(t - np.einsum("qpr->pqr", t)))) < 1e-9


def test_structure_constants_bitwise_under_rescaling(s3, s3_table, s3_subgroups):
    from qhspace import tensorcat

    cat = tensorcat.from_group(s3_table)
    sub = s3_subgroups["order2"]
    ref = build_algebra(module_from_subgroup(cat, sub), 0)
    for lam in (2.0, 1j, 0.5 + 0.5j):
        cat2 = cat.with_rescaled_conjugates(lam)
        alg2 = build_algebra(module_from_subgroup(cat2, sub), 0)
        assert np.array_equal(ref.tensor, alg2.tensor)
        assert np.array_equal(ref.star_mat, alg2.star_mat)


def test_star_matrix_canonical_equals_stored_before_rescaling(s3_modules):
    f = s3_modules["order2"]
    cat = f.cat
    s_canon = star_matrix(f, 0, 0)
    s_stored = star_matrix(f, 0, 0, pair_map=lambda a: cat.conj_solutions[a])
    assert max_residual(s_canon, s_stored) < 1e-12


def test_bimodule_all_corners(s3_modules):
    f = s3_modules["order2"]
    for x in range(f.n_base):
        for y in range(f.n_base):
            cert = verify_bimodule(build_bimodule(f, x, y))
            assert cert.passed, f"corner ({x},{y}): {cert.to_text()}"


def test_block_consistency(s3_modules):
    cert = block_consistency(s3_modules["order2"], 0, 1)
    assert cert.passed, cert.to_text()


def test_build_algebra_rejects_bad_base(s3_modules):
    with pytest.raises(ReconstructionError):
        build_algebra(s3_modules["order2"], base=7)


def test_invariant_state_is_unital(s3_modules):
    alg = build_algebra(s3_modules["order2"], 0)
    assert alg.expectation(alg.unit) == pytest.approx(1.0)
    # the state kills every nonunit basis element
    for p, t in enumerate(alg.triples):
        want = 1.0 if t == (UNIT_LABEL, 0, 0) else 0.0
        e = np.zeros(alg.dim, dtype=np.complex128)
        e[p] = 1.0
        assert alg.expectation(e) == pytest.approx(want)


def test_star_is_involutive_on_random_elements(s3_modules):
    rng = np.random.default_rng(7)
    for f in s3_modules.values():
        alg = build_algebra(f, 0)
        v = rng.standard_normal(alg.dim) + 1j * rng.standard_normal(alg.dim)
        assert max_residual(alg.star(alg.star(v)), v) < 1e-9
