import numpy as np
import pytest

from qhspace import tensorcat
from qhspace.grouprep import Subgroup, cyclic_group, extract_irreps, symmetric_group
from qhspace.modcat import module_from_pointed, module_from_subgroup


@pytest.fixture(scope="session")
def s3():
    return symmetric_group(3)


@pytest.fixture(scope="session")
def s3_table(s3):
    return extract_irreps(s3, seed=0)


@pytest.fixture(scope="session")
def s3_cat(s3_table):
    return tensorcat.from_group(s3_table)


@pytest.fixture(scope="session")
def s3_subgroups(s3):
    # one representative per conjugacy class of subgroups
    order2 = sorted(g for g in range(6) if g != 0 and s3.mul(g, g) == 0)
    order3 = sorted(g for g in range(6) if g != 0 and s3.mul(g, g) != 0)
    return {
        "trivial": Subgroup.generated(s3, []),
        "order2": Subgroup.generated(s3, [order2[0]]),
        "order3": Subgroup.generated(s3, [order3[0]]),
        "full": Subgroup.generated(s3, [order2[0], order3[0]]),
    }


@pytest.fixture(scope="session")
def s3_modules(s3_cat, s3_subgroups):
    return {name: module_from_subgroup(s3_cat, sub)
            for name, sub in s3_subgroups.items()}


@pytest.fixture(scope="session")
def z4():
    return cyclic_group(4)


@pytest.fixture(scope="session")
def z4_cat(z4):
    return tensorcat.from_group(extract_irreps(z4, seed=0))


@pytest.fixture(scope="session")
def z4_pointed_cat():
    return tensorcat.from_pointed(tensorcat.standard_cyclic_cocycle(4))


@pytest.fixture(scope="session")
def z4_trivial_pointed_cat(z4):
    data = tensorcat.PointedFusionData(z4, np.ones((4, 4, 4), dtype=np.complex128))
    return tensorcat.from_pointed(data)


@pytest.fixture(scope="session")
def z4_pointed_module(z4_pointed_cat, z4):
    return module_from_pointed(z4_pointed_cat, Subgroup.generated(z4, []))


@pytest.fixture(scope="session")
def z4_coset_module(z4_trivial_pointed_cat, z4):
    return module_from_pointed(z4_trivial_pointed_cat, Subgroup.generated(z4, [2]))
