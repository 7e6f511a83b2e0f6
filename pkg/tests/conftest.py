import pytest

from nilprod import engine
from nilprod.hallbasis import K3P2, STANDARD
from nilprod.kernel import HAVE_C, default_backend
from nilprod.specs import GroupSpec

# The verification matrix: every (p, k, orders) with p in {3,5}, k in {2,3},
# r in {2,3}, a_i in {1,2}, p >= k, whose order fits the default enumeration
# budget, plus the k3p2 builds.  Combinations beyond the budget (e.g. the
# 3-generator class-3 products) are not enumerable on desk scale.
STANDARD_MATRIX = [
    (3, 2, (1, 1)), (3, 2, (1, 2)), (3, 2, (2, 2)),
    (3, 2, (1, 1, 1)), (3, 2, (1, 1, 2)), (3, 2, (1, 2, 2)), (3, 2, (2, 2, 2)),
    (3, 3, (1, 1)), (3, 3, (1, 2)), (3, 3, (2, 2)),
    (5, 2, (1, 1)), (5, 2, (1, 2)), (5, 2, (2, 2)),
    (5, 2, (1, 1, 1)), (5, 2, (1, 1, 2)), (5, 2, (1, 2, 2)),
    (5, 3, (1, 1)), (5, 3, (1, 2)),
]

K3P2_MATRIX = [(1, 1), (1, 2), (2, 2), (2, 3)]


def matrix_specs():
    specs = [GroupSpec(p=p, k=k, orders=orders) for p, k, orders in STANDARD_MATRIX]
    specs += [GroupSpec(p=2, k=3, orders=orders, variant=K3P2) for orders in K3P2_MATRIX]
    return specs


_VIEW_CACHE: dict = {}


def build_cached(spec: GroupSpec):
    key = (spec.p, spec.k, spec.orders, spec.variant, spec.relators)
    if key not in _VIEW_CACHE:
        _VIEW_CACHE[key] = engine.build_group(spec)
    return _VIEW_CACHE[key]


@pytest.fixture(scope="session")
def compiled_backend() -> bool:
    return HAVE_C and default_backend() == "c"
