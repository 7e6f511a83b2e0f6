import random

import pytest

from nilprod import engine
from nilprod.arith import INFINITY
from nilprod.errors import BudgetExceeded, SpecError
from nilprod.hallbasis import K3P2
from nilprod.specs import GroupSpec
from nilprod.words import parse_word

from tests.conftest import build_cached


def test_build_group_orders():
    assert build_cached(GroupSpec(p=3, k=2, orders=(1, 1))).order == 27
    assert build_cached(GroupSpec(p=2, k=3, orders=(1, 1), variant=K3P2)).order == 16
    assert build_cached(GroupSpec(p=3, k=3, orders=(2, 2))).order == 3**10


def test_build_group_budget():
    with pytest.raises(BudgetExceeded):
        engine.build_group(GroupSpec(p=5, k=3, orders=(2, 2)))
    # explicit budget raise lets it through the check (but we keep it small here)
    with pytest.raises(BudgetExceeded):
        engine.build_group(GroupSpec(p=3, k=2, orders=(1, 1)), budget=10)


def test_build_group_normalizes_orders():
    view = engine.build_group(GroupSpec(p=3, k=2, orders=(2, 1)))
    assert view.basis.orders == (1, 2)
    assert view.order_permutation == (1, 0)


def test_build_group_with_relators():
    spec = GroupSpec(p=3, k=2, orders=(2, 2), relators=(parse_word("[x2,x1]^3"),))
    view = engine.build_group(spec)
    assert view.order == 3**5  # 9*9*9 / 3


def test_subgroup_closure_examples():
    g = build_cached(GroupSpec(p=3, k=2, orders=(1, 1)))
    assert engine.subgroup_closure(g, []).order == 1
    assert engine.subgroup_closure(g, [g.generators[0]]).order == 3
    c = g.comm(g.generators[1], g.generators[0])
    zc = engine.subgroup_closure(g, [c])
    assert zc.order == 3
    assert all(g.mul(m, x) == g.mul(x, m) for m in zc.members for x in g.generators)


def test_normal_closure_examples():
    g = build_cached(GroupSpec(p=3, k=2, orders=(1, 1)))
    assert engine.normal_closure(g, []).order == 1
    n = engine.normal_closure(g, [g.generators[0]])
    assert n.order == 9
    c = g.comm(g.generators[1], g.generators[0])
    assert c in n
    # central generators: normal closure equals plain closure
    zc = engine.normal_closure(g, [c])
    assert zc.member_set == engine.subgroup_closure(g, [c]).member_set


def test_lower_central_series():
    g = build_cached(GroupSpec(p=3, k=2, orders=(1, 1)))
    assert [t.order for t in engine.lower_central_series(g)] == [27, 3, 1]
    gk = build_cached(GroupSpec(p=2, k=3, orders=(1, 1), variant=K3P2))
    assert [t.order for t in engine.lower_central_series(gk)] == [16, 4, 2, 1]
    ab = build_cached(GroupSpec(p=3, k=1, orders=(1, 2)))
    assert [t.order for t in engine.lower_central_series(ab)] == [27, 1]


def test_weight_W():
    g = build_cached(GroupSpec(p=3, k=2, orders=(1, 1)))
    assert engine.weight_W(g, g.identity) == INFINITY
    assert engine.weight_W(g, g.generators[0]) == 1
    assert engine.weight_W(g, g.comm(g.generators[1], g.generators[0])) == 2


def test_center_examples():
    g = build_cached(GroupSpec(p=3, k=2, orders=(1, 2)))
    z = engine.center(g)
    assert z.order == 9
    x2cube = g.pow(g.generators[1], 3)
    c = g.comm(g.generators[1], g.generators[0])
    assert z.member_set == engine.subgroup_closure(g, [x2cube, c]).member_set

    gk = build_cached(GroupSpec(p=2, k=3, orders=(1, 1), variant=K3P2))
    zk = engine.center(gk)
    ck = gk.comm(gk.generators[1], gk.generators[0])
    assert zk.order == 2 and gk.pow(ck, 2) in zk

    ab = build_cached(GroupSpec(p=3, k=1, orders=(1, 2)))
    assert engine.center(ab).order == ab.order


def test_quotient_examples():
    g = build_cached(GroupSpec(p=3, k=2, orders=(1, 1)))
    trivial = engine.Subgroup(g, [g.identity], [])
    q, proj = engine.quotient(g, trivial)
    assert q.order == g.order
    whole = engine.Subgroup(g, list(g.elements()), g.generators)
    q, proj = engine.quotient(g, whole)
    assert q.order == 1
    z = engine.center(g)
    q, proj = engine.quotient(g, z)
    assert q.order == 9
    assert engine.center(q).order == q.order  # abelian
    # projection is a homomorphism
    rng = random.Random(4)
    for _ in range(200):
        a, b = rng.randrange(g.order), rng.randrange(g.order)
        assert proj(g.mul(a, b)) == q.mul(proj(a), proj(b))


def test_quotient_rejects_non_normal():
    g = build_cached(GroupSpec(p=3, k=2, orders=(1, 1)))
    h = engine.subgroup_closure(g, [g.generators[0]])
    with pytest.raises(SpecError, match="normal"):
        engine.quotient(g, h)


def test_quotient_of_quotient_flattens():
    spec = GroupSpec(p=3, k=3, orders=(1, 1))
    g = engine.build_group(spec)  # order 3^5
    g3 = engine.lower_central_series(g)[2]
    q, _ = engine.quotient(g, g3)  # class-2 quotient, order 27
    assert q.order == 27
    zq = engine.center(q)
    qq, _ = engine.quotient(q, zq)
    assert qq.order == 9
    assert engine.center(qq).order == qq.order


def test_group_view_ops_match_kernel():
    g = build_cached(GroupSpec(p=5, k=3, orders=(1, 2)))
    rng = random.Random(9)
    for _ in range(100):
        a, b = rng.randrange(g.order), rng.randrange(g.order)
        assert g.mul(a, g.inv(a)) == g.identity
        assert g.comm(a, b) == g.mul(g.inv(g.mul(b, a)), g.mul(a, b))
        assert g.pow(a, 7) == g.mul(g.pow(a, 3), g.pow(a, 4))


def test_check_words_central():
    k = build_cached(GroupSpec(p=3, k=3, orders=(1, 1)))
    assert engine.check_words_central(k, [parse_word("x1^3"), parse_word("x2^3")], {})
    g = build_cached(GroupSpec(p=3, k=2, orders=(1, 1)))
    assert not engine.check_words_central(g, [parse_word("x1")], {})
    assert engine.check_words_central(g, [parse_word("[x2,x1]")], {})
    assert engine.check_words_central(g, [], {})


def test_evaluate_in_view():
    g = build_cached(GroupSpec(p=3, k=2, orders=(1, 1)))
    val = engine.evaluate_in_view(g, parse_word("[b,a]"), {"a": g.generators[0], "b": g.generators[1]})
    assert val == g.comm(g.generators[1], g.generators[0])
    with pytest.raises(SpecError, match="unbound"):
        engine.evaluate_in_view(g, parse_word("zz"), {})


def test_element_order():
    g = build_cached(GroupSpec(p=3, k=2, orders=(1, 2)))
    assert engine.element_order(g, g.generators[0]) == 3
    assert engine.element_order(g, g.generators[1]) == 9
    assert engine.element_order(g, g.identity) == 1


def test_commutator_weight_superadditive():
    # W([a,b]) >= W(a) + W(b), with W(e) treated as infinite
    for spec in (GroupSpec(p=3, k=3, orders=(1, 1)), GroupSpec(p=2, k=3, orders=(1, 2), variant=K3P2)):
        g = build_cached(spec)
        rng = random.Random(13)
        for _ in range(150):
            a, b = rng.randrange(g.order), rng.randrange(g.order)
            c = g.comm(a, b)
            if c == g.identity:
                continue
            wa, wb = engine.weight_W(g, a), engine.weight_W(g, b)
            if wa == engine.INFINITY or wb == engine.INFINITY:
                continue
            assert engine.weight_W(g, c) >= wa + wb


def test_series_length_is_class_plus_one():
    from tests.conftest import matrix_specs

    for spec in matrix_specs():
        view = build_cached(spec)
        if view.order > 100_000:
            continue
        series = engine.lower_central_series(view)
        top_nontrivial = any(
            m > 1
            for c, m in zip(view.basis.entries, view.basis.moduli)
            if c.weight == spec.k
        )
        if top_nontrivial:
            assert len(series) == spec.k + 1, spec


def test_quotient_projection_exhaustive_small():
    g = build_cached(GroupSpec(p=3, k=2, orders=(1, 1)))
    z = engine.center(g)
    q, proj = engine.quotient(g, z)
    for a in g.elements():
        for b in g.elements():
            assert proj(g.mul(a, b)) == q.mul(proj(a), proj(b))


def _order_multiset(view):
    from collections import Counter

    return Counter(engine.element_order(view, x) for x in view.elements())


def test_structure_fingerprints():
    # the 2-nilpotent product of two C2 is dihedral of order 8
    d8 = build_cached(GroupSpec(p=2, k=2, orders=(1, 1)))
    assert _order_multiset(d8) == {1: 1, 2: 5, 4: 2}
    # the class-2 product of two C3 is the Heisenberg group mod 3
    heis = build_cached(GroupSpec(p=3, k=2, orders=(1, 1)))
    assert _order_multiset(heis) == {1: 1, 3: 26}
    # the k3p2 product of two C2 is dihedral of order 16
    d16 = build_cached(GroupSpec(p=2, k=3, orders=(1, 1), variant=K3P2))
    assert _order_multiset(d16) == {1: 1, 2: 9, 4: 2, 8: 4}


def test_standard_atoms_have_their_weight():
    # in a standard product, a basis atom with nontrivial modulus sits in
    # G_w and not deeper: series membership recovers the grading
    for spec in (GroupSpec(p=3, k=3, orders=(1, 2)), GroupSpec(p=5, k=3, orders=(1, 1))):
        view = build_cached(spec)
        basis = view.basis
        for i, (c, m) in enumerate(zip(basis.entries, basis.moduli)):
            if m == 1:
                continue
            unit = view.kernel.id_of_coords(
                tuple(1 if j == i else 0 for j in range(len(basis.entries)))
            )
            assert engine.weight_W(view, unit) == c.weight


def test_budget_boundary_inclusive():
    spec = GroupSpec(p=3, k=2, orders=(1, 1))
    assert engine.build_group(spec, budget=27).order == 27
    with pytest.raises(BudgetExceeded):
        engine.build_group(spec, budget=26)


def test_k3p2_three_generators():
    # three-generator p=2 class-3 build: 16384 elements; the weight-3
    # three-generator coordinates get modulus 2^(a_i), i the smallest index
    spec = GroupSpec(p=2, k=3, orders=(1, 1, 2), variant=K3P2)
    view = build_cached(spec)
    assert view.order == 2**14
    assert view.kernel.bfs_order(list(view.generators)) == view.order
    from nilprod import oracle

    rep = oracle.verify_center_theorem(spec)
    assert rep.status == "PASS", rep.failures
    rep = oracle.verify_group_axioms(view, samples=4000)
    assert rep.status == "PASS"
    for check in ("EQ1", "EQ3", "H1", "HALL1231"):
        rep = oracle.verify_identity(check, view, samples=25, seed=3)
        assert rep.status == "PASS", (check, rep.failures)
