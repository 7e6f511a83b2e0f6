import itertools

import pytest

from nilprod import capability as cap
from nilprod import engine
from nilprod.errors import SpecError
from nilprod.specs import GroupSpec, Presentation11

from tests.conftest import build_cached


def test_necessity_examples():
    assert cap.necessity_check(3, 2, [1, 2]) is False
    assert cap.necessity_check(2, 2, [1, 2]) is True
    assert cap.necessity_check(2, 4, [1, 4]) is True
    assert cap.necessity_check(3, 2, [1]) is False  # r must exceed 1
    assert cap.necessity_check(3, 2, [2, 2]) is True


def test_necessity_monotone():
    # monotone in a_{r-1}, antitone in a_r
    for p, k in [(2, 2), (3, 3), (5, 2)]:
        for low in range(1, 4):
            for high in range(low, 5):
                if cap.necessity_check(p, k, [low, high]):
                    assert cap.necessity_check(p, k, [low + 1, max(high, low + 1)])
                else:
                    assert not cap.necessity_check(p, k, [low, high + 1])


def test_dihedral_tightness_family():
    for k in range(2, 7):
        assert cap.necessity_check(2, k, [1, k])
        assert not cap.necessity_check(2, k, [1, k + 1])
        # equality: a_r == a_{r-1} + slack
        from nilprod.arith import capability_slack

        assert k == 1 + capability_slack(2, k)


@pytest.mark.parametrize(
    "p,k,orders,status",
    [
        (3, 2, (1, 1), cap.CAPABLE),
        (5, 3, (1, 2, 2), cap.CAPABLE),
        (3, 2, (1, 2), cap.NOT_CAPABLE),
        (2, 2, (1, 2), cap.CAPABLE),
        (2, 2, (1, 3), cap.NOT_CAPABLE),
        (3, 3, (1, 1), cap.UNKNOWN),
        (3, 2, (1,), cap.NOT_CAPABLE),
        (2, 2, (2, 2), cap.CAPABLE),
        (5, 1, (1, 1), cap.CAPABLE),  # direct sums: Baer
        (5, 1, (1, 2), cap.NOT_CAPABLE),
    ],
)
def test_capable_nilprod_verdicts(p, k, orders, status):
    assert cap.capable_nilprod(p, k, orders).status == status


def test_witness_search_small_class2():
    report = cap.witness_search(GroupSpec(p=3, k=2, orders=(1, 1)), k_orders=(1, 1))
    assert report.verified and report.mode == "enumerated"
    assert report.orders["|K|"] == 243
    assert report.orders["|Z(Q)|"] == 9
    assert report.orders["|Q/Z(Q)|"] == 27 == report.orders["|G|"]


def test_witness_search_k3p2():
    report = cap.witness_search(GroupSpec(p=2, k=2, orders=(1, 2)))
    assert report.verified
    assert report.orders["|Q/Z(Q)|"] == 16 == report.orders["|G|"]


@pytest.mark.parametrize("a", [1, 2, 3])
def test_k3p2_boundary_family_witnessed(a):
    # the whole boundary family a_r = a_{r-1} + 1 of 2-nilpotent products of
    # 2-groups is capable, witnessed by the class-3 product with equal orders
    orders = (a, a + 1)
    verdict = cap.capable_nilprod(2, 2, orders)
    assert verdict.status == cap.CAPABLE
    report = cap.witness_search(GroupSpec(p=2, k=2, orders=orders), k_orders=orders)
    assert report.verified, report.reason
    assert report.orders["|M|"] == 1  # relators already hold in K
    assert report.orders["|Q/Z(Q)|"] == report.orders["|G|"] == 2 ** (2 * a + 1 + a)
    # one step past the bound is not capable
    assert cap.capable_nilprod(2, 2, (a, a + 2)).status == cap.NOT_CAPABLE


def test_witness_search_unknown_regime_upgrade():
    # (3,3,(1,1)) passes necessity but sits in the open regime; the finite
    # witness (4-nilpotent product of two C_3) decides this instance
    verdict = cap.capable_nilprod(3, 3, (1, 1), want_witness=True)
    assert verdict.witness is not None
    if verdict.witness.verified:
        assert verdict.status == cap.CAPABLE
    else:
        assert verdict.status == cap.UNKNOWN


def test_witness_structural_big_case():
    verdict = cap.capable_nilprod(5, 3, (1, 2, 2), want_witness=True)
    assert verdict.status == cap.CAPABLE
    w = verdict.witness
    assert w.verified and w.mode == "structural"
    assert w.orders["|K/Z(K)|"] == w.orders["|G|"]


def test_witness_orders_must_dominate():
    with pytest.raises(SpecError):
        cap.witness_search(GroupSpec(p=3, k=2, orders=(2, 2)), k_orders=(1, 1))


def test_witness_quotient_family():
    w = cap.witness_quotient_family(3, (2, 2), {(2, 1): 1})
    assert w.verified
    assert w.orders["|H|"] == 3**10
    assert w.orders["|Q|"] == 3**8
    assert w.orders["|Z(Q)|"] == 27
    assert w.orders["|Q/Z(Q)|"] == 3**5 == w.orders["|G|"]


def test_witness_quotient_family_trivial_m():
    # beta = alpha: the powers [xj,xi,xk]^(p^a_i) vanish, M is trivial and
    # G is the plain 2-nilpotent product
    w = cap.witness_quotient_family(3, (1, 1), {(2, 1): 1})
    assert w.verified
    assert w.orders["|M|"] == 1
    assert w.orders["|Q/Z(Q)|"] == 27 == w.orders["|G|"]
    w5 = cap.witness_quotient_family(5, (1, 1), {(2, 1): 1})
    assert w5.verified and w5.orders["|Q/Z(Q)|"] == 125


def test_witness_quotient_family_beta_eq_alpha_reduces():
    # beta_ji = a_i makes the weight-3 powers trivial: M = 1 and the target
    # is the unquotiented 2-nilpotent product (the generic small-class witness)
    w = cap.witness_quotient_family(3, (2, 2), {(2, 1): 2})
    assert w.verified
    assert w.orders["|M|"] == 1
    assert w.orders["|G|"] == 3**6


def test_witness_quotient_family_rejects():
    with pytest.raises(SpecError):
        cap.witness_quotient_family(2, (1, 1), 1)  # needs odd p
    with pytest.raises(SpecError):
        cap.witness_quotient_family(3, (1, 2), 1)  # unequal top orders
    with pytest.raises(SpecError):
        cap.witness_quotient_family(3, (2, 2), {(2, 1): 3})  # beta > a_i


def test_witness_presentation11_chain():
    w = cap.witness_presentation11(3, 2, 1, 0)
    assert w.verified
    assert w.orders["|H|"] == 3**10
    assert w.orders["|Q/Z(Q)|"] == 81 == w.orders["|G|"]


def test_witness_presentation11_rejects_non_canonical():
    # alpha + sigma >= 2*gamma fails: these parameters are not a canonical
    # member of the presentation family (the presented group collapses)
    with pytest.raises(SpecError, match="alpha\\+sigma"):
        cap.witness_presentation11(3, 2, 2, 1)
    with pytest.raises(SpecError, match="sigma < gamma"):
        cap.witness_presentation11(3, 2, 1, 1)


def test_build_presentation11_orders():
    cases = [
        (3, Presentation11(1, 1, 1, 1), 27),
        (3, Presentation11(2, 2, 1, 0), 81),
        (5, Presentation11(2, 1, 1, 0), 125),
        (3, Presentation11(2, 2, 2, 2), 729),
        (3, Presentation11(2, 2, 1, 1), 3**5),
    ]
    for p, pres, order in cases:
        view, assign = cap.build_presentation11(p, pres)
        assert view.order == order == p ** (pres.alpha + pres.beta + pres.sigma)
        a, b = assign["a"], assign["b"]
        assert engine.element_order(view, a) <= p**pres.alpha
        words = cap.presentation11_words(p, pres)
        for w in words:
            assert engine.evaluate_in_view(view, w, assign) == view.identity


def test_capable_presentation11_boundary():
    for p in (3, 5):
        for alpha, beta in itertools.product((1, 2), repeat=2):
            for gamma in range(1, beta + 1):
                for sigma in range(0, gamma + 1):
                    try:
                        Presentation11(alpha, beta, gamma, sigma).validate(p)
                    except SpecError:
                        continue
                    verdict = cap.capable_presentation11(p, alpha, beta, gamma, sigma)
                    expected = cap.CAPABLE if alpha == beta else cap.NOT_CAPABLE
                    assert verdict.status == expected, (p, alpha, beta, gamma, sigma)


def test_capable_presentation11_with_witness():
    verdict = cap.capable_presentation11(3, 1, 1, 1, 1, want_witness=True)
    assert verdict.status == cap.CAPABLE
    assert verdict.witness is not None and verdict.witness.verified
    verdict = cap.capable_presentation11(3, 2, 2, 1, 0, want_witness=True)
    assert verdict.status == cap.CAPABLE
    assert verdict.witness is not None and verdict.witness.verified


def test_capability_soundness_on_matrix():
    """Matrix-wide cross-check: CAPABLE comes with a verified witness;
    NOT_CAPABLE exactly matches the violated condition; UNKNOWN only in the
    genuinely open regime with necessity intact."""
    from nilprod.arith import capability_slack
    from tests.conftest import matrix_specs

    for spec in matrix_specs():
        p, k, orders = spec.p, spec.k, spec.sorted_orders()
        r = len(orders)
        verdict = cap.capable_nilprod(p, k, orders, want_witness=True)
        if verdict.status == cap.CAPABLE:
            assert verdict.witness is not None
            assert verdict.witness.verified, (spec, verdict.witness.reason)
        elif verdict.status == cap.NOT_CAPABLE:
            if k < p:
                assert r < 2 or orders[-1] != orders[-2]
            elif k == 2 and p == 2:
                assert r < 2 or orders[-1] > orders[-2] + 1
            else:
                assert not cap.necessity_check(p, k, orders)
        else:
            assert k >= p and not (k == 2 and p == 2)
            assert cap.necessity_check(p, k, orders)
            assert orders[-1] <= orders[-2] + capability_slack(p, k)


def test_capable_extraspecial():
    assert cap.capable_extraspecial(3, 3, "exponent_p").status == cap.CAPABLE
    assert cap.capable_extraspecial(3, 3, "exponent_p_squared").status == cap.NOT_CAPABLE
    assert cap.capable_extraspecial(2, 3, "dihedral").status == cap.CAPABLE
    assert cap.capable_extraspecial(2, 3, "quaternion").status == cap.NOT_CAPABLE
    assert cap.capable_extraspecial(3, 5, "exponent_p").status == cap.NOT_CAPABLE
    assert cap.capable_extraspecial(5, 7, "exponent_p").status == cap.NOT_CAPABLE
    with pytest.raises(SpecError):
        cap.capable_extraspecial(3, 4, "exponent_p")
    with pytest.raises(SpecError):
        cap.capable_extraspecial(2, 3, "exponent_p")


def test_extraspecial_p5_showcase():
    view = cap.build_extraspecial_p5(3)
    assert view.order == 243
    z = engine.center(view)
    assert z.order == 3
    assert all(engine.element_order(view, g) == 3 for g in view.generators)
    # derived subgroup equals the center (extra-special shape)
    g2 = engine.lower_central_series(view)[1]
    assert g2.member_set == z.member_set
    # minimally 4-generated: G/G_2 has order 3^4
    q, _ = engine.quotient(view, g2)
    assert q.order == 3**4
    # necessity passes, classification still says no
    assert cap.necessity_check(3, 2, [1, 1, 1, 1])
    assert cap.capable_extraspecial(3, 5, "exponent_p").status == cap.NOT_CAPABLE


def test_extraspecial_witness_search_inconclusive():
    report = cap.witness_search(cap.extraspecial_p5_spec(3))
    assert not report.verified
    assert report.mode == "inconclusive"
    assert "budget" in report.reason


from nilprod.kernel import HAVE_C
from nilprod.kernel import default_backend as _backend

_COMPILED = HAVE_C and _backend() == "c"


@pytest.mark.skipif(not _COMPILED, reason="10M-element ambient; needs the compiled kernel")
def test_witness_presentation11_chain_p5():
    # the 5^10-element chain; raised budget, ~25s compiled
    w = cap.witness_presentation11(5, 2, 1, 0, budget=12_000_000)
    assert w.verified
    assert w.orders["|H|"] == 5**10
    assert w.orders["|Q/Z(Q)|"] == 5**4 == w.orders["|G|"]


@pytest.mark.skipif(not _COMPILED, reason="10M-element ambient; needs the compiled kernel")
def test_extraspecial_p5_at_p5():
    view = cap.build_extraspecial_p5(5, budget=12_000_000)
    assert view.order == 5**5
    assert engine.center(view).order == 5
    assert all(engine.element_order(view, g) == 5 for g in view.generators)
