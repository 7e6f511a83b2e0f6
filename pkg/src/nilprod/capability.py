"""Capability verdicts and constructive witnesses.

A group G is capable when G = H/Z(H) for some H.  For k-nilpotent products
of cyclic p-groups the verdict is decided by the classical criteria:

* r > 1 and a_r <= a_{r-1} + floor((k-1)/(p-1)) is necessary (any class);
* for k < p it sharpens to a_{r-1} = a_r, necessary and sufficient
  (Baer's theorem generalized to small class);
* for k = p = 2 the necessity bound itself is sufficient;
* for k >= p > 2 the question is open: verdicts there are UNKNOWN, possibly
  upgraded to CAPABLE by an explicit verified witness.

Witnesses are central quotients: a group Q together with a certificate that
Q/Z(Q) is isomorphic to G.  The certificate is exact: |Q/Z(Q)| = |G| plus a
surjection Q -> G that kills Z(Q), which forces the isomorphism.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import engine
from .arith import capability_slack
from .errors import BudgetExceeded, SpecError
from .hallbasis import K3P2, STANDARD, assign_moduli, build_basis
from .specs import GroupSpec, Presentation11
from .words import Bracket, Gen, Power, Product

CAPABLE = "capable"
NOT_CAPABLE = "not-capable"
UNKNOWN = "unknown"


@dataclass
class WitnessReport:
    description: str
    verified: bool
    mode: str  # "enumerated" | "structural" | "inconclusive"
    orders: dict = field(default_factory=dict)
    reason: str = ""

    def to_dict(self) -> dict:
        return {
            "description": self.description,
            "verified": self.verified,
            "mode": self.mode,
            "orders": dict(sorted(self.orders.items())),
            "reason": self.reason,
        }


@dataclass
class Verdict:
    status: str
    justification: str
    params: dict = field(default_factory=dict)
    witness: WitnessReport | None = None

    def to_dict(self) -> dict:
        out = {
            "status": self.status,
            "justification": self.justification,
            "params": dict(sorted(self.params.items())),
        }
        if self.witness is not None:
            out["witness"] = self.witness.to_dict()
        return out


def necessity_check(p: int, k: int, orders) -> bool:
    """Necessary condition for capability from the generator orders alone."""
    orders = tuple(sorted(orders))
    if len(orders) < 2:
        return False
    return orders[-1] <= orders[-2] + capability_slack(p, k)


# -- words and homomorphism certificates ------------------------------------


def _power_word(name: str, e: int):
    return Power(Gen(name), e)


def _nilprod_relator_words(p: int, orders, extra=()):
    words = [_power_word(f"x{i + 1}", p**a) for i, a in enumerate(orders)]
    words.extend(extra)
    return words


def _atom_images(root, target, gen_images):
    """Image in `target` of every basis atom of `root`, given generator images."""
    images = []
    for c in root.basis.entries:
        if c.is_leaf():
            images.append(gen_images[c.gen - 1])
        else:
            u = images[root.basis.index_of(c.left)]
            v = images[root.basis.index_of(c.right)]
            images.append(target.comm(u, v))
    return images


def _hom_from_root(root, target, gen_images):
    """The evaluation map root -> target defined by the generator images.

    Well-defined whenever target satisfies the defining relations of the
    nilpotent product (class and generator orders); callers guarantee that.
    """
    images = _atom_images(root, target, gen_images)
    kernel = root.kernel

    def pi(h: int) -> int:
        acc = target.identity
        for atom, e in kernel.letters_of_coords(kernel.coords_of_id(h)):
            acc = target.mul(acc, target.pow(images[atom], e))
        return acc

    return pi


def _certify_central_quotient(q, g, gen_images, orders_extra=None) -> WitnessReport:
    """Certificate that q/Z(q) is isomorphic to g.

    Checks |q/Z(q)| = |g| and that the evaluation surjection q -> g kills
    Z(q); together these force q/Z(q) = g exactly.
    """
    zq = engine.center(q)
    orders = {
        "|Q|": q.order,
        "|Z(Q)|": zq.order,
        "|Q/Z(Q)|": q.order // zq.order,
        "|G|": g.order,
    }
    if orders_extra:
        orders.update(orders_extra)
    pi = _hom_from_root(q.root, g, gen_images)
    order_ok = q.order // zq.order == g.order
    kernel_ok = all(pi(q.to_root(z)) == g.identity for z in zq.members)
    verified = order_ok and kernel_ok
    reason = ""
    if not order_ok:
        reason = f"central quotient has order {orders['|Q/Z(Q)|']}, target has {g.order}"
    elif not kernel_ok:
        reason = "the center does not map into the kernel of the comparison map"
    return WitnessReport(
        description="central quotient witness",
        verified=verified,
        mode="enumerated",
        orders=orders,
        reason=reason,
    )


# -- witness constructions ----------------------------------------------------


def _default_witness_orders(p: int, k: int, orders, budget: int):
    """K gets each generator order raised by slack+1, shrunk to fit the budget."""
    slack = capability_slack(p, k + 1) + 1
    for t in range(slack, -1, -1):
        betas = tuple(a + t for a in orders)
        basis = assign_moduli(
            build_basis(len(orders), k + 1),
            p,
            betas,
            K3P2 if (p == 2 and k + 1 == 3) else STANDARD,
        )
        if basis.group_order <= budget:
            return betas
    return None


def witness_search(
    spec: GroupSpec,
    k_orders=None,
    budget: int = engine.DEFAULT_BUDGET,
) -> WitnessReport:
    """Build the canonical witness candidate K/M and test it.

    K is the (k+1)-nilpotent product of cyclic groups of orders p^b_i
    (b_i >= a_i), N the normal closure of G's relators evaluated in K, and
    M = [N, K].  If G's relators are central in K/M and the certificate
    passes, G is capable.  Failure is NOT a proof of non-capability: a finite
    K is only an approximation of the unbounded-exponent construction.
    """
    spec.validate()
    p, k = spec.p, spec.k
    alphas = spec.sorted_orders()
    k1 = k + 1
    if p >= k1:
        variant = STANDARD
    elif p == 2 and k1 == 3:
        variant = K3P2
    else:
        return WitnessReport(
            description="witness search",
            verified=False,
            mode="inconclusive",
            reason=f"no normal-form basis available for p={p}, class {k1}",
        )
    try:
        g = engine.build_group(spec, budget)
    except BudgetExceeded as exc:
        return WitnessReport(
            description="witness search",
            verified=False,
            mode="inconclusive",
            reason=f"target group exceeds budget ({exc})",
        )

    if k_orders is None:
        k_orders = _default_witness_orders(p, k, alphas, budget)
    else:
        k_orders = tuple(sorted(int(b) for b in k_orders))
        if len(k_orders) != len(alphas) or any(b < a for b, a in zip(k_orders, alphas)):
            raise SpecError("witness orders must dominate the group's orders")
    if k_orders is not None:
        basis_k = assign_moduli(build_basis(len(alphas), k1), p, k_orders, variant)
        if basis_k.group_order > budget:
            k_orders = None
    if k_orders is None:
        return WitnessReport(
            description="witness search",
            verified=False,
            mode="inconclusive",
            reason="every candidate witness exceeds the enumeration budget",
        )

    kspec = GroupSpec(p=p, k=k1, orders=k_orders, variant=variant)
    kview = engine.build_group(kspec, budget)
    words = _nilprod_relator_words(p, alphas, spec.relators)
    values = [engine.evaluate_in_view(kview, w, {}) for w in words]
    nontrivial = [v for v in values if v != kview.identity]

    if nontrivial:
        n = engine.normal_closure(kview, nontrivial)
        m_gens = set()
        for t in n.gens:
            for gg in kview.generators:
                c = kview.comm(t, gg)
                if c != kview.identity:
                    m_gens.add(c)
        if m_gens:
            m = engine.normal_closure(kview, m_gens)
            q, _ = engine.quotient(kview, m)
        else:
            m = None
            q = kview
    else:
        m = None
        q = kview

    # relators must now be central in q
    central = engine.check_words_central(q, words, {})
    if not central:
        return WitnessReport(
            description=f"witness K/M with K orders {k_orders}",
            verified=False,
            mode="inconclusive",
            orders={"|K|": kview.order, "|Q|": q.order, "|G|": g.order},
            reason="relators fail to be central in K/M",
        )
    report = _certify_central_quotient(q, g, list(g.generators))
    report.description = f"witness K/M with K orders {k_orders}"
    report.orders["|K|"] = kview.order
    report.orders["|M|"] = kview.order // q.order
    if not report.verified:
        report.mode = "inconclusive"
    return report


def _structural_nilprod_witness(p: int, k: int, orders) -> WitnessReport:
    """Witness bookkeeping without enumeration, for K beyond the budget.

    Valid for K the (k+1)-nilpotent product with the SAME orders and p >= k+1:
    Z(K) = <x_r^(p^a_{r-1}), K_{k+1}>, so the central quotient order is the
    order of the k-nilpotent product divided by p^(a_r - a_{r-1}).  The center
    formula itself is brute-force verified on the oracle test matrix.
    """
    orders = tuple(sorted(orders))
    r = len(orders)
    basis_k1 = assign_moduli(build_basis(r, k + 1), p, orders, STANDARD)
    basis_k = assign_moduli(build_basis(r, k), p, orders, STANDARD)
    top = 1
    for c, m in zip(basis_k1.entries, basis_k1.moduli):
        if c.weight == k + 1:
            top *= m
    gap = p ** (orders[-1] - orders[-2]) if r > 1 else p ** orders[-1]
    z_order = top * gap
    quotient_order = basis_k1.group_order // z_order
    g_order = basis_k.group_order
    verified = r > 1 and orders[-1] == orders[-2]
    return WitnessReport(
        description=f"structural witness: ({k + 1})-nilpotent product, same orders",
        verified=verified,
        mode="structural",
        orders={
            "|K|": basis_k1.group_order,
            "|Z(K)|": z_order,
            "|K/Z(K)|": quotient_order,
            "|G|": g_order,
        },
        reason="" if verified else "top generator power is not central in the target",
    )


def capable_nilprod(
    p: int,
    k: int,
    orders,
    want_witness: bool = False,
    budget: int = engine.DEFAULT_BUDGET,
) -> Verdict:
    """Capability of the k-nilpotent product of cyclic groups C_{p^a_i}."""
    orders = tuple(sorted(int(a) for a in orders))
    if not orders or any(a < 1 for a in orders):
        raise SpecError(f"orders must be positive exponents, got {orders}")
    params = {"p": p, "k": k, "orders": list(orders)}
    r = len(orders)
    slack = capability_slack(p, k)

    g_variant = K3P2 if (p == 2 and k == 3) else STANDARD

    def attach(verdict: Verdict) -> Verdict:
        if want_witness and verdict.status == CAPABLE:
            variant = K3P2 if (p == 2 and k + 1 == 3) else STANDARD
            basis_k1 = assign_moduli(build_basis(r, k + 1), p, orders, variant)
            if basis_k1.group_order <= budget:
                spec = GroupSpec(p=p, k=k, orders=orders, variant=g_variant)
                verdict.witness = witness_search(spec, k_orders=orders, budget=budget)
            elif p >= k + 1:
                verdict.witness = _structural_nilprod_witness(p, k, orders)
            else:
                verdict.witness = WitnessReport(
                    description="witness search",
                    verified=False,
                    mode="inconclusive",
                    reason="witness exceeds budget and no structural formula applies",
                )
        return verdict

    if k < p:
        if r > 1 and orders[-1] == orders[-2]:
            return attach(
                Verdict(CAPABLE, "small-class criterion: two largest orders equal", params)
            )
        return Verdict(
            NOT_CAPABLE,
            "small-class criterion: needs r > 1 and equal two largest orders",
            params,
        )
    if k == 2 and p == 2:
        if r > 1 and orders[-1] <= orders[-2] + 1:
            return attach(
                Verdict(CAPABLE, "2-nilpotent products of 2-groups: bound a_r <= a_{r-1}+1", params)
            )
        return Verdict(
            NOT_CAPABLE,
            "2-nilpotent products of 2-groups: bound a_r <= a_{r-1}+1 violated",
            params,
        )
    if not necessity_check(p, k, orders):
        return Verdict(
            NOT_CAPABLE,
            f"necessity bound violated: a_r > a_{{r-1}} + {slack}",
            params,
        )
    verdict = Verdict(
        UNKNOWN,
        "open regime (k >= p, not 2-nilpotent-2-group): necessity holds, sufficiency unknown",
        params,
    )
    if want_witness:
        report = witness_search(
            GroupSpec(p=p, k=k, orders=orders, variant=g_variant), budget=budget
        )
        verdict.witness = report
        if report.verified:
            verdict.status = CAPABLE
            verdict.justification = "verified witness: central quotient realizes the group"
    return verdict


# -- the 2-generator class-2 family -------------------------------------------


def build_presentation11(p: int, pres: Presentation11, budget: int = engine.DEFAULT_BUDGET):
    """Realize the 2-generator class-2 presentation as a quotient of the
    2-nilpotent product of C_{p^alpha} and C_{p^beta}.

    Returns (view, assignment) with assignment mapping 'a' and 'b' to ids.
    """
    pres.validate(p)
    a, b, gmm, sgm = pres.alpha, pres.beta, pres.gamma, pres.sigma
    orders = tuple(sorted((a, b)))
    spec = GroupSpec(p=p, k=2, orders=orders)
    base = engine.build_group(spec, budget)
    if a <= b:
        gen_a, gen_b = base.generators[0], base.generators[1]
    else:
        gen_a, gen_b = base.generators[1], base.generators[0]
    assign = {"a": gen_a, "b": gen_b}
    rel1 = Power(Bracket((Gen("b"), Gen("a"))), p**gmm)
    rel2 = Product((
        Power(Gen("a"), p ** (a + sgm - gmm)),
        Power(Bracket((Gen("b"), Gen("a"))), p**sgm),
    ))
    values = [engine.evaluate_in_view(base, w, assign) for w in (rel1, rel2)]
    nontrivial = [v for v in values if v != base.identity]
    if not nontrivial:
        return base, assign
    n = engine.normal_closure(base, nontrivial)
    q, proj = engine.quotient(base, n)
    return q, {"a": proj(gen_a), "b": proj(gen_b)}


def presentation11_words(p: int, pres: Presentation11):
    """Defining relator words of the presentation, over names a and b."""
    a, b, gmm, sgm = pres.alpha, pres.beta, pres.gamma, pres.sigma
    ba = Bracket((Gen("b"), Gen("a")))
    return [
        _power_word("a", p**a),
        _power_word("b", p**b),
        Power(ba, p**gmm),
        Bracket((Gen("a"), Gen("b"), Gen("a"))),
        Bracket((Gen("a"), Gen("b"), Gen("b"))),
        Product((Power(Gen("a"), p ** (a + sgm - gmm)), Power(ba, p**sgm))),
    ]


def capable_presentation11(
    p: int,
    alpha: int,
    beta: int,
    gamma: int,
    sigma: int,
    want_witness: bool = False,
    budget: int = engine.DEFAULT_BUDGET,
) -> Verdict:
    """Capability of the 2-generator class-2 group with the given invariants:
    capable iff alpha = beta."""
    pres = Presentation11(alpha, beta, gamma, sigma)
    pres.validate(p)
    params = {"p": p, "alpha": alpha, "beta": beta, "gamma": gamma, "sigma": sigma}
    family = "coproduct-type (sigma = gamma)" if sigma == gamma else (
        "split metacyclic (sigma = 0)" if sigma == 0 else "intermediate (0 < sigma < gamma)"
    )
    if alpha != beta:
        return Verdict(
            NOT_CAPABLE,
            f"type-invariant criterion: alpha != beta [{family}]",
            params,
        )
    verdict = Verdict(CAPABLE, f"type-invariant criterion: alpha = beta [{family}]", params)
    if want_witness:
        if sigma == gamma:
            verdict.witness = witness_quotient_family(
                p, (alpha, beta), {(2, 1): gamma}, budget=budget
            )
        else:
            verdict.witness = witness_presentation11(p, alpha, gamma, sigma, budget=budget)
    return verdict


def witness_quotient_family(
    p: int,
    orders,
    betas,
    budget: int = engine.DEFAULT_BUDGET,
) -> WitnessReport:
    """Witness for quotients of the 2-nilpotent product by central commutator
    powers [xj,xi]^(p^b_ji).

    H is the 3-nilpotent product, M the normal closure of the weight-3 powers
    [xj,xi,xk]^(p^b_ji); the center of Q = H/M is checked against
    <Q_3, x_r^(p^a_{r-1}), [xj,xi]^(p^b_ji)> and the certificate is run
    against G = (2-nilpotent product)/<[xj,xi]^(p^b_ji)>.
    """
    orders = tuple(sorted(int(a) for a in orders))
    r = len(orders)
    if p < 3:
        raise SpecError("the quotient-family witness needs an odd prime")
    if r < 2 or orders[-1] != orders[-2]:
        raise SpecError("capability needs r > 1 with the two largest orders equal")
    if isinstance(betas, int):
        betas = {(j, i): betas for j in range(2, r + 1) for i in range(1, j)}
    for (j, i), bji in betas.items():
        if not (1 <= i < j <= r):
            raise SpecError(f"bad pair ({j},{i})")
        if not 1 <= bji <= orders[i - 1]:
            raise SpecError(f"need 1 <= beta_{j}{i} <= a_{i}, got {bji}")

    h = engine.build_group(GroupSpec(p=p, k=3, orders=orders), budget)
    gens = h.generators

    def beta_of(j, i):
        return betas.get((j, i), orders[i - 1])

    m_gens = set()
    for j in range(2, r + 1):
        for i in range(1, j):
            bji = beta_of(j, i)
            cji = h.comm(gens[j - 1], gens[i - 1])
            for kk in range(1, r + 1):
                v = h.pow(h.comm(cji, gens[kk - 1]), p**bji)
                if v != h.identity:
                    m_gens.add(v)
    if m_gens:
        m = engine.normal_closure(h, m_gens)
        q, proj = engine.quotient(h, m)
    else:
        m = None
        q, proj = h, (lambda x: x)

    # center formula: weight-3 coordinates + x_r^(p^a_{r-1}) + [xj,xi]^(p^b_ji)
    formula_gens = []
    for idx, c in enumerate(h.basis.entries):
        if c.weight == 3:
            val = h.kernel.id_of_coords(
                tuple(1 if t == idx else 0 for t in range(len(h.basis.entries)))
            )
            formula_gens.append(proj(val))
    formula_gens.append(proj(h.pow(gens[-1], p ** orders[-2])))
    for j in range(2, r + 1):
        for i in range(1, j):
            formula_gens.append(
                proj(h.pow(h.comm(gens[j - 1], gens[i - 1]), p ** beta_of(j, i)))
            )
    formula = engine.subgroup_closure(q, [x for x in formula_gens if x != q.identity])
    zq = engine.center(q)
    center_matches = formula.member_set == zq.member_set

    rel_words = [
        Power(Bracket((Gen(f"x{j}"), Gen(f"x{i}"))), p ** beta_of(j, i))
        for j in range(2, r + 1)
        for i in range(1, j)
    ]
    g = engine.build_group(GroupSpec(p=p, k=2, orders=orders, relators=tuple(rel_words)), budget)
    report = _certify_central_quotient(q, g, list(g.generators), {"|H|": h.order})
    report.description = f"quotient-family witness: 3-nilpotent product / weight-3 powers"
    report.orders["|M|"] = h.order // q.order
    if not center_matches:
        report.verified = False
        report.reason = (report.reason + "; " if report.reason else "") + (
            "center differs from the structural generator list"
        )
    if not report.verified:
        report.mode = "inconclusive"
    return report


def witness_presentation11(
    p: int,
    alpha: int,
    gamma: int,
    sigma: int,
    budget: int = engine.DEFAULT_BUDGET,
) -> WitnessReport:
    """Witness chain for the alpha = beta, sigma < gamma presentations:
    H (3-nilpotent product of two C_{p^alpha}) -> K -> L -> M by successive
    central-izing quotients; M/Z(M) must realize the presented group."""
    pres = Presentation11(alpha, alpha, gamma, sigma)
    pres.validate(p)
    if not sigma < gamma:
        raise SpecError("this witness chain is for sigma < gamma; use the quotient family")
    h = engine.build_group(GroupSpec(p=p, k=3, orders=(alpha, alpha)), budget)

    def chain_elems(v):
        x, y = v.generators
        yx = v.comm(y, x)
        return yx, v.comm(yx, x), v.comm(yx, y)

    def quotient_by(v, vals):
        vals = [g for g in vals if g != v.identity]
        if not vals:
            return v
        n = engine.normal_closure(v, vals)
        q, _ = engine.quotient(v, n)
        return q

    view = h
    yx, yxx, yxy = chain_elems(view)
    view = quotient_by(view, [view.pow(yxx, p**gamma), view.pow(yxy, p**gamma)])
    yx, yxx, yxy = chain_elems(view)
    view = quotient_by(view, [view.pow(yxx, p**sigma)])
    yx, yxx, yxy = chain_elems(view)
    view = quotient_by(
        view,
        [view.mul(view.pow(yx, p ** (alpha + sigma - gamma)), view.pow(yxy, -(p**sigma)))],
    )

    g, assign = build_presentation11(p, pres, budget)
    gen_images = [assign["a"], assign["b"]]
    report = _certify_central_quotient(view, g, gen_images, {"|H|": h.order})
    report.description = "presentation witness chain H -> K -> L -> M"
    words = presentation11_words(p, pres)
    central = engine.check_words_central(view, words, {"a": view.generators[0], "b": view.generators[1]})
    if not central:
        report.verified = False
        report.reason = (report.reason + "; " if report.reason else "") + (
            "presentation relators are not central in the final stage"
        )
    if not report.verified:
        report.mode = "inconclusive"
    return report


# -- extra-special groups -------------------------------------------------------

_ODD_KINDS = ("exponent_p", "exponent_p_squared")
_TWO_KINDS = ("dihedral", "quaternion")


def capable_extraspecial(p: int, n: int, kind: str) -> Verdict:
    """Classification of capable extra-special p-groups (order p^n, n odd).

    Only the dihedral group of order 8 and the order-p^3 group of exponent p
    (p odd) are capable; every larger extra-special group is not.
    """
    if n < 3 or n % 2 == 0:
        raise SpecError(f"extra-special groups have odd order exponent n >= 3, got {n}")
    if p == 2:
        if n == 3 and kind not in _TWO_KINDS:
            raise SpecError(f"for p=2, order 8, kind must be one of {_TWO_KINDS}")
    else:
        if n == 3 and kind not in _ODD_KINDS:
            raise SpecError(f"for odd p, order p^3, kind must be one of {_ODD_KINDS}")
    params = {"p": p, "n": n, "kind": kind}
    if n == 3:
        if p == 2 and kind == "dihedral":
            return Verdict(CAPABLE, "extra-special classification: dihedral of order 8", params)
        if p > 2 and kind == "exponent_p":
            return Verdict(
                CAPABLE, "extra-special classification: order p^3, exponent p", params
            )
    return Verdict(
        NOT_CAPABLE, "extra-special classification: only D8 and p^3 of exponent p", params
    )


def extraspecial_p5_relators():
    """Relators of the order-p^5 extra-special showcase on four generators:
    [x3,x1] = [x3,x2] = [x4,x1] and [x4,x2] = [x4,x3] = [x2,x1] = e."""
    def br(j, i):
        return Bracket((Gen(f"x{j}"), Gen(f"x{i}")))

    return (
        Product((br(3, 1), Power(br(3, 2), -1))),
        Product((br(3, 2), Power(br(4, 1), -1))),
        br(4, 2),
        br(4, 3),
        br(2, 1),
    )


def build_extraspecial_p5(p: int, budget: int = engine.DEFAULT_BUDGET):
    """The extra-special group of order p^5 (p odd) that defeats the necessity
    bound: its generator orders pass the check, yet it is not capable."""
    if p == 2:
        raise SpecError("the p^5 showcase needs an odd prime")
    spec = GroupSpec(p=p, k=2, orders=(1, 1, 1, 1), relators=extraspecial_p5_relators())
    return engine.build_group(spec, budget)


def extraspecial_p5_spec(p: int) -> GroupSpec:
    return GroupSpec(p=p, k=2, orders=(1, 1, 1, 1), relators=extraspecial_p5_relators())
