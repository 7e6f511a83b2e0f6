"""Brute-force verifiers for the identities behind the collection process,
the exponent-bound machinery, the center formulas, and the order formula.

These checks never consult the structural formulas they test: centers and
series are recomputed from the definitions, orders by breadth-first
enumeration from the generators, and the power-commutator identities by
evaluating both sides elementwise.  Sampling is seeded and echoed in the
report so any failure is replayable.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from . import engine
from .arith import binomial2
from .errors import SpecError
from .hallbasis import K3P2
from .specs import GroupSpec

PASS = "PASS"
FAIL = "FAIL"
NOT_APPLICABLE = "NOT_APPLICABLE"

IDENTITY_CHECKS = (
    "EQ1",
    "EQ2",
    "EQ3",
    "EQ4",
    "P23_II",
    "P23_IV",
    "H1",
    "H2",
    "H2PRIME",
    "HALL1231",
)


@dataclass
class CheckReport:
    check: str
    group: str
    samples: int
    failures: list = field(default_factory=list)
    status: str = PASS
    seed: int | None = None
    detail: str = ""

    def to_dict(self) -> dict:
        return {
            "check": self.check,
            "group": self.group,
            "samples": self.samples,
            "failures": list(self.failures),
            "status": self.status,
            "seed": self.seed,
            "detail": self.detail,
        }


def _series_term(view, n: int):
    """G_n from the computed lower central series; trivial beyond its length."""
    series = engine.lower_central_series(view)
    if n - 1 < len(series):
        return series[n - 1]
    return series[-1]


def _fail(report: CheckReport, *elems) -> None:
    if len(report.failures) < 5:
        report.failures.append(" ; ".join(str(view_nf) for view_nf in elems))
    report.status = FAIL


def _triples(view, samples: int, rng) -> list:
    if view.order**3 <= 30_000:
        return [
            (x, y, z)
            for x in view.elements()
            for y in view.elements()
            for z in view.elements()
        ]
    return [
        (rng.randrange(view.order), rng.randrange(view.order), rng.randrange(view.order))
        for _ in range(samples)
    ]


def verify_identity(check: str, view, samples: int = 200, seed: int = 0) -> CheckReport:
    """Evaluate both sides of one of the power-commutator identities."""
    if check not in IDENTITY_CHECKS:
        raise SpecError(f"unknown identity check {check!r}; one of {IDENTITY_CHECKS}")
    rng = random.Random(seed)
    report = CheckReport(check=check, group=view.describe(), samples=samples, seed=seed)
    v = view

    def rnd():
        return rng.randrange(v.order)

    if check == "EQ1":
        # [xy,z] = [x,z] [x,z,y] [y,z]
        trips = _triples(v, samples, rng)
        report.samples = len(trips)
        for x, y, z in trips:
            lhs = v.comm(v.mul(x, y), z)
            xz = v.comm(x, z)
            rhs = v.mul(v.mul(xz, v.comm(xz, y)), v.comm(y, z))
            if lhs != rhs:
                _fail(report, v.nf(x), v.nf(y), v.nf(z))
    elif check == "EQ2":
        # [x,yz] = [x,z] [z,[y,x]] [x,y]
        trips = _triples(v, samples, rng)
        report.samples = len(trips)
        for x, y, z in trips:
            lhs = v.comm(x, v.mul(y, z))
            rhs = v.mul(v.mul(v.comm(x, z), v.comm(z, v.comm(y, x))), v.comm(x, y))
            if lhs != rhs:
                _fail(report, v.nf(x), v.nf(y), v.nf(z))
    elif check in ("EQ3", "EQ4"):
        g4 = _series_term(v, 4)
        for _ in range(samples):
            a, b = rnd(), rnd()
            r, s = rng.randrange(-6, 7), rng.randrange(-6, 7)
            ab = v.comm(a, b)
            aba = v.comm(ab, a)
            abb = v.comm(ab, b)
            if check == "EQ3":
                lhs = v.comm(v.pow(a, r), v.pow(b, s))
                rhs = v.mul(
                    v.mul(v.pow(ab, r * s), v.pow(aba, s * binomial2(r))),
                    v.pow(abb, r * binomial2(s)),
                )
            else:
                lhs = v.comm(v.pow(b, r), v.pow(a, s))
                rhs = v.mul(
                    v.mul(v.pow(ab, -r * s), v.pow(aba, -r * binomial2(s))),
                    v.pow(abb, -s * binomial2(r)),
                )
            if v.mul(lhs, v.inv(rhs)) not in g4:
                _fail(report, v.nf(a), v.nf(b), f"r={r}", f"s={s}")
    elif check == "P23_II":
        # [prod a_i^u_i, prod b_j^w_j] = prod [a_i,b_j]^(u_i w_j)  mod G_{w1+w2+1}
        for _ in range(samples):
            w1 = rng.choice((1, 1, 2))
            w2 = 1
            t1 = _series_term(v, w1)
            a1, a2 = rng.choice(t1.members), rng.choice(t1.members)
            b1, b2 = rnd(), rnd()
            u1, u2, w1e, w2e = (rng.randrange(-4, 5) for _ in range(4))
            lhs = v.comm(
                v.mul(v.pow(a1, u1), v.pow(a2, u2)),
                v.mul(v.pow(b1, w1e), v.pow(b2, w2e)),
            )
            rhs = v.identity
            for ai, ui in ((a1, u1), (a2, u2)):
                for bj, wj in ((b1, w1e), (b2, w2e)):
                    rhs = v.mul(rhs, v.pow(v.comm(ai, bj), ui * wj))
            if v.mul(lhs, v.inv(rhs)) not in _series_term(v, w1 + w2 + 1):
                _fail(report, v.nf(a1), v.nf(a2), v.nf(b1), v.nf(b2))
    elif check == "P23_IV":
        # [a,b,c][b,c,a][c,a,b] = e  mod G_{W(a)+W(b)+W(c)+1}
        for _ in range(samples):
            a, b, c = rnd(), rnd(), rnd()
            ws = 0
            for t in (a, b, c):
                w = engine.weight_W(v, t)
                ws += v.basis.k + 1 if w == engine.INFINITY else w
            prod = v.mul(
                v.mul(v.comm(v.comm(a, b), c), v.comm(v.comm(b, c), a)),
                v.comm(v.comm(c, a), b),
            )
            if prod not in _series_term(v, min(ws + 1, v.basis.k + 2)):
                _fail(report, v.nf(a), v.nf(b), v.nf(c))
    else:
        return _verify_binomial_fit(check, view, samples, seed)
    return report


def _verify_binomial_fit(check: str, view, samples: int, seed: int) -> CheckReport:
    """Exponents of collected powers are integer binomial polynomials.

    For h(t) one of [x^t,y], [x,y^t], [x,y]^t, (xy)^t, every normal-form
    coordinate of h(t) is fitted (modulo its modulus) by sum a_j*C(t,j) with
    j <= class, using finite differences on t = 0..class; the fit must then
    predict t = class+1..8 exactly.
    """
    report = CheckReport(check=check, group=view.describe(), samples=samples, seed=seed)
    if not isinstance(view, engine.NilprodView):
        report.status = NOT_APPLICABLE
        report.detail = "binomial fits read normal-form coordinates; view is a quotient"
        return report
    rng = random.Random(seed)
    kernel = view.kernel
    kcl = view.basis.k
    top = 8
    if kcl + 1 > top:
        report.status = NOT_APPLICABLE
        report.detail = "class too high for out-of-sample points"
        return report

    def h(x, y, t):
        if check == "H1":
            return kernel.id_comm(kernel.id_pow(x, t), y)
        if check == "H2":
            return kernel.id_comm(x, kernel.id_pow(y, t))
        if check == "H2PRIME":
            return kernel.id_pow(kernel.id_comm(x, y), t)
        return kernel.id_pow(kernel.id_mul(x, y), t)  # HALL1231

    moduli = view.basis.moduli
    n = len(moduli)
    for _ in range(samples):
        x, y = rng.randrange(view.order), rng.randrange(view.order)
        rows = [kernel.coords_of_id(h(x, y, t)) for t in range(top + 1)]
        for i in range(n):
            m = moduli[i]
            if m == 1:
                continue
            vals = [row[i] % m for row in rows]
            # finite differences give the binomial-basis coefficients
            coefs = []
            level = list(vals)
            for _j in range(kcl + 1):
                coefs.append(level[0] % m)
                level = [(level[t + 1] - level[t]) % m for t in range(len(level) - 1)]
            for t in range(kcl + 1, top + 1):
                pred = 0
                binom = 1  # C(t, j)
                for j, cj in enumerate(coefs):
                    if j:
                        binom = binom * (t - j + 1) // j
                    pred = (pred + cj * binom) % m
                if pred != vals[t]:
                    _fail(
                        report,
                        view.nf(x),
                        view.nf(y),
                        f"coordinate {view.basis.entry_name(i)} at t={t}",
                    )
                    break
    return report


def verify_exponent_bounds(view, y: int, z: int, a: int) -> CheckReport:
    """Exponent bounds for <y,z> under the centrality hypothesis.

    If [z, y^(p^i), y] and [z, y^(p^i), z] are trivial for i = a..a+3, the
    terms <y,z>_(c-m) must have exponent dividing p^(a + floor(m/(p-1))) and
    [z^(p^N), y] = [z,y]^(p^N) = [z, y^(p^N)] at N = a + floor((c-2)/(p-1)),
    where c is the class of the ambient group.
    """
    p = view.basis.p
    report = CheckReport(
        check="EXPONENT_BOUNDS",
        group=view.describe(),
        samples=0,
        detail=f"y={view.nf(y)}, z={view.nf(z)}, a={a}",
    )
    for i in range(a, a + 4):
        ypi = view.pow(y, p**i)
        if (
            view.comm(view.comm(z, ypi), y) != view.identity
            or view.comm(view.comm(z, ypi), z) != view.identity
        ):
            report.status = NOT_APPLICABLE
            report.detail += f"; hypothesis fails at i={i}"
            return report

    series = _subgroup_series(view, (y, z))
    c = len(series) - 1  # class of <y,z>
    checks = 0
    for m in range(0, max(c - 2, 0)):
        term = series[c - m - 1] if c - m - 1 < len(series) else series[-1]
        bound = p ** (a + m // (p - 1))
        for t in term.members:
            checks += 1
            if view.pow(t, bound) != view.identity:
                _fail(report, view.nf(t), f"term {c - m}, bound p^{a + m // (p - 1)}")
    if c >= 2:
        n_exp = a + (c - 2) // (p - 1)
        big = p**n_exp
        lhs = view.comm(view.pow(z, big), y)
        mid = view.pow(view.comm(z, y), big)
        rhs = view.comm(z, view.pow(y, big))
        checks += 1
        if not (lhs == mid == rhs):
            _fail(report, view.nf(lhs), view.nf(mid), view.nf(rhs), f"N={n_exp}")
        report.detail += f"; N={n_exp}"
    report.samples = checks
    return report


def _subgroup_series(view, gens):
    """Lower central series of the subgroup generated by gens."""
    sub = engine.subgroup_closure(view, gens)
    series = [sub]
    current = list(gens)
    while series[-1].order > 1:
        comms = set()
        for t in current:
            for g in gens:
                cc = view.comm(t, g)
                if cc != view.identity:
                    comms.add(cc)
        if not comms:
            series.append(engine.Subgroup(view, [view.identity], []))
            break
        nxt_gens = list(comms)
        # close under conjugation by the subgroup's generators
        closed = engine.subgroup_closure(view, nxt_gens)
        changed = True
        while changed:
            changed = False
            for t in list(nxt_gens):
                for g in gens:
                    c1 = view.conj(t, g)
                    c2 = view.conj(t, view.inv(g))
                    for c in (c1, c2):
                        if c not in closed:
                            nxt_gens.append(c)
                            closed = engine.subgroup_closure(view, nxt_gens)
                            changed = True
        if closed.order == series[-1].order:
            raise SpecError("subgroup series did not descend")
        series.append(closed)
        current = nxt_gens
    return series


def verify_center_theorem(spec: GroupSpec, budget: int = engine.DEFAULT_BUDGET) -> CheckReport:
    """Brute-force center == structural generator list, element for element.

    Formulas: class 2 -> <x_r^(p^a_{r-1}), G_2>; standard p >= k ->
    <x_r^(p^a_{r-1}), G_k>; k3p2 -> <x_r^(2^(a+1)), G_3, [xj,xi]^(2^a_i)>.
    """
    spec.validate()
    view = engine.build_group(spec, budget)
    p = spec.p
    orders = spec.sorted_orders()
    r = len(orders)
    report = CheckReport(check="CENTER_THEOREM", group=view.describe(), samples=view.order)
    if r < 2:
        cyc = engine.center(view)
        if cyc.order != view.order:
            _fail(report, "cyclic group must be abelian")
        return report
    gens = view.generators
    formula_gens = []
    if spec.variant == K3P2:
        alpha = orders[-2]
        formula_gens.append(view.pow(gens[-1], 2 ** (alpha + 1)))
        formula_gens.extend(_series_term(view, 3).gens)
        for j in range(2, r + 1):
            for i in range(1, j):
                formula_gens.append(
                    view.pow(view.comm(gens[j - 1], gens[i - 1]), 2 ** orders[i - 1])
                )
    else:
        formula_gens.append(view.pow(gens[-1], p ** orders[-2]))
        formula_gens.extend(_series_term(view, spec.k).gens)
    formula = engine.subgroup_closure(view, [g for g in formula_gens if g != view.identity])
    z = engine.center(view)
    if formula.member_set != z.member_set:
        extra = sorted(z.member_set - formula.member_set)[:3]
        missing = sorted(formula.member_set - z.member_set)[:3]
        _fail(
            report,
            f"|Z|={z.order}, |formula|={formula.order}",
            f"in Z only: {[str(view.nf(t)) for t in extra]}",
            f"in formula only: {[str(view.nf(t)) for t in missing]}",
        )
    report.detail = f"|Z| = {z.order}"
    return report


def verify_struik_order(spec: GroupSpec, budget: int = engine.DEFAULT_BUDGET) -> CheckReport:
    """Breadth-first enumeration from the generators must hit exactly
    (product of moduli) elements."""
    spec.validate()
    if spec.relators:
        raise SpecError("the order formula applies to pure nilpotent products")
    view = engine.build_group(spec, budget)
    report = CheckReport(check="STRUIK_ORDER", group=view.describe(), samples=view.order)
    counted = view.kernel.bfs_order(list(view.generators))
    expected = view.basis.group_order
    if counted != expected:
        _fail(report, f"bfs found {counted}, moduli product is {expected}")
    report.detail = f"order {counted}"
    return report


def verify_group_axioms(view, samples: int = 100_000, seed: int = 0) -> CheckReport:
    """Associativity and inverses.

    Groups of order <= 5000 get the generator-triple criterion, which covers
    every triple: if (ab)s = a(bs) for all a, b in G and s in a generating
    set, associativity follows for all triples by induction on word length
    (Light's test).  Larger groups get sampled triples.
    """
    import numpy as np

    rng = random.Random(seed)
    report = CheckReport(check="GROUP_AXIOMS", group=view.describe(), samples=samples, seed=seed)
    if view.order <= 5000:
        gens = view.generators
        if isinstance(view, engine.NilprodView):
            tables = [np.asarray(view.kernel.col_products(s), dtype=np.int64) for s in gens]
            count = 0
            for a in view.elements():
                row = np.asarray(view.kernel.row_products(a), dtype=np.int64)
                for t in tables:
                    count += view.order
                    if not np.array_equal(t[row], row[t]):  # (ab)s vs a(bs)
                        bad = int(np.nonzero(t[row] != row[t])[0][0])
                        _fail(report, view.nf(a), view.nf(bad))
        else:
            count = 0
            for a in view.elements():
                for b in view.elements():
                    ab = view.mul(a, b)
                    for s in gens:
                        count += 1
                        if view.mul(ab, s) != view.mul(a, view.mul(b, s)):
                            _fail(report, view.nf(a), view.nf(b), view.nf(s))
        report.samples = count
        report.detail = "generator-triple criterion, exhaustive"
    else:
        for _ in range(samples):
            a, b, c = (rng.randrange(view.order) for _ in range(3))
            if view.mul(view.mul(a, b), c) != view.mul(a, view.mul(b, c)):
                _fail(report, view.nf(a), view.nf(b), view.nf(c))
        report.detail = "sampled triples"
    for _ in range(min(1000, view.order)):
        a = rng.randrange(view.order)
        if view.mul(a, view.inv(a)) != view.identity or view.mul(view.identity, a) != a:
            _fail(report, view.nf(a))
    return report


def run_identity_suite(spec: GroupSpec, samples: int = 120, seed: int = 0,
                       budget: int = engine.DEFAULT_BUDGET) -> list[CheckReport]:
    view = engine.build_group(spec, budget)
    return [verify_identity(c, view, samples=samples, seed=seed) for c in IDENTITY_CHECKS]


def _binom_bound_m_values(p: int, n: int) -> list[int]:
    """Small m, p-power neighborhoods, and the endpoint: the interesting spots
    of the divisibility bound without sweeping all of 1..p^n."""
    top = p**n
    ms = set(range(1, min(top, 10) + 1))
    q = p
    while q <= top:
        for m in (q - 1, q, q + 1):
            if 1 <= m <= top:
                ms.add(m)
        q *= p
    ms.add(top)
    return sorted(ms)


def verify_arith(samples: int = 200, seed: int = 0) -> list[CheckReport]:
    """The exact-arithmetic suite, against big-integer recomputation.

    * KUMMER: valuation of C(p^n, a) equals n - vp(a), exhaustively for
      p in {2,3,5}, n <= 6, with binomials computed incrementally.
    * BINOM_BOUND: random coefficient vectors never break the divisibility
      p^(n-d) | sum a_i C(p^n, i).
    * HALL_MAX: the brute-force maximum of floor((k-s)/(n-1)) + floor(log_n(s+1))
      equals floor(k/(n-1)) and is attained at s = n-1, for k <= 60, n <= 7.
    * VP_MUL: vp(a*p) = vp(a) + 1.
    """
    from .arith import binom_sum_bound, hall_bound_max, ilog, kummer_binom_val, vp

    rng = random.Random(seed)
    reports = []

    rep = CheckReport(check="KUMMER", group="-", samples=0, seed=seed)
    count = 0
    for p in (2, 3, 5):
        for n in range(1, 7):
            top = p**n
            binom = 1  # C(top, 0)
            for a in range(1, top + 1):
                binom = binom * (top - a + 1) // a
                count += 1
                val = 0
                b = binom
                while b % p == 0:
                    b //= p
                    val += 1
                if kummer_binom_val(p, n, a) != val:
                    _fail(rep, f"p={p} n={n} a={a}: {kummer_binom_val(p, n, a)} != {val}")
    rep.samples = count
    reports.append(rep)

    rep = CheckReport(check="BINOM_BOUND", group="-", samples=0, seed=seed)
    count = 0
    for p in (2, 3, 5):
        for n in range(1, 6):
            top = p**n
            binoms = [0]  # index i holds C(top, i)
            b = 1
            for i in range(1, top + 1):
                b = b * (top - i + 1) // i
                binoms.append(b)
            for m in _binom_bound_m_values(p, n):
                bound = p ** binom_sum_bound(p, n, m)
                reduced = [bi % bound for bi in binoms[: m + 1]]
                for _ in range(samples):
                    total = sum(rng.randrange(-10**6, 10**6) * reduced[i] for i in range(1, m + 1))
                    count += 1
                    if total % bound:
                        _fail(rep, f"p={p} n={n} m={m}")
    rep.samples = count
    reports.append(rep)

    rep = CheckReport(check="HALL_MAX", group="-", samples=0, seed=seed)
    count = 0
    for n in range(2, 8):
        for k in range(1, 61):
            best, arg = hall_bound_max(k, n)
            count += 1
            if best != k // (n - 1):
                _fail(rep, f"k={k} n={n}: max {best} != floor")
            if (k - arg) // (n - 1) + ilog(n, arg + 1) != best:
                _fail(rep, f"k={k} n={n}: reported argmax {arg} does not attain {best}")
            if k >= n - 1:
                if arg != n - 1:
                    _fail(rep, f"k={k} n={n}: argmax should be n-1, got {arg}")
            else:
                for s in range(1, arg):
                    if (k - s) // (n - 1) + ilog(n, s + 1) >= best:
                        _fail(rep, f"k={k} n={n}: argmax {arg} not minimal")
    rep.samples = count
    reports.append(rep)

    rep = CheckReport(check="VP_MUL", group="-", samples=samples, seed=seed)
    for _ in range(samples):
        p = rng.choice((2, 3, 5, 7))
        a = rng.randrange(1, 10**9)
        if vp(a * p, p) != vp(a, p) + 1:
            _fail(rep, f"p={p} a={a}")
    reports.append(rep)
    return reports
