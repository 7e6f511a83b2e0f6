"""Finite-group machinery over normal forms: enumeration, subgroup and normal
closures, lower central series, centers, and quotient groups.

Views expose elements as local ids in [0, order); id 0 is the identity.
Nilprod views enumerate exponent vectors in mixed radix; quotient views are
flattened onto the root nilpotent product and work with canonical coset
representatives (least root id in the coset).
"""

from __future__ import annotations

import numpy as np

from .arith import INFINITY
from .collector import NormalForm, kernel_for
from .errors import BudgetExceeded, SpecError
from .hallbasis import assign_moduli, build_basis
from .specs import GroupSpec
from . import words as _words

DEFAULT_BUDGET = 2_000_000


class NilprodView:
    """The k-nilpotent product of cyclic p-groups, fully enumerable."""

    def __init__(self, basis, spec: GroupSpec | None = None):
        self.basis = basis
        self.kernel = kernel_for(basis)
        self.order = self.kernel.order
        self.identity = 0
        self.generators = tuple(self.kernel.gen_ids)
        self.spec = spec
        self._lcs = None

    @property
    def root(self):
        return self

    def elements(self):
        return range(self.order)

    def mul(self, a: int, b: int) -> int:
        return self.kernel.id_mul(a, b)

    def inv(self, a: int) -> int:
        return self.kernel.id_inv(a)

    def pow(self, a: int, e: int) -> int:
        return self.kernel.id_pow(a, e)

    def comm(self, a: int, b: int) -> int:
        return self.kernel.id_comm(a, b)

    def conj(self, a: int, g: int) -> int:
        return self.kernel.id_conj(a, g)

    def nf(self, a: int) -> NormalForm:
        return NormalForm.from_id(self.basis, a)

    def to_root(self, a: int) -> int:
        return a

    def from_root(self, h: int) -> int:
        return h

    def describe(self) -> str:
        return f"nilprod(p={self.basis.p}, k={self.basis.k}, orders={self.basis.orders}, variant={self.basis.variant})"


class QuotientView:
    """G/N for a nilprod root G, represented by least-id coset representatives."""

    def __init__(self, root: NilprodView, normal_members, check_subgroup: bool = True):
        self.root = root
        members = sorted(int(m) for m in normal_members)
        if not members or members[0] != 0:
            raise SpecError("normal subgroup must contain the identity")
        self.n_members = members
        reps = root.kernel.coset_reps(members)
        self.reps = np.asarray(reps, dtype=np.int64)
        elems = np.unique(self.reps)
        self.elems = elems
        self.index = {int(h): i for i, h in enumerate(elems)}
        self.order = len(elems)
        if root.order % self.order or self.order * len(members) != root.order:
            raise SpecError("coset decomposition is inconsistent; subgroup not closed?")
        self.identity = self.index[0]
        self.generators = tuple(self.from_root(g) for g in root.generators)
        self._lcs = None

    def elements(self):
        return range(self.order)

    def from_root(self, h: int) -> int:
        return self.index[int(self.reps[h])]

    def to_root(self, a: int) -> int:
        return int(self.elems[a])

    def mul(self, a: int, b: int) -> int:
        return self.index[int(self.reps[self.root.mul(self.to_root(a), self.to_root(b))])]

    def inv(self, a: int) -> int:
        return self.index[int(self.reps[self.root.inv(self.to_root(a))])]

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.inv(a), -e
        acc = self.identity
        base = a
        while e:
            if e & 1:
                acc = self.mul(acc, base)
            e >>= 1
            if e:
                base = self.mul(base, base)
        return acc

    def comm(self, a: int, b: int) -> int:
        ab = self.mul(a, b)
        ba = self.mul(b, a)
        return self.mul(self.inv(ba), ab)

    def conj(self, a: int, g: int) -> int:
        return self.mul(self.inv(g), self.mul(a, g))

    def nf(self, a: int) -> NormalForm:
        return self.root.nf(self.to_root(a))

    @property
    def basis(self):
        return self.root.basis

    def describe(self) -> str:
        return f"{self.root.describe()} / N of order {len(self.n_members)}"


class Subgroup:
    """A subgroup of a view, closed by construction; carries its generators."""

    def __init__(self, view, members, gens):
        self.view = view
        self.members = tuple(sorted(int(m) for m in members))
        self.member_set = frozenset(self.members)
        self.gens = tuple(int(g) for g in gens)
        if 0 not in self.member_set:
            raise SpecError("subgroup must contain the identity")

    @property
    def order(self) -> int:
        return len(self.members)

    def __contains__(self, x: int) -> bool:
        return int(x) in self.member_set

    def __eq__(self, other):
        return isinstance(other, Subgroup) and self.view is other.view and self.member_set == other.member_set

    def __hash__(self):
        return hash(self.member_set)


def build_group(spec: GroupSpec, budget: int = DEFAULT_BUDGET):
    """Realize a GroupSpec as an enumerable view.

    Orders are normalized ascending (the convention every capability
    criterion is stated in); the sorting permutation is recorded on the view
    as .order_permutation.
    """
    spec.validate()
    if spec.presentation11 is not None:
        raise SpecError("presentation11 specs are built by capability.build_presentation11")
    sorted_orders = spec.sorted_orders()
    perm = tuple(sorted(range(len(spec.orders)), key=lambda i: spec.orders[i]))
    basis = assign_moduli(build_basis(len(sorted_orders), spec.k), spec.p, sorted_orders, spec.variant)
    if basis.group_order > budget:
        raise BudgetExceeded(basis.group_order, budget)
    view = NilprodView(basis, spec)
    view.order_permutation = perm
    if spec.relators:
        from .collector import evaluate_word

        rel_ids = [evaluate_word(ast, {}, basis).to_id() for ast in spec.relators]
        n = normal_closure(view, rel_ids)
        q, _ = quotient(view, n)
        q.order_permutation = perm
        q.spec = spec
        return q
    return view


def subgroup_closure(view, gens) -> Subgroup:
    """Smallest subgroup containing gens: BFS under right multiplication."""
    gens = [int(g) for g in gens]
    step = []
    for g in gens:
        step.append(g)
        step.append(view.inv(g))
    members = {view.identity}
    frontier = [view.identity]
    while frontier:
        new = []
        for x in frontier:
            for g in step:
                y = view.mul(x, g)
                if y not in members:
                    members.add(y)
                    new.append(y)
        frontier = new
    return Subgroup(view, members, gens)


def normal_closure(view, gens) -> Subgroup:
    """Smallest normal subgroup containing gens: close under conjugation by
    the view's generators, then take the subgroup closure, to a fixpoint."""
    work = [int(g) for g in gens]
    sub = subgroup_closure(view, work)
    conjugators = []
    for g in view.generators:
        conjugators.append(g)
        conjugators.append(view.inv(g))
    changed = True
    while changed:
        changed = False
        for t in list(work):
            for g in conjugators:
                c = view.conj(t, g)
                if c not in sub:
                    work.append(c)
                    sub = subgroup_closure(view, work)
                    changed = True
    return Subgroup(view, sub.members, work)


def center(view) -> Subgroup:
    """Brute-force center: everything commuting with the generators."""
    if isinstance(view, NilprodView):
        members = view.kernel.centralizer(list(view.generators))
    else:
        members = []
        gens = view.generators
        for x in view.elements():
            if all(view.mul(x, g) == view.mul(g, x) for g in gens):
                members.append(x)
    return Subgroup(view, members, members)


def lower_central_series(view) -> list[Subgroup]:
    """G = G1 >= G2 >= ... down to the trivial subgroup, by definition:
    G_{n+1} is the normal closure of [gens(G_n), gens(G)]."""
    if getattr(view, "_lcs", None) is not None:
        return view._lcs
    whole = Subgroup(view, list(view.elements()), view.generators)
    series = [whole]
    current_gens = list(view.generators)
    while True:
        prev = series[-1]
        if prev.order == 1:
            break
        commutators = set()
        for a in current_gens:
            for g in view.generators:
                c = view.comm(a, g)
                if c != view.identity:
                    commutators.add(c)
        nxt = normal_closure(view, commutators) if commutators else Subgroup(view, [view.identity], [])
        if nxt.order == prev.order:
            raise SpecError("lower central series did not descend; not nilpotent?")
        series.append(nxt)
        current_gens = list(nxt.gens)
        if nxt.order == 1:
            break
    view._lcs = series
    return series


def weight_W(view, g: int):
    """Largest k with g in G_k; INFINITY for the identity."""
    if g == view.identity:
        return INFINITY
    series = lower_central_series(view)
    w = 1
    for i, term in enumerate(series):
        if g in term:
            w = i + 1
        else:
            break
    return w


def quotient(view, n: Subgroup):
    """G/N with a projection map; N must be normal in view (checked)."""
    if n.view is not view:
        raise SpecError("subgroup belongs to a different view")
    for t in n.gens:
        for g in view.generators:
            if view.conj(t, g) not in n or view.conj(t, view.inv(g)) not in n:
                raise SpecError("subgroup is not normal; cannot form the quotient")
    root = view.root
    if isinstance(view, NilprodView):
        root_members = n.members
    else:
        in_n = frozenset(view.to_root(m) for m in n.member_set)
        root_members = [
            h for h in range(root.order) if int(view.reps[h]) in in_n
        ]
    q = QuotientView(root, root_members)

    def project(a: int) -> int:
        return q.index[int(q.reps[view.to_root(a)])]

    return q, project


def evaluate_in_view(view, ast, assignment: dict) -> int:
    """Evaluate a word AST to a local id; x1..xr default to the generators."""

    def resolve(name: str) -> int:
        if name in assignment:
            return int(assignment[name])
        if name.startswith("x") and name[1:].isdigit():
            i = int(name[1:])
            if 1 <= i <= len(view.generators):
                return view.generators[i - 1]
        raise SpecError(f"unbound name {name!r} in word")

    def ev(node) -> int:
        if isinstance(node, _words.Identity):
            return view.identity
        if isinstance(node, _words.Gen):
            return resolve(node.name)
        if isinstance(node, _words.Power):
            return view.pow(ev(node.base), node.exp)
        if isinstance(node, _words.Product):
            acc = view.identity
            for item in node.items:
                acc = view.mul(acc, ev(item))
            return acc
        if isinstance(node, _words.Bracket):
            vals = [ev(item) for item in node.items]
            acc = vals[0]
            for v in vals[1:]:
                acc = view.comm(acc, v)
            return acc
        raise SpecError(f"unknown AST node {node!r}")

    return ev(ast)


def check_words_central(view, word_asts, assignment: dict) -> bool:
    """True iff every word evaluates into the center of the view."""
    z = center(view)
    return all(evaluate_in_view(view, ast, assignment) in z for ast in word_asts)


def element_order(view, a: int) -> int:
    n = 1
    x = a
    while x != view.identity:
        x = view.mul(x, a)
        n += 1
    return n
