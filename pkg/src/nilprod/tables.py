"""Flat lookup tables driving the collection kernels.

Everything a kernel needs is precomputed here, in pure Python, once per
basis: the bracket table [u,c] for Hall-valid pairs, and for every ordered
pair of basis atoms a > c the normal-form expansions used when a letter c^m
moves left past a run a^mu:

* class <= 3: the exact power-commutator rule
      (a^mu)^(c^m) = a^mu * A1^(m*mu) * A2^(m*C(mu,2)) * A3^(mu*C(m,2))
  with A1 = [a,c], A2 = [a,c,a], A3 = [a,c,c] as basis vectors (A2 and A3
  only arise for generator pairs; all correction terms of weight > 3 vanish).
* any class: conjugation rows cp = nf[a,c] and cn = nf[a,c^-1], replayed
  letterwise by the generic collection path and the reference collector.

The rows are bootstrapped through the collector itself in dependency order:
Hall-valid pairs are direct table lookups; their inverse rows reduce to
words in the bracket chain [a,c], [a,c,c], ... whose own rows have strictly
larger weight sum; non-basic brackets are collected from their defining
generator words, which provably touch only Hall-valid pairs.
"""

from __future__ import annotations

from .errors import SpecError
from .hallbasis import K3P2, SQ_L, SQ_R, HallBasis

DROPPED = -1
NONHALL = -2

MAX_TABLE_ATOMS = 512


class KernelData:
    """Plain-array description of one Hall basis, shared by both kernels."""

    def __init__(self, basis: HallBasis):
        entries = basis.entries
        n = len(entries)
        if n > MAX_TABLE_ATOMS:
            raise SpecError(f"basis has {n} atoms; kernel tables cap at {MAX_TABLE_ATOMS}")
        self.basis = basis
        self.n = n
        self.kclass = basis.k
        self.r = basis.r
        self.p = basis.p
        self.k3p2 = basis.variant == K3P2
        self.weight = [c.weight for c in entries]
        self.moduli = list(basis.moduli)
        index = {c.key(): i for i, c in enumerate(entries)}
        self.gen_atoms = [index[(1, g)] for g in range(1, basis.r + 1)]
        self.left = [-1 if c.is_leaf() else index[c.left.key()] for c in entries]
        self.right = [-1 if c.is_leaf() else index[c.right.key()] for c in entries]

        # comm_atom[u][c]: basis index of [u,c] for Hall-valid pairs, DROPPED
        # if the weight exceeds the class, NONHALL otherwise.
        comm_atom = [[NONHALL] * n for _ in range(n)]
        for i in range(n):
            if self.left[i] >= 0:
                comm_atom[self.left[i]][self.right[i]] = i
        for u in range(n):
            wu = self.weight[u]
            for v in range(u):
                if comm_atom[u][v] == NONHALL and wu + self.weight[v] > self.kclass:
                    comm_atom[u][v] = DROPPED
        self.comm_atom = comm_atom

        # SQ-slot partners: for each weight-2 atom [xj,xi], the indices of the
        # [xj,xi,xi] (SQ_R) and [xj,xi,xj] (SQ_L) slots, or -1.
        self.sqr_of = [-1] * n
        self.sql_of = [-1] * n
        if self.k3p2:
            for i, kind in enumerate(basis.kinds):
                if kind == SQ_R:
                    self.sqr_of[self.left[i]] = i
                elif kind == SQ_L:
                    self.sql_of[self.left[i]] = i

        empty = ()
        self.a1 = [empty] * (n * n)
        self.a2 = [empty] * (n * n)
        self.a3 = [empty] * (n * n)
        self.cp = [empty] * (n * n)  # letters of nf [a, c]
        self.cn = [empty] * (n * n)  # letters of nf [a, c^-1]
        self._build_pair_tables()

    def _chain(self, a: int, c: int) -> list[int]:
        """[a,c], [a,c,c], ... until the weight cap drops the bracket."""
        out = []
        x = a
        while True:
            x = self.comm_atom[x][c]
            if x == NONHALL:
                raise AssertionError(f"bracket chain hit a non-Hall pair below ({a},{c})")
            if x == DROPPED:
                return out
            out.append(x)

    def _dfn(self, idx: int) -> list:
        """Defining generator word of a basis atom."""
        if self.left[idx] < 0:
            return [(idx, 1)]
        u = self._dfn(self.left[idx])
        v = self._dfn(self.right[idx])
        inv_u = [(t, -e) for (t, e) in reversed(u)]
        inv_v = [(t, -e) for (t, e) in reversed(v)]
        return inv_u + inv_v + u + v

    def _build_pair_tables(self) -> None:
        from ._kernel_py import Kernel

        n, k = self.n, self.kclass
        boot = Kernel(self)  # reads the row lists in place as they fill up

        def row_of(vec) -> tuple:
            return tuple((b, q) for b, q in enumerate(vec) if q)

        hall, nonhall = [], []
        for a in range(n):
            for c in range(a):
                if self.weight[a] + self.weight[c] > k:
                    continue
                (hall if self.comm_atom[a][c] != NONHALL else nonhall).append((a, c))

        for a, c in hall:
            self.cp[a * n + c] = self.a1[a * n + c] = ((self.comm_atom[a][c], 1),)
        if k <= 3:
            # the exact class<=3 correction atoms [a,c,a] and [a,c,c]; these
            # must exist before any bootstrap collection below
            for a, c in hall:
                if self.weight[a] == 1 and self.weight[c] == 1:
                    pa = a * n + c
                    w2 = self.comm_atom[a][c]
                    a2 = self.comm_atom[w2][a]
                    a3 = self.comm_atom[w2][c]
                    if a2 >= 0:
                        self.a2[pa] = ((a2, 1),)
                    if a3 >= 0:
                        self.a3[pa] = ((a3, 1),)
        # inverse rows only depend on rows of strictly larger weight sum
        for a, c in sorted(hall, key=lambda t: -(self.weight[t[0]] + self.weight[t[1]])):
            chain = self._chain(a, c)
            b_letters: list = []  # B_j = v_j * B_{j+1}^-1, built from the deep end
            for x in reversed(chain):
                b_letters = [(x, 1)] + [(t, -e) for (t, e) in reversed(b_letters)]
            inv_b = [(t, -e) for (t, e) in reversed(b_letters)]
            self.cn[a * n + c] = row_of(boot.collect_raw(inv_b))
        # non-basic brackets: collect the defining generator words (these only
        # ever move letters across Hall-valid pairs)
        for a, c in nonhall:
            wa, wc = self._dfn(a), self._dfn(c)
            inv_a = [(t, -e) for (t, e) in reversed(wa)]
            inv_c = [(t, -e) for (t, e) in reversed(wc)]
            self.cp[a * n + c] = self.a1[a * n + c] = row_of(
                boot.collect_raw(inv_a + inv_c + wa + wc)
            )
            self.cn[a * n + c] = row_of(boot.collect_raw(inv_a + wc + wa + inv_c))
