"""Pure-Python collection kernel.

Reference implementation of the hot operations; the compiled twin in
_kernel_c.pyx follows the same algorithm step for step.  Elements are mixed-
radix ids over the per-atom moduli; words are lists of (atom, exponent) runs.
"""

from __future__ import annotations

from .errors import SpecError
from .tables import KernelData

BACKEND = "py"

# keeps every intermediate coefficient far below the compiled kernel's int64
# range (products of two bounded exponents and a binomial appear)
MAX_LETTER_EXP = 1 << 40


class Kernel:
    def __init__(self, data: KernelData):
        self.data = data
        self.n = data.n
        self.kclass = data.kclass
        self.weight = data.weight
        self.moduli = data.moduli
        self.k3p2 = data.k3p2
        self.sqr_of = data.sqr_of
        self.sql_of = data.sql_of
        self.a1, self.a2, self.a3 = data.a1, data.a2, data.a3
        self.cp, self.cn = data.cp, data.cn
        strides = []
        order = 1
        for m in data.moduli:
            strides.append(order)
            order *= m
        self.strides = strides
        self.order = order
        self.gen_ids = [
            strides[g] if data.moduli[g] > 1 else 0 for g in data.gen_atoms
        ]
        self.identity = 0

    # -- id <-> coordinate codecs ------------------------------------------

    def coords_of_id(self, x: int) -> tuple:
        out = []
        for m in self.moduli:
            x, c = divmod(x, m)
            out.append(c)
        return tuple(out)

    def id_of_coords(self, coords) -> int:
        x = 0
        for c, s, m in zip(coords, self.strides, self.moduli):
            x += (c % m) * s
        return x

    def letters_of_coords(self, coords) -> list:
        """Word (over standard atoms, ascending) whose collection is coords."""
        out = []
        sqr_of, sql_of = self.sqr_of, self.sql_of
        for a, e in enumerate(coords):
            if self.k3p2 and self.weight[a] == 2:
                jii, jij = sqr_of[a], sql_of[a]
                e = e + 2 * (coords[jii] if jii >= 0 else 0)
                e = e + 2 * (coords[jij] if jij >= 0 else 0)
            if e:
                out.append((a, e))
        return out

    # -- collection ---------------------------------------------------------

    def _push(self, out: list, a: int, e: int) -> None:
        if not e:
            return
        if out and out[-1][0] == a:
            m = out[-1][1] + e
            if m:
                out[-1] = (a, m)
            else:
                out.pop()
        else:
            out.append((a, e))

    def _conj_fast(self, R: list, c: int, m: int, vec: list) -> list:
        """Conjugate every run of R by c^m; exact for class <= 3."""
        out: list = []
        n = self.n
        kcl = self.kclass
        weight = self.weight
        cm2 = m * (m - 1) // 2
        for a, mu in R:
            self._push(out, a, mu)
            pa = a * n + c
            t1 = self.a1[pa]
            if t1:
                f = m * mu
                for b, q in t1:
                    e = q * f
                    if weight[b] == kcl:
                        vec[b] += e
                    else:
                        self._push(out, b, e)
            t2 = self.a2[pa]
            if t2:
                f = m * (mu * (mu - 1) // 2)
                if f:
                    for b, q in t2:
                        vec[b] += q * f
            t3 = self.a3[pa]
            if t3:
                f = mu * cm2
                if f:
                    for b, q in t3:
                        vec[b] += q * f
        return out

    def _conj_generic(self, R: list, c: int, m: int, vec: list) -> list:
        """Conjugate R by c^m one step at a time; any class."""
        n = self.n
        kcl = self.kclass
        weight = self.weight
        delta = 1 if m > 0 else -1
        table = self.cp if delta == 1 else self.cn
        cur = R
        for _ in range(abs(m)):
            out: list = []
            for a, mu in cur:
                word = table[a * n + c]
                if not word:
                    self._push(out, a, mu)
                    continue
                if mu >= 0:
                    for _rep in range(mu):
                        self._push(out, a, 1)
                        for b, q in word:
                            if weight[b] == kcl:
                                vec[b] += q
                            else:
                                self._push(out, b, q)
                else:
                    for _rep in range(-mu):
                        for b, q in reversed(word):
                            if weight[b] == kcl:
                                vec[b] -= q
                            else:
                                self._push(out, b, -q)
                        self._push(out, a, -1)
            cur = out
        return cur

    def collect_raw(self, letters) -> list:
        """Collect a word into an integer exponent vector (no reduction)."""
        vec = [0] * self.n
        work: list = []
        for a, e in letters:
            if not -MAX_LETTER_EXP <= e <= MAX_LETTER_EXP:
                raise SpecError(f"letter exponent {e} exceeds the 2^40 word bound")
            self._push(work, a, e)
        conj = self._conj_fast if self.kclass <= 3 else self._conj_generic
        while work:
            c = min(a for a, _ in work)
            E = 0
            out: list = []
            for a, m in work:
                if a == c:
                    E += m
                    if out and m:
                        out = conj(out, c, m, vec)
                else:
                    self._push(out, a, m)
            vec[c] += E
            work = out
        return vec

    def reduce(self, vec) -> tuple:
        """K3P2 square-slot conversion, then per-coordinate reduction."""
        if self.k3p2:
            vec = list(vec)
            for a in range(self.n):
                if self.weight[a] == 2:
                    jii, jij = self.sqr_of[a], self.sql_of[a]
                    s = 0
                    if jii >= 0:
                        s += vec[jii]
                    if jij >= 0:
                        s += vec[jij]
                    vec[a] -= 2 * s
        return tuple(v % m for v, m in zip(vec, self.moduli))

    def collect(self, letters) -> tuple:
        return self.reduce(self.collect_raw(letters))

    # -- element ops ---------------------------------------------------------

    def id_collect(self, letters) -> int:
        return self.id_of_coords(self.collect(letters))

    def id_mul(self, x: int, y: int) -> int:
        letters = self.letters_of_coords(self.coords_of_id(x))
        letters += self.letters_of_coords(self.coords_of_id(y))
        return self.id_collect(letters)

    def id_inv(self, x: int) -> int:
        letters = self.letters_of_coords(self.coords_of_id(x))
        return self.id_collect([(a, -e) for a, e in reversed(letters)])

    def id_pow(self, x: int, e: int) -> int:
        if e < 0:
            x = self.id_inv(x)
            e = -e
        acc = 0
        base = x
        while e:
            if e & 1:
                acc = self.id_mul(acc, base)
            e >>= 1
            if e:
                base = self.id_mul(base, base)
        return acc

    def id_conj(self, x: int, g: int) -> int:
        return self.id_mul(self.id_inv(g), self.id_mul(x, g))

    def id_comm(self, x: int, y: int) -> int:
        xy = self.id_mul(x, y)
        yx = self.id_mul(y, x)
        return self.id_mul(self.id_inv(yx), xy)

    # -- bulk scans -----------------------------------------------------------

    def bfs_order(self, gen_ids) -> int:
        seen = bytearray(self.order)
        seen[0] = 1
        queue = [0]
        count = 1
        head = 0
        while head < len(queue):
            x = queue[head]
            head += 1
            for g in gen_ids:
                y = self.id_mul(x, g)
                if not seen[y]:
                    seen[y] = 1
                    count += 1
                    queue.append(y)
        return count

    def centralizer(self, gen_ids) -> list:
        out = []
        for x in range(self.order):
            for g in gen_ids:
                if self.id_mul(x, g) != self.id_mul(g, x):
                    break
            else:
                out.append(x)
        return out

    def coset_reps(self, member_ids):
        reps = [-1] * self.order
        for x in range(self.order):
            if reps[x] < 0:
                for nm in member_ids:
                    reps[self.id_mul(x, nm)] = x
        return reps

    def row_products(self, x: int) -> list:
        """[x*y for y in the whole group], for table-driven scans."""
        return [self.id_mul(x, y) for y in range(self.order)]

    def col_products(self, y: int) -> list:
        """[x*y for x in the whole group]."""
        return [self.id_mul(x, y) for x in range(self.order)]
