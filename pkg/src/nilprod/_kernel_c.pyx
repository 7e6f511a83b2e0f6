# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled collection kernel; algorithmic twin of _kernel_py.Kernel.

Same tables, same target-ascending collection with the exact class<=3
power-commutator fast path and the generic per-step conjugation path for
class>=4; plus C-speed bulk scans (BFS order, centralizer, coset reps).
"""

import numpy as np

BACKEND = "c"

cdef long long _floordiv2(long long x):
    # x*(x-1) is even for every integer, so this is exact
    return x // 2


cdef class Kernel:
    cdef public object data
    cdef public object moduli
    cdef public object weight
    cdef public object gen_ids
    cdef public object strides
    cdef public long long order
    cdef public long long identity
    cdef public int n
    cdef public int kclass
    cdef public bint k3p2

    cdef long long[::1] mod_v
    cdef long long[::1] stride_v
    cdef int[::1] weight_v
    cdef int[::1] sqr_v
    cdef int[::1] sql_v

    cdef long long[::1] a1o
    cdef long long[::1] a2o
    cdef long long[::1] a3o
    cdef long long[::1] cpo
    cdef long long[::1] cno
    cdef int[::1] a1a
    cdef int[::1] a2a
    cdef int[::1] a3a
    cdef int[::1] cpa
    cdef int[::1] cna
    cdef long long[::1] a1q
    cdef long long[::1] a2q
    cdef long long[::1] a3q
    cdef long long[::1] cpq
    cdef long long[::1] cnq

    cdef object _wa_nd, _we_nd, _oa_nd, _oe_nd, _sa_nd, _se_nd
    cdef int[::1] wa
    cdef int[::1] oa
    cdef int[::1] sa
    cdef long long[::1] we
    cdef long long[::1] oe
    cdef long long[::1] se
    cdef int cap

    cdef long long[::1] vec_v
    cdef long long[::1] crd_v
    cdef long long[::1] crd2_v

    def __init__(self, data):
        self.data = data
        self.n = data.n
        self.kclass = data.kclass
        self.k3p2 = data.k3p2
        self.moduli = list(data.moduli)
        self.weight = list(data.weight)

        n = data.n
        self.mod_v = np.asarray(data.moduli, dtype=np.int64)
        self.weight_v = np.asarray(data.weight, dtype=np.int32)
        self.sqr_v = np.asarray(data.sqr_of, dtype=np.int32)
        self.sql_v = np.asarray(data.sql_of, dtype=np.int32)

        strides = []
        order = 1
        for m in data.moduli:
            strides.append(order)
            order *= m
        if order > (1 << 62):
            raise OverflowError("group order exceeds the id range of the compiled kernel")
        self.strides = strides
        self.stride_v = np.asarray(strides, dtype=np.int64)
        self.order = order
        self.identity = 0
        self.gen_ids = [
            strides[g] if data.moduli[g] > 1 else 0 for g in data.gen_atoms
        ]

        self.a1o, self.a1a, self.a1q = self._csr(data.a1)
        self.a2o, self.a2a, self.a2q = self._csr(data.a2)
        self.a3o, self.a3a, self.a3q = self._csr(data.a3)
        self.cpo, self.cpa, self.cpq = self._csr(data.cp)
        self.cno, self.cna, self.cnq = self._csr(data.cn)

        self.cap = 256
        self._alloc()
        self.vec_v = np.zeros(n, dtype=np.int64)
        self.crd_v = np.zeros(n, dtype=np.int64)
        self.crd2_v = np.zeros(n, dtype=np.int64)

    def _csr(self, rows):
        offs = np.zeros(len(rows) + 1, dtype=np.int64)
        atoms = []
        coefs = []
        pos = 0
        for i, row in enumerate(rows):
            offs[i] = pos
            for b, q in row:
                atoms.append(b)
                coefs.append(q)
            pos += len(row)
        offs[len(rows)] = pos
        return (
            offs,
            np.asarray(atoms, dtype=np.int32) if atoms else np.zeros(0, dtype=np.int32),
            np.asarray(coefs, dtype=np.int64) if coefs else np.zeros(0, dtype=np.int64),
        )

    cdef void _alloc(self):
        self._wa_nd = np.zeros(self.cap, dtype=np.int32)
        self._we_nd = np.zeros(self.cap, dtype=np.int64)
        self._oa_nd = np.zeros(self.cap, dtype=np.int32)
        self._oe_nd = np.zeros(self.cap, dtype=np.int64)
        self._sa_nd = np.zeros(self.cap, dtype=np.int32)
        self._se_nd = np.zeros(self.cap, dtype=np.int64)
        self.wa = self._wa_nd
        self.we = self._we_nd
        self.oa = self._oa_nd
        self.oe = self._oe_nd
        self.sa = self._sa_nd
        self.se = self._se_nd

    cdef void _grow(self, int need):
        cdef int newcap = self.cap
        while newcap < need:
            newcap *= 2
        wa = np.zeros(newcap, dtype=np.int32); wa[: self.cap] = self._wa_nd
        we = np.zeros(newcap, dtype=np.int64); we[: self.cap] = self._we_nd
        oa = np.zeros(newcap, dtype=np.int32); oa[: self.cap] = self._oa_nd
        oe = np.zeros(newcap, dtype=np.int64); oe[: self.cap] = self._oe_nd
        sa = np.zeros(newcap, dtype=np.int32); sa[: self.cap] = self._sa_nd
        se = np.zeros(newcap, dtype=np.int64); se[: self.cap] = self._se_nd
        self._wa_nd, self._we_nd = wa, we
        self._oa_nd, self._oe_nd = oa, oe
        self._sa_nd, self._se_nd = sa, se
        self.wa = wa; self.we = we
        self.oa = oa; self.oe = oe
        self.sa = sa; self.se = se
        self.cap = newcap

    cdef void _swap_out_scratch(self):
        self._oa_nd, self._sa_nd = self._sa_nd, self._oa_nd
        self._oe_nd, self._se_nd = self._se_nd, self._oe_nd
        self.oa, self.sa = self.sa, self.oa
        self.oe, self.se = self.se, self.oe

    cdef void _swap_work_out(self):
        self._wa_nd, self._oa_nd = self._oa_nd, self._wa_nd
        self._we_nd, self._oe_nd = self._oe_nd, self._we_nd
        self.wa, self.oa = self.oa, self.wa
        self.we, self.oe = self.oe, self.we

    # -- collection ----------------------------------------------------------

    cdef int _push_out(self, int m, int a, long long e):
        if e == 0:
            return m
        if m > 0 and self.oa[m - 1] == a:
            self.oe[m - 1] += e
            if self.oe[m - 1] == 0:
                return m - 1
            return m
        self.oa[m] = a
        self.oe[m] = e
        return m + 1

    cdef int _push_scratch(self, int m, int a, long long e):
        if e == 0:
            return m
        if m > 0 and self.sa[m - 1] == a:
            self.se[m - 1] += e
            if self.se[m - 1] == 0:
                return m - 1
            return m
        self.sa[m] = a
        self.se[m] = e
        return m + 1

    cdef int _conj_fast(self, int outL, int c, long long m):
        """Rewrite the out buffer as its conjugate by c^m (class <= 3 exact)."""
        cdef int sL = 0, i, b, a
        cdef long long mu, q, f1, f2, f3, pa
        cdef long long cm2 = _floordiv2(m * (m - 1))
        cdef long long j
        for i in range(outL):
            a = self.oa[i]
            mu = self.oe[i]
            pa = <long long> a * self.n + c
            if sL + (self.a1o[pa + 1] - self.a1o[pa]) + 2 >= self.cap:
                self._grow(sL + <int> (self.a1o[pa + 1] - self.a1o[pa]) + 64)
            sL = self._push_scratch(sL, a, mu)
            f1 = m * mu
            for j in range(self.a1o[pa], self.a1o[pa + 1]):
                b = self.a1a[j]
                q = self.a1q[j] * f1
                if self.weight_v[b] == self.kclass:
                    self.vec_v[b] += q
                else:
                    sL = self._push_scratch(sL, b, q)
            f2 = m * _floordiv2(mu * (mu - 1))
            if f2 != 0:
                for j in range(self.a2o[pa], self.a2o[pa + 1]):
                    self.vec_v[self.a2a[j]] += self.a2q[j] * f2
            f3 = mu * cm2
            if f3 != 0:
                for j in range(self.a3o[pa], self.a3o[pa + 1]):
                    self.vec_v[self.a3a[j]] += self.a3q[j] * f3
        self._swap_out_scratch()
        return sL

    cdef int _conj_generic(self, int outL, int c, long long m):
        """Conjugate the out buffer by c^m one step at a time (any class)."""
        cdef int delta = 1 if m > 0 else -1
        cdef long long steps = m if m > 0 else -m
        cdef long long step, j, pa, q, mu, rep
        cdef int sL, i, a, b
        cdef long long[::1] toff
        cdef int[::1] tatom
        cdef long long[::1] tcoef
        if delta == 1:
            toff, tatom, tcoef = self.cpo, self.cpa, self.cpq
        else:
            toff, tatom, tcoef = self.cno, self.cna, self.cnq
        for step in range(steps):
            sL = 0
            for i in range(outL):
                a = self.oa[i]
                mu = self.oe[i]
                pa = <long long> a * self.n + c
                if toff[pa] == toff[pa + 1]:
                    if sL + 2 >= self.cap:
                        self._grow(sL + 64)
                    sL = self._push_scratch(sL, a, mu)
                    continue
                rep = mu if mu > 0 else -mu
                if sL + rep * (toff[pa + 1] - toff[pa] + 1) + 2 >= self.cap:
                    self._grow(sL + <int> (rep * (toff[pa + 1] - toff[pa] + 1)) + 64)
                if mu >= 0:
                    for _ in range(mu):
                        sL = self._push_scratch(sL, a, 1)
                        for j in range(toff[pa], toff[pa + 1]):
                            b = tatom[j]
                            q = tcoef[j]
                            if self.weight_v[b] == self.kclass:
                                self.vec_v[b] += q
                            else:
                                sL = self._push_scratch(sL, b, q)
                else:
                    for _ in range(-mu):
                        for j in range(toff[pa + 1] - 1, toff[pa] - 1, -1):
                            b = tatom[j]
                            q = tcoef[j]
                            if self.weight_v[b] == self.kclass:
                                self.vec_v[b] -= q
                            else:
                                sL = self._push_scratch(sL, b, -q)
                        sL = self._push_scratch(sL, a, -1)
            self._swap_out_scratch()
            outL = sL
        return outL

    cdef void _collect_core(self, int L):
        """Collect work[0..L) into vec_v (which the caller zeroed)."""
        cdef int i, outL, c, a
        cdef long long m, E
        cdef bint fast = self.kclass <= 3
        while L > 0:
            c = self.wa[0]
            for i in range(1, L):
                if self.wa[i] < c:
                    c = self.wa[i]
            E = 0
            outL = 0
            for i in range(L):
                a = self.wa[i]
                m = self.we[i]
                if a == c:
                    E += m
                    if outL > 0 and m != 0:
                        if fast:
                            outL = self._conj_fast(outL, c, m)
                        else:
                            outL = self._conj_generic(outL, c, m)
                else:
                    if outL + 2 >= self.cap:
                        self._grow(outL + 64)
                    outL = self._push_out(outL, a, m)
            self.vec_v[c] += E
            self._swap_work_out()
            L = outL
        return

    cdef void _reduce_vec(self):
        cdef int a, jii, jij
        cdef long long s
        if self.k3p2:
            for a in range(self.n):
                if self.weight_v[a] == 2:
                    s = 0
                    jii = self.sqr_v[a]
                    jij = self.sql_v[a]
                    if jii >= 0:
                        s += self.vec_v[jii]
                    if jij >= 0:
                        s += self.vec_v[jij]
                    self.vec_v[a] -= 2 * s
        for a in range(self.n):
            self.vec_v[a] = self.vec_v[a] % self.mod_v[a]
            if self.vec_v[a] < 0:
                self.vec_v[a] += self.mod_v[a]

    cdef int _letters_from_coords(self, long long[::1] crd, int at):
        """Write the word of a reduced coordinate vector into work[at..); returns new length."""
        cdef int a, L = at
        cdef long long e
        cdef int jii, jij
        if L + self.n + 2 >= self.cap:
            self._grow(L + self.n + 64)
        for a in range(self.n):
            e = crd[a]
            if self.k3p2 and self.weight_v[a] == 2:
                jii = self.sqr_v[a]
                jij = self.sql_v[a]
                if jii >= 0:
                    e += 2 * crd[jii]
                if jij >= 0:
                    e += 2 * crd[jij]
            if e != 0:
                if L > 0 and self.wa[L - 1] == a:
                    self.we[L - 1] += e
                    if self.we[L - 1] == 0:
                        L -= 1
                else:
                    self.wa[L] = a
                    self.we[L] = e
                    L += 1
        return L

    cdef void _decode(self, long long x, long long[::1] crd):
        cdef int a
        for a in range(self.n):
            crd[a] = x % self.mod_v[a]
            x = x // self.mod_v[a]

    cdef long long _encode_vec(self):
        cdef long long x = 0
        cdef int a
        for a in range(self.n):
            x += self.vec_v[a] * self.stride_v[a]
        return x

    cdef long long _mul(self, long long x, long long y):
        cdef int L, a
        self._decode(x, self.crd_v)
        L = self._letters_from_coords(self.crd_v, 0)
        self._decode(y, self.crd2_v)
        L = self._letters_from_coords(self.crd2_v, L)
        for a in range(self.n):
            self.vec_v[a] = 0
        self._collect_core(L)
        self._reduce_vec()
        return self._encode_vec()

    cdef long long _inv(self, long long x):
        cdef int L, i, a
        cdef long long e
        self._decode(x, self.crd_v)
        L = self._letters_from_coords(self.crd_v, 0)
        # reverse and negate in place
        for i in range(L // 2):
            a = self.wa[i]; self.wa[i] = self.wa[L - 1 - i]; self.wa[L - 1 - i] = a
            e = self.we[i]; self.we[i] = self.we[L - 1 - i]; self.we[L - 1 - i] = e
        for i in range(L):
            self.we[i] = -self.we[i]
        for a in range(self.n):
            self.vec_v[a] = 0
        self._collect_core(L)
        self._reduce_vec()
        return self._encode_vec()

    # -- python API ------------------------------------------------------------

    def coords_of_id(self, x):
        self._decode(x, self.crd_v)
        return tuple(int(self.crd_v[a]) for a in range(self.n))

    def id_of_coords(self, coords):
        cdef long long x = 0
        cdef int a
        for a in range(self.n):
            x += (<long long> (coords[a] % self.moduli[a])) * self.stride_v[a]
        return int(x)

    def letters_of_coords(self, coords):
        out = []
        sqr_of = self.data.sqr_of
        sql_of = self.data.sql_of
        for a, e in enumerate(coords):
            if self.k3p2 and self.data.weight[a] == 2:
                jii, jij = sqr_of[a], sql_of[a]
                e = e + 2 * (coords[jii] if jii >= 0 else 0)
                e = e + 2 * (coords[jij] if jij >= 0 else 0)
            if e:
                out.append((a, e))
        return out

    def collect(self, letters):
        cdef int L = 0
        cdef int a
        for atom, e in letters:
            if not -(1 << 40) <= e <= (1 << 40):
                raise ValueError(f"letter exponent {e} exceeds the 2^40 word bound")
            if L + 2 >= self.cap:
                self._grow(L + 64)
            L = self._letter_push(L, atom, e)
        for a in range(self.n):
            self.vec_v[a] = 0
        self._collect_core(L)
        self._reduce_vec()
        return tuple(int(self.vec_v[a]) for a in range(self.n))

    cdef int _letter_push(self, int L, int a, long long e):
        if e == 0:
            return L
        if L > 0 and self.wa[L - 1] == a:
            self.we[L - 1] += e
            if self.we[L - 1] == 0:
                return L - 1
            return L
        self.wa[L] = a
        self.we[L] = e
        return L + 1

    def id_collect(self, letters):
        return self.id_of_coords(self.collect(letters))

    def id_mul(self, x, y):
        return int(self._mul(x, y))

    def id_inv(self, x):
        return int(self._inv(x))

    def id_pow(self, x, e):
        cdef long long acc = 0
        cdef long long base
        cdef long long ee = e
        if ee < 0:
            base = self._inv(x)
            ee = -ee
        else:
            base = x
        while ee:
            if ee & 1:
                acc = self._mul(acc, base)
            ee >>= 1
            if ee:
                base = self._mul(base, base)
        return int(acc)

    def id_conj(self, x, g):
        return int(self._mul(self._inv(g), self._mul(x, g)))

    def id_comm(self, x, y):
        cdef long long xy = self._mul(x, y)
        cdef long long yx = self._mul(y, x)
        return int(self._mul(self._inv(yx), xy))

    # -- bulk scans --------------------------------------------------------------

    def bfs_order(self, gen_ids):
        cdef long long[::1] gens = np.asarray(list(gen_ids), dtype=np.int64)
        cdef int ng = gens.shape[0]
        seen_nd = np.zeros(self.order, dtype=np.uint8)
        queue_nd = np.zeros(self.order, dtype=np.int64)
        cdef unsigned char[::1] seen = seen_nd
        cdef long long[::1] queue = queue_nd
        cdef long long head = 0, tail = 0, x, y, count = 1
        cdef int i
        seen[0] = 1
        queue[0] = 0
        tail = 1
        while head < tail:
            x = queue[head]
            head += 1
            for i in range(ng):
                y = self._mul(x, gens[i])
                if not seen[y]:
                    seen[y] = 1
                    queue[tail] = y
                    tail += 1
                    count += 1
        return int(count)

    def centralizer(self, gen_ids):
        cdef long long[::1] gens = np.asarray(list(gen_ids), dtype=np.int64)
        cdef int ng = gens.shape[0]
        cdef long long x
        cdef int i
        cdef bint ok
        out = []
        for x in range(self.order):
            ok = True
            for i in range(ng):
                if self._mul(x, gens[i]) != self._mul(gens[i], x):
                    ok = False
                    break
            if ok:
                out.append(int(x))
        return out

    def coset_reps(self, member_ids):
        cdef long long[::1] members = np.asarray(list(member_ids), dtype=np.int64)
        cdef int nm = members.shape[0]
        reps_nd = np.full(self.order, -1, dtype=np.int64)
        cdef long long[::1] reps = reps_nd
        cdef long long x
        cdef int i
        for x in range(self.order):
            if reps[x] < 0:
                for i in range(nm):
                    reps[self._mul(x, members[i])] = x
        return reps_nd

    def row_products(self, x):
        """[x*y for y in the whole group], for table-driven scans."""
        out_nd = np.zeros(self.order, dtype=np.int64)
        cdef long long[::1] out = out_nd
        cdef long long y
        for y in range(self.order):
            out[y] = self._mul(x, y)
        return out_nd

    def col_products(self, y):
        """[x*y for x in the whole group]."""
        out_nd = np.zeros(self.order, dtype=np.int64)
        cdef long long[::1] out = out_nd
        cdef long long x
        for x in range(self.order):
            out[x] = self._mul(x, y)
        return out_nd
