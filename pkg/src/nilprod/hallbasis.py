"""Basic commutators on r generators up to weight k, in M. Hall's ordering
(within a weight, brackets compare lexicographically from right to left),
together with the per-commutator exponent moduli that make the normal form
unique.

Two moduli rules are supported:

* STANDARD (valid for p >= k): the modulus of a commutator is p^a where a is
  the smallest order-exponent among the generators in its support.
* K3P2 (p = 2, k = 3 only): the weight-3 two-generator entries [xj,xi,xi] and
  [xj,xi,xj] act as the formal squares [xj,xi^2] and [xj^2,xi], with adjusted
  moduli; weight-2 entries get modulus 2^(a_i + 1).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import SpecError

MAX_GENERATORS = 6
MAX_CLASS = 6

STANDARD = "standard"
K3P2 = "k3p2"

# kind flags for K3P2 slots
PLAIN = 0
SQ_R = 1  # [xj, xi^2], stored in the [xj,xi,xi] slot
SQ_L = 2  # [xj^2, xi], stored in the [xj,xi,xj] slot

ZYY_PREFIX = "ZYY_PREFIX"
ZYZ_PREFIX = "ZYZ_PREFIX"


class BasicCommutator:
    """A generator x_i (leaf) or a bracket [u, v] of basic commutators."""

    __slots__ = ("gen", "left", "right", "weight", "support")

    def __init__(self, gen=None, left=None, right=None):
        if gen is not None:
            self.gen = gen
            self.left = None
            self.right = None
            self.weight = 1
            self.support = frozenset((gen,))
        else:
            self.gen = None
            self.left = left
            self.right = right
            self.weight = left.weight + right.weight
            self.support = left.support | right.support

    def is_leaf(self) -> bool:
        return self.gen is not None

    def key(self):
        if self.gen is not None:
            return (1, self.gen)
        return (self.weight, self.right.key(), self.left.key())

    def __eq__(self, other):
        return isinstance(other, BasicCommutator) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __lt__(self, other):
        return cmp_commutators(self, other) < 0

    def __repr__(self):
        return format_commutator(self)


def cmp_commutators(a: BasicCommutator, b: BasicCommutator) -> int:
    """Total order: ascending weight, then right component, then left."""
    if a.weight != b.weight:
        return -1 if a.weight < b.weight else 1
    if a.is_leaf():
        return (a.gen > b.gen) - (a.gen < b.gen)
    c = cmp_commutators(a.right, b.right)
    if c != 0:
        return c
    return cmp_commutators(a.left, b.left)


def _sort_key(c: BasicCommutator):
    return c.key()


def format_commutator(c: BasicCommutator) -> str:
    """Render with left-normed flattening: [[x2,x1],x1] prints as [x2,x1,x1]."""
    if c.is_leaf():
        return f"x{c.gen}"
    parts = []
    node = c
    while not node.is_leaf():
        parts.append(node.right)
        node = node.left
    parts.append(node)
    parts.reverse()
    return "[" + ",".join(format_commutator(p) for p in parts) + "]"


def is_basic_pair(u: BasicCommutator, v: BasicCommutator) -> bool:
    """Hall condition: [u,v] is basic iff u > v and (u is a leaf or u.right <= v)."""
    if cmp_commutators(u, v) <= 0:
        return False
    if not u.is_leaf() and cmp_commutators(u.right, v) > 0:
        return False
    return True


@lru_cache(maxsize=None)
def _mobius(d: int) -> int:
    m, n = 1, d
    q = 2
    while q * q <= n:
        if n % q == 0:
            n //= q
            if n % q == 0:
                return 0
            m = -m
        q += 1
    if n > 1:
        m = -m
    return m


def witt_number(r: int, w: int) -> int:
    """Number of basic commutators of weight w on r generators."""
    total = 0
    for d in range(1, w + 1):
        if w % d == 0:
            total += _mobius(d) * r ** (w // d)
    return total // w


def build_basis(r: int, k: int) -> list[BasicCommutator]:
    """All basic commutators of weight <= k on r generators, in basis order."""
    if r < 1 or k < 1:
        raise SpecError(f"need r >= 1 and k >= 1, got ({r}, {k})")
    if r > MAX_GENERATORS or k > MAX_CLASS:
        raise SpecError(
            f"desk-scale caps are r <= {MAX_GENERATORS}, k <= {MAX_CLASS}, got ({r}, {k})"
        )
    by_weight: list[list[BasicCommutator]] = [[]]
    by_weight.append([BasicCommutator(gen=i) for i in range(1, r + 1)])
    for w in range(2, k + 1):
        layer = []
        for wv in range(1, w):
            wu = w - wv
            for v in by_weight[wv]:
                for u in by_weight[wu]:
                    if is_basic_pair(u, v):
                        layer.append(BasicCommutator(left=u, right=v))
        layer.sort(key=_sort_key)
        by_weight.append(layer)
    out = []
    for w in range(1, k + 1):
        assert len(by_weight[w]) == witt_number(r, w)
        out.extend(by_weight[w])
    return out


def two_gen_shape(c: BasicCommutator):
    """Classify a weight>=3 basic commutator on exactly two generators.

    Returns (tag, tail) where tag says whether the left-normed prefix is
    [z,y,y] or [z,y,z] and tail is the remaining right components (c4,...).
    """
    if c.weight < 3:
        raise SpecError(f"two_gen_shape needs weight >= 3, got weight {c.weight}")
    if len(c.support) != 2:
        raise SpecError(f"two_gen_shape needs support of size 2, got {sorted(c.support)}")
    spine = []
    node = c
    while not node.is_leaf():
        spine.append(node.right)
        node = node.left
    spine.append(node)
    spine.reverse()  # [z, y, w, c4, ..., cr] components of the left-normed chain
    if len(spine) < 3:
        raise SpecError(f"not a left-normed chain of length >= 3: {c!r}")
    z, y, w = spine[0], spine[1], spine[2]
    if not (z.is_leaf() and y.is_leaf()):
        raise SpecError(f"prefix of {c!r} is not [z,y,...] on generators")
    if w == y:
        tag = ZYY_PREFIX
    elif w == z:
        tag = ZYZ_PREFIX
    else:
        raise SpecError(f"third component of {c!r} is neither y nor z")
    return tag, spine[3:]


@dataclass(frozen=True)
class HallBasis:
    """Ordered basic commutators with their exponent moduli.

    orders[i] is the exponent a_{i+1} with generator x_{i+1} of order p^a.
    kinds[j] marks K3P2 replacement slots (SQ_R / SQ_L).
    """

    entries: tuple[BasicCommutator, ...]
    moduli: tuple[int, ...]
    kinds: tuple[int, ...]
    p: int
    k: int
    orders: tuple[int, ...]
    variant: str

    @property
    def r(self) -> int:
        return len(self.orders)

    @property
    def group_order(self) -> int:
        n = 1
        for m in self.moduli:
            n *= m
        return n

    def index_of(self, c: BasicCommutator) -> int:
        return self._index()[c.key()]

    def _index(self):
        idx = getattr(self, "_index_cache", None)
        if idx is None:
            idx = {c.key(): i for i, c in enumerate(self.entries)}
            object.__setattr__(self, "_index_cache", idx)
        return idx

    def entry_name(self, i: int) -> str:
        c = self.entries[i]
        if self.kinds[i] == SQ_R:
            return f"[x{c.left.left.gen},x{c.left.right.gen}^2]"
        if self.kinds[i] == SQ_L:
            return f"[x{c.left.left.gen}^2,x{c.left.right.gen}]"
        return format_commutator(c)


def assign_moduli(basis, p: int, orders, variant: str = STANDARD) -> HallBasis:
    """Attach exponent moduli to a basis built by build_basis.

    orders must be ascending (callers normalize; see engine.build_group).
    """
    from .arith import is_prime

    orders = tuple(int(a) for a in orders)
    if not orders or any(a < 1 for a in orders):
        raise SpecError(f"orders must be positive exponents, got {orders}")
    if any(orders[i] > orders[i + 1] for i in range(len(orders) - 1)):
        raise SpecError(f"orders must be ascending, got {orders}")
    if not is_prime(p):
        raise SpecError(f"p must be prime, got {p}")
    entries = tuple(basis)
    k = max(c.weight for c in entries)
    r = len(orders)
    gens = {c.gen for c in entries if c.is_leaf()}
    if gens != set(range(1, r + 1)):
        raise SpecError(f"basis covers generators {sorted(gens)} but {r} orders given")

    def alpha(c: BasicCommutator) -> int:
        return min(orders[i - 1] for i in c.support)

    if variant == STANDARD:
        if p < k:
            raise SpecError(f"standard moduli need p >= k, got p={p}, k={k}")
        moduli = tuple(p ** alpha(c) for c in entries)
        kinds = tuple(PLAIN for _ in entries)
        return HallBasis(entries, moduli, kinds, p, k, orders, STANDARD)

    if variant == K3P2:
        if p != 2 or k != 3:
            raise SpecError(f"k3p2 variant needs p=2 and k=3, got p={p}, k={k}")
        moduli = []
        kinds = []
        for c in entries:
            if c.weight == 1:
                moduli.append(2 ** orders[c.gen - 1])
                kinds.append(PLAIN)
            elif c.weight == 2:
                ai = alpha(c)
                moduli.append(2 ** (ai + 1))
                kinds.append(PLAIN)
            else:
                if len(c.support) == 2:
                    # [xj,xi,xi] slot holds [xj,xi^2]; [xj,xi,xj] slot holds [xj^2,xi]
                    t = c.right.gen
                    j = c.left.left.gen
                    i = c.left.right.gen
                    ai, aj = orders[i - 1], orders[j - 1]
                    if t == i:
                        moduli.append(2 ** (ai - 1))
                        kinds.append(SQ_R)
                    elif t == j:
                        if ai == aj:
                            moduli.append(2 ** (ai - 1))
                        else:
                            moduli.append(2**ai)
                        kinds.append(SQ_L)
                    else:
                        raise SpecError(f"unexpected two-generator entry {c!r}")
                else:
                    moduli.append(2 ** alpha(c))
                    kinds.append(PLAIN)
        return HallBasis(entries, tuple(moduli), tuple(kinds), p, k, orders, K3P2)

    raise SpecError(f"unknown variant {variant!r}")
