"""Exact integer arithmetic: p-adic valuations, binomial divisibility bounds,
and the floor-quotient maximum used by the exponent-bound machinery.

Everything here is exact; logarithms are computed by repeated integer
multiplication, never through floats.
"""

from __future__ import annotations

from .errors import SpecError


class _Infinity:
    """Valuation of 0. Compares greater than every integer."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INFINITY"

    def __eq__(self, other):
        return isinstance(other, _Infinity)

    def __hash__(self):
        return hash("nilprod.INFINITY")

    def __gt__(self, other):
        return not isinstance(other, _Infinity)

    def __ge__(self, other):
        return True

    def __lt__(self, other):
        return False

    def __le__(self, other):
        return isinstance(other, _Infinity)


INFINITY = _Infinity()


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def _require_prime(p: int) -> None:
    if not is_prime(p):
        raise SpecError(f"p must be a prime >= 2, got {p}")


def vp(a: int, p: int):
    """Exact p-divisor of a: the r with p^r | a, p^(r+1) ∤ a.  vp(0) = INFINITY."""
    _require_prime(p)
    if a < 0:
        raise SpecError(f"vp expects a nonnegative integer, got {a}")
    if a == 0:
        return INFINITY
    r = 0
    while a % p == 0:
        a //= p
        r += 1
    return r


def ilog(base: int, x: int) -> int:
    """floor(log_base(x)) for integers base >= 2, x >= 1, by repeated multiplication."""
    if base < 2 or x < 1:
        raise SpecError(f"ilog requires base >= 2 and x >= 1, got ({base}, {x})")
    d = 0
    power = base
    while power <= x:
        d += 1
        power *= base
    return d


def kummer_binom_val(p: int, n: int, a: int) -> int:
    """Valuation of binomial(p^n, a) for 0 < a <= p^n, which equals n - vp(a)."""
    _require_prime(p)
    if n < 1:
        raise SpecError(f"n must be positive, got {n}")
    if not 0 < a <= p**n:
        raise SpecError(f"a must satisfy 0 < a <= p^n = {p ** n}, got {a}")
    return n - vp(a, p)


def binom_sum_bound(p: int, n: int, m: int) -> int:
    """The guaranteed p-valuation of any sum a_1*C(p^n,1) + ... + a_m*C(p^n,m).

    Returns n - d with d = floor(log_p(m)); every such sum is divisible by
    p^(n-d) whatever the integer coefficients are.
    """
    _require_prime(p)
    if n < 1:
        raise SpecError(f"n must be positive, got {n}")
    if not 0 < m <= p**n:
        raise SpecError(f"m must satisfy 0 < m <= p^n = {p ** n}, got {m}")
    d = ilog(p, m)
    return max(n - d, 0)


def hall_bound_max(k: int, n: int) -> tuple[int, int]:
    """Maximum over s in [1,k] of floor((k-s)/(n-1)) + floor(log_n(s+1)).

    Returns (max, argmax).  The maximum always equals floor(k/(n-1)); when
    k >= n-1 it is attained at s = n-1, which is the argmax reported (smaller
    s may tie, but s = n-1 is the canonical attainment point).  Below that
    range the smallest maximizing s is reported.
    """
    if k < 1 or n < 2:
        raise SpecError(f"hall_bound_max requires k >= 1 and n >= 2, got ({k}, {n})")
    best, best_s = -1, -1
    for s in range(1, k + 1):
        value = (k - s) // (n - 1) + ilog(n, s + 1)
        if value > best:
            best, best_s = value, s
    if k >= n - 1:
        at_canonical = (k - (n - 1)) // (n - 1) + ilog(n, n)
        assert at_canonical == best
        best_s = n - 1
    return best, best_s


def capability_slack(p: int, k: int) -> int:
    """floor((k-1)/(p-1)): how far the top generator order may exceed the next
    one in a capable p-group of class k."""
    _require_prime(p)
    if k < 1:
        raise SpecError(f"k must be positive, got {k}")
    return (k - 1) // (p - 1)


def binomial2(r: int) -> int:
    """r*(r-1)/2 for any integer r, exact (the product is always even)."""
    return r * (r - 1) // 2
