"""GroupSpec: the declarative description of a group, and its JSON format.

JSON schema (unknown fields rejected):
    prime          int, required
    class          int            (omit when presentation11 is given)
    orders         [int, ...]     (exponents a_i; generator x_i has order p^a_i)
    variant        "standard" | "k3p2", default "standard"
    relators       [word, ...]    extra relators in the word grammar
    presentation11 {"alpha": int, "beta": int, "gamma": int, "sigma": int}
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .arith import is_prime
from .errors import SpecError
from .hallbasis import K3P2, STANDARD
from .words import parse_word


@dataclass(frozen=True)
class Presentation11:
    """Parameters of the single presentation covering 2-generator p-groups of
    class two (p odd): a^(p^alpha), b^(p^beta), [b,a]^(p^gamma) trivial, and
    a^(p^(alpha+sigma-gamma)) [b,a]^(p^sigma) = e."""

    alpha: int
    beta: int
    gamma: int
    sigma: int

    def validate(self, p: int) -> None:
        if p == 2:
            raise SpecError("presentation11 requires an odd prime")
        a, b, g, s = self.alpha, self.beta, self.gamma, self.sigma
        if not (b >= g >= 1):
            raise SpecError(f"need beta >= gamma >= 1, got beta={b}, gamma={g}")
        if not (g >= s >= 0):
            raise SpecError(f"need gamma >= sigma >= 0, got gamma={g}, sigma={s}")
        if a + s < 2 * g:
            raise SpecError(f"need alpha+sigma >= 2*gamma, got {a}+{s} < {2 * g}")
        if s == g and a < b:
            raise SpecError(f"sigma == gamma requires alpha >= beta, got alpha={a} < beta={b}")


@dataclass(frozen=True)
class GroupSpec:
    p: int
    k: int | None = None
    orders: tuple[int, ...] | None = None
    variant: str = STANDARD
    relators: tuple = ()  # parsed word ASTs
    presentation11: Presentation11 | None = None

    def validate(self) -> "GroupSpec":
        if not is_prime(self.p):
            raise SpecError(f"prime must be prime, got {self.p}")
        if self.presentation11 is not None:
            if self.k is not None or self.orders is not None or self.relators:
                raise SpecError("presentation11 specs take no class/orders/relators")
            self.presentation11.validate(self.p)
            return self
        if self.k is None or self.k < 1:
            raise SpecError(f"class must be a positive integer, got {self.k}")
        if not self.orders or any(a < 1 for a in self.orders):
            raise SpecError(f"orders must be a nonempty list of positive exponents, got {self.orders}")
        if self.variant not in (STANDARD, K3P2):
            raise SpecError(f"variant must be 'standard' or 'k3p2', got {self.variant!r}")
        if self.variant == K3P2 and (self.p != 2 or self.k != 3):
            raise SpecError(f"k3p2 requires prime 2 and class 3, got p={self.p}, k={self.k}")
        if self.variant == STANDARD and self.p < self.k:
            raise SpecError(
                f"standard normal form requires p >= class, got p={self.p} < k={self.k}"
                " (for p=2, k=3 use the k3p2 variant)"
            )
        return self

    def sorted_orders(self) -> tuple[int, ...]:
        return tuple(sorted(self.orders))


_KNOWN_FIELDS = {"prime", "class", "orders", "variant", "relators", "presentation11"}
_P11_FIELDS = {"alpha", "beta", "gamma", "sigma"}


def spec_from_dict(doc: dict) -> GroupSpec:
    if not isinstance(doc, dict):
        raise SpecError(f"group spec must be a JSON object, got {type(doc).__name__}")
    unknown = set(doc) - _KNOWN_FIELDS
    if unknown:
        raise SpecError(f"unknown group spec fields: {sorted(unknown)}")
    if "prime" not in doc:
        raise SpecError("group spec is missing 'prime'")
    p = doc["prime"]
    if not isinstance(p, int):
        raise SpecError(f"'prime' must be an integer, got {p!r}")

    p11 = None
    if "presentation11" in doc:
        obj = doc["presentation11"]
        if not isinstance(obj, dict):
            raise SpecError("'presentation11' must be an object")
        unknown = set(obj) - _P11_FIELDS
        if unknown:
            raise SpecError(f"unknown presentation11 fields: {sorted(unknown)}")
        missing = _P11_FIELDS - set(obj)
        if missing:
            raise SpecError(f"presentation11 is missing fields: {sorted(missing)}")
        if any(not isinstance(obj[f], int) for f in _P11_FIELDS):
            raise SpecError("presentation11 parameters must be integers")
        p11 = Presentation11(obj["alpha"], obj["beta"], obj["gamma"], obj["sigma"])

    k = doc.get("class")
    if k is not None and not isinstance(k, int):
        raise SpecError(f"'class' must be an integer, got {k!r}")
    orders = doc.get("orders")
    if orders is not None:
        if not isinstance(orders, list) or any(not isinstance(a, int) for a in orders):
            raise SpecError(f"'orders' must be a list of integers, got {orders!r}")
        orders = tuple(orders)
    variant = doc.get("variant", STANDARD)
    if variant not in (STANDARD, K3P2):
        raise SpecError(f"variant must be 'standard' or 'k3p2', got {variant!r}")
    raw_relators = doc.get("relators", [])
    if not isinstance(raw_relators, list) or any(not isinstance(w, str) for w in raw_relators):
        raise SpecError("'relators' must be a list of word strings")
    relators = tuple(parse_word(w) for w in raw_relators)

    return GroupSpec(
        p=p, k=k, orders=orders, variant=variant, relators=relators, presentation11=p11
    ).validate()


def parse_group_spec(text: str) -> GroupSpec:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecError(f"group spec is not valid JSON: {exc}") from None
    return spec_from_dict(doc)


def load_group_spec(path: str) -> GroupSpec:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_group_spec(fh.read())
