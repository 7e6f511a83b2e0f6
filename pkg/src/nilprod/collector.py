"""Group arithmetic through the collection process.

Words over the generators (or over basis commutators) are rewritten into
Hall-basis normal form; NormalForm is the canonical element representation.
All heavy lifting happens in the selected kernel (see kernel.py).
"""

from __future__ import annotations

from .errors import SpecError
from .hallbasis import BasicCommutator, HallBasis
from .kernel import make_kernel
from .tables import KernelData
from . import words as _words


def kernel_for(basis: HallBasis, backend: str | None = None):
    """One kernel per basis, built on first use and cached on the basis."""
    cache = getattr(basis, "_kernel_cache", None)
    if cache is None:
        cache = {}
        object.__setattr__(basis, "_kernel_cache", cache)
    key = backend or "auto"
    if key not in cache:
        cache[key] = make_kernel(KernelData(basis), backend)
    return cache[key]


class NormalForm:
    """Exponent vector over a HallBasis; the unique representation of an element."""

    __slots__ = ("basis", "exps")

    def __init__(self, basis: HallBasis, exps):
        exps = tuple(exps)
        if len(exps) != len(basis.entries):
            raise SpecError(
                f"exponent vector has length {len(exps)}, basis has {len(basis.entries)}"
            )
        if any(not 0 <= e < m for e, m in zip(exps, basis.moduli)):
            raise SpecError(f"exponents {exps} not reduced modulo {basis.moduli}")
        self.basis = basis
        self.exps = exps

    # -- constructors --------------------------------------------------------

    @staticmethod
    def identity(basis: HallBasis) -> "NormalForm":
        return NormalForm(basis, (0,) * len(basis.entries))

    @staticmethod
    def generator(basis: HallBasis, i: int) -> "NormalForm":
        if not 1 <= i <= basis.r:
            raise SpecError(f"generator index {i} out of range 1..{basis.r}")
        k = kernel_for(basis)
        return NormalForm(basis, k.coords_of_id(k.gen_ids[i - 1]))

    @staticmethod
    def from_id(basis: HallBasis, x: int) -> "NormalForm":
        return NormalForm(basis, kernel_for(basis).coords_of_id(x))

    def to_id(self) -> int:
        return kernel_for(self.basis).id_of_coords(self.exps)

    # -- protocol --------------------------------------------------------------

    def __eq__(self, other):
        return (
            isinstance(other, NormalForm)
            and self.basis is other.basis
            and self.exps == other.exps
        )

    def __hash__(self):
        return hash(self.exps)

    def __repr__(self):
        return f"<{_words.format_normal_form(self)}>"

    def is_identity(self) -> bool:
        return all(e == 0 for e in self.exps)

    def __mul__(self, other):
        return mul(self, other)

    def __pow__(self, e: int):
        return inv_pow(self, e)


def _check_same_basis(a: NormalForm, b: NormalForm) -> None:
    if a.basis is not b.basis:
        raise SpecError("normal forms over different bases")


def _atom_index(basis: HallBasis, atom) -> int:
    if isinstance(atom, int):
        if not 1 <= atom <= basis.r:
            raise SpecError(f"generator index {atom} out of range 1..{basis.r}")
        return basis.index_of(BasicCommutator(gen=atom))
    if isinstance(atom, BasicCommutator):
        try:
            return basis.index_of(atom)
        except KeyError:
            raise SpecError(f"{atom!r} is not an atom of this basis") from None
    raise SpecError(f"word atoms are generator indices or BasicCommutators, got {atom!r}")


def collect(word, basis: HallBasis) -> NormalForm:
    """Collect a word (sequence of (atom, exponent) letters) into normal form."""
    k = kernel_for(basis)
    letters = [(_atom_index(basis, a), int(e)) for a, e in word]
    return NormalForm(basis, k.collect(letters))


def mul(a: NormalForm, b: NormalForm) -> NormalForm:
    _check_same_basis(a, b)
    k = kernel_for(a.basis)
    return NormalForm(a.basis, k.coords_of_id(k.id_mul(a.to_id(), b.to_id())))


def inv_pow(a: NormalForm, e: int) -> NormalForm:
    k = kernel_for(a.basis)
    return NormalForm(a.basis, k.coords_of_id(k.id_pow(a.to_id(), int(e))))


def comm(a: NormalForm, b: NormalForm) -> NormalForm:
    _check_same_basis(a, b)
    k = kernel_for(a.basis)
    return NormalForm(a.basis, k.coords_of_id(k.id_comm(a.to_id(), b.to_id())))


def element_order(a: NormalForm) -> int:
    n = 1
    x = a
    while not x.is_identity():
        x = mul(x, a)
        n += 1
    return n


LEFTMOST_FIRST = "leftmost-uncollected-first"
RIGHTMOST_MINIMAL = "rightmost-minimal-first"


def collect_reference(word, basis: HallBasis, strategy: str = LEFTMOST_FIRST,
                      max_steps: int = 2_000_000) -> NormalForm:
    """One-swap-at-a-time collection, for confluence probing.

    Letters move left a single position per step via u^e c^d -> c^d (u^(c^d))^e.
    Strategies pick which out-of-order letter moves: the first offender from
    the left, or the rightmost out-of-place occurrence of the minimal atom.
    Any terminating strategy must reach the same normal form.
    """
    if strategy not in (LEFTMOST_FIRST, RIGHTMOST_MINIMAL):
        raise SpecError(f"unknown collection strategy {strategy!r}")
    kern = kernel_for(basis)
    data = kern.data
    n = data.n
    units: list = []
    for atom, e in word:
        a = _atom_index(basis, atom)
        sign = 1 if e > 0 else -1
        units.extend((a, sign) for _ in range(abs(e)))

    def swap_at(i: int) -> None:
        # word[i-1] = u^eps, word[i] = c^delta with u > c
        u, eps = units[i - 1]
        c, delta = units[i]
        row = data.cp[u * n + c] if delta > 0 else data.cn[u * n + c]
        repl = [(c, delta)]
        conj = [(u, 1)] + [(b, q) for b, q in row]
        if eps < 0:
            conj = [(b, -q) for b, q in reversed(conj)]
        for b, q in conj:
            sign = 1 if q > 0 else -1
            repl.extend((b, sign) for _ in range(abs(q)))
        units[i - 1 : i + 1] = repl

    steps = 0
    while True:
        steps += 1
        if steps > max_steps:
            raise SpecError(f"collection exceeded {max_steps} elementary moves")
        pos = -1
        if strategy == LEFTMOST_FIRST:
            for i in range(1, len(units)):
                if units[i][0] < units[i - 1][0]:
                    pos = i
                    break
        else:
            best = None
            for i in range(1, len(units)):
                if units[i][0] < units[i - 1][0]:
                    if best is None or units[i][0] <= best:
                        best = units[i][0]
                        pos = i
        if pos < 0:
            break
        swap_at(pos)

    vec = [0] * n
    for a, sign in units:
        vec[a] += sign
    # a sorted exponent vector collects to its own reduction
    return NormalForm(basis, kern.collect(list(enumerate(vec))))


def evaluate_word(ast, assignment: dict, basis: HallBasis | None = None) -> NormalForm:
    """Homomorphic evaluation of a parsed word.

    assignment maps free names to NormalForms; the aliases x1..xr always refer
    to the generators of the basis.
    """
    if basis is None:
        for v in assignment.values():
            basis = v.basis
            break
        else:
            raise SpecError("evaluate_word needs a basis or a nonempty assignment")

    def resolve(name: str) -> NormalForm:
        if name in assignment:
            v = assignment[name]
            if v.basis is not basis:
                raise SpecError(f"assignment for {name!r} lives in a different basis")
            return v
        if name.startswith("x") and name[1:].isdigit():
            return NormalForm.generator(basis, int(name[1:]))
        raise SpecError(f"unbound name {name!r} in word")

    def ev(node) -> NormalForm:
        if isinstance(node, _words.Identity):
            return NormalForm.identity(basis)
        if isinstance(node, _words.Gen):
            return resolve(node.name)
        if isinstance(node, _words.Power):
            return inv_pow(ev(node.base), node.exp)
        if isinstance(node, _words.Product):
            acc = NormalForm.identity(basis)
            for item in node.items:
                acc = mul(acc, ev(item))
            return acc
        if isinstance(node, _words.Bracket):
            vals = [ev(item) for item in node.items]
            acc = vals[0]
            for v in vals[1:]:
                acc = comm(acc, v)
            return acc
        raise SpecError(f"unknown AST node {node!r}")

    return ev(ast)
