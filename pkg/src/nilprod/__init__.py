"""Exact computation in k-nilpotent products of cyclic p-groups.

Hall-basis normal forms via the collection process, finite-group machinery
(centers, quotients, lower central series), and capability verdicts with
constructive witnesses.
"""

from .arith import INFINITY, binom_sum_bound, capability_slack, hall_bound_max, kummer_binom_val, vp
from .errors import BudgetExceeded, NilprodError, ParseError, SpecError
from .hallbasis import (
    K3P2,
    STANDARD,
    BasicCommutator,
    HallBasis,
    assign_moduli,
    build_basis,
    two_gen_shape,
    witt_number,
)
from .collector import (
    LEFTMOST_FIRST,
    RIGHTMOST_MINIMAL,
    NormalForm,
    collect,
    collect_reference,
    comm,
    element_order,
    evaluate_word,
    inv_pow,
    mul,
)
from .specs import GroupSpec, Presentation11, load_group_spec, parse_group_spec
from .words import format_normal_form, parse_word
from . import capability, engine, oracle

__version__ = "0.1.0"

__all__ = [
    "INFINITY",
    "vp",
    "kummer_binom_val",
    "binom_sum_bound",
    "hall_bound_max",
    "capability_slack",
    "NilprodError",
    "SpecError",
    "ParseError",
    "BudgetExceeded",
    "BasicCommutator",
    "HallBasis",
    "build_basis",
    "assign_moduli",
    "two_gen_shape",
    "witt_number",
    "STANDARD",
    "K3P2",
    "NormalForm",
    "collect",
    "collect_reference",
    "LEFTMOST_FIRST",
    "RIGHTMOST_MINIMAL",
    "mul",
    "inv_pow",
    "comm",
    "element_order",
    "evaluate_word",
    "parse_word",
    "format_normal_form",
    "GroupSpec",
    "Presentation11",
    "parse_group_spec",
    "load_group_spec",
    "engine",
    "capability",
    "oracle",
    "__version__",
]
