"""Arithmetic carried by the Ackermann ordering of the sets.

Zero is the empty set, successor steps along the ordering, and the binary
operations are fixed by segment cardinalities: x + y is the unique z whose
segment from {{}} is as large as the tagged union of the operands'
segments, with products and function spaces playing the same role for
multiplication and exponentiation.

Every binary operation has two routes that are checked against each other
and must never be collapsed:

- ``literal`` walks the materialized ordering and really builds the
  tagged unions / pair sets / function counts;
- ``fast`` transports the operands to their codes, uses machine
  arithmetic, and decodes the result.
"""

from __future__ import annotations

from . import cardinal
from .core import (
    DEFAULT_BIT_BUDGET,
    DEFAULT_ENUM_BUDGET,
    HFSet,
    decode,
    empty,
    encode,
    from_children,
)
from .errors import BudgetExceeded
from .order import (
    MAX_MATERIALIZED_LEVEL,
    ack_enum_iter,
    ack_less,
    ack_order,
    position,
    successor_a,
)

LITERAL = "literal"
FAST = "fast"
DEFAULT_LITERAL_CUTOFF = 64

# function spaces up to this many graphs are materialized in literal mode;
# larger ones are counted by enumeration without building the graphs
_EXP_MATERIALIZE_CAP = 4096


def zero_a() -> HFSet:
    """The ordering's least element: the empty set."""
    return empty()


def succ_a(x: HFSet) -> HFSet:
    """Next set in the ordering (single honest route; see order module)."""
    return successor_a(x)


def less_a(x: HFSet, y: HFSet) -> bool:
    """Order comparison; same in both modes."""
    return ack_less(x, y)


def _segment_field(x: HFSet, literal_cutoff: int) -> HFSet:
    """The set of ordering elements from {{}} to x inclusive."""
    pos = position(x)
    if pos > literal_cutoff:
        raise BudgetExceeded(
            f"literal mode needs operand position <= {literal_cutoff}")
    items = ack_order(MAX_MATERIALIZED_LEVEL).items
    return from_children(items[1:pos + 1])


def _scan_to_segment_card(target: "HFSet | None", want: int,
                          enum_budget: int) -> HFSet:
    """Walk the ordering to the unique z whose segment has `want` members."""
    if want > enum_budget:
        raise BudgetExceeded(
            f"literal result at position {want} exceeds the budget")
    items = ack_order(MAX_MATERIALIZED_LEVEL).items
    for i, z in ack_enum_iter():
        if i == want:
            if target is not None and i < len(items):
                field = from_children(items[1:i + 1])
                if not cardinal.card_eq(target, field):
                    raise AssertionError(
                        "segment scan disagrees with cardinal equivalence")
            return z
    raise AssertionError("unreachable")


def add_a(x: HFSet, y: HFSet, mode: str = FAST, *,
          literal_cutoff: int = DEFAULT_LITERAL_CUTOFF,
          enum_budget: int = DEFAULT_ENUM_BUDGET) -> HFSet:
    """Ordering addition: segment of the result ~ tagged union of segments."""
    if mode == FAST:
        return decode(encode(x) + encode(y))
    a = _segment_field(x, literal_cutoff)
    b = _segment_field(y, literal_cutoff)
    target = cardinal.card_add(a, b, enum_budget)
    return _scan_to_segment_card(target, cardinal.card(target), enum_budget)


def mul_a(x: HFSet, y: HFSet, mode: str = FAST, *,
          literal_cutoff: int = DEFAULT_LITERAL_CUTOFF,
          enum_budget: int = DEFAULT_ENUM_BUDGET) -> HFSet:
    """Ordering multiplication: segment of the result ~ segment product."""
    if mode == FAST:
        return decode(encode(x) * encode(y))
    a = _segment_field(x, literal_cutoff)
    b = _segment_field(y, literal_cutoff)
    target = cardinal.product(a, b, enum_budget)
    return _scan_to_segment_card(target, cardinal.card(target), enum_budget)


def exp_a(x: HFSet, y: HFSet, mode: str = FAST, *,
          literal_cutoff: int = DEFAULT_LITERAL_CUTOFF,
          enum_budget: int = DEFAULT_ENUM_BUDGET) -> HFSet:
    """Ordering exponentiation: segment ~ function space of the segments."""
    if mode == FAST:
        cx, cy = encode(x), encode(y)
        if cx >= 2 and cy * (cx.bit_length()) > DEFAULT_BIT_BUDGET + 64:
            raise BudgetExceeded("exponentiation result exceeds bit budget")
        return decode(cx ** cy)
    a = _segment_field(x, literal_cutoff)
    b = _segment_field(y, literal_cutoff)
    na, nb = cardinal.card(a), cardinal.card(b)
    if 0 < na ** nb <= _EXP_MATERIALIZE_CAP:
        target = cardinal.card_exp(a, b, enum_budget)
        want = cardinal.card(target)
    else:
        target = None
        want = cardinal.count_functions(a, b, enum_budget)
    return _scan_to_segment_card(target, want, enum_budget)
