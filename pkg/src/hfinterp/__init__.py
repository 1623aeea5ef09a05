"""Hereditarily finite sets, orderings, and interpretation maps.

The package splits into:

- ``core``     canonical HF sets and the Ackermann bit coding
- ``order``    lexicographic / Ackermann orderings, successor, numerals
- ``cardinal`` Kuratowski pairs, products, function spaces, cardinality
- ``arith``    the arithmetic model carried by the Ackermann order
- ``formulas`` ASTs for the arithmetic and set languages
- ``parser``   concrete syntax for both languages
- ``interp``   the four translation maps (a, c, o, d) and composition
- ``evaluate`` finite-model evaluation with explicit cutoffs
- ``verify``   checking suites producing replayable reports
- ``cli``      the ``hf`` command line tool
"""

from .core import (
    HFSet,
    decode,
    empty,
    encode,
    format_set,
    from_children,
    mem,
    parse_set_literal,
)
from .errors import (
    BudgetExceeded,
    FormulaSyntaxError,
    LanguageMismatch,
    NotAnOrdinal,
    NotASubset,
)

__all__ = [
    "HFSet",
    "decode",
    "empty",
    "encode",
    "format_set",
    "from_children",
    "mem",
    "parse_set_literal",
    "BudgetExceeded",
    "FormulaSyntaxError",
    "LanguageMismatch",
    "NotAnOrdinal",
    "NotASubset",
]
