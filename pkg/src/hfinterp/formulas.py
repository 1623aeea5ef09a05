"""Syntax trees for the two first-order languages.

The *arithmetic* language talks about numbers: equality, order, the
constructors S, +, *, exp, numeric literals, and a family of function
symbols for operations on codes (powerset code, union-of-members code,
and so on) that the set-to-arithmetic translation targets.

The *set* language talks about hereditarily finite sets: membership,
equality, the Ackermann order comparison, equinumerosity atoms, ordinal
graph atoms, and term constructors for pairing, powerset, union, levels,
separation, numeral literals, plus order-arithmetic and cardinal
operations.

Both languages share the connectives and bounded quantifiers.  Nodes are
frozen dataclasses, so formulas hash and compare structurally; printing
is canonical (minimal parentheses) and is inverted by the parser.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field


class ArithTerm:
    """Base class for arithmetic terms."""

    __slots__ = ()


class ArithFormula:
    """Base class for arithmetic formulas."""

    __slots__ = ()


class SetTerm:
    """Base class for set terms."""

    __slots__ = ()


class SetFormula:
    """Base class for set formulas."""

    __slots__ = ()


# ---------------------------------------------------------------------------
# operation registries: symbol -> arity
# ---------------------------------------------------------------------------

#: arithmetic function symbols (beyond literals and variables)
ARITH_OPS = {
    "S": 1, "+": 2, "*": 2, "exp": 2,
    # code operations: images of the set constructors under coding
    "pow": 1,      # code of the powerset of the coded set
    "sumc": 1,     # code of the union of the coded set's members
    "pairc": 2,    # code of the unordered pair of the coded sets
    "rankc": 1,    # code of the level that the coded set belongs to
    "cardc": 1,    # number of members of the coded set (popcount)
    "vnsc": 1,     # code of x adjoined to itself (next von Neumann ordinal)
    "ordaddc": 2,  # codes of von Neumann ordinal arithmetic
    "ordmulc": 2,
    "ordexpc": 2,
    "caddc": 2,    # codes of cardinal (tagged-union / product / function
    "cmulc": 2,    # space) arithmetic on the coded sets
    "cexpc": 2,
}

#: arithmetic relation symbols
ARITH_RELS = {"=": 2, "<": 2, "Dom": 1, "OrdCode": 1}

#: set function symbols (beyond literals, variables, enumerations, sep)
SET_OPS = {
    "pair": 2, "pset": 1, "sum": 1, "rank": 1, "vns": 1,
    "osucc": 1, "oadd": 2, "omul": 2, "oexp": 2,   # Ackermann-order arithmetic
    "cadd": 2, "cmul": 2, "cexp": 2,               # cardinal arithmetic
    "cardof": 1,                     # cardinality, as a set along the order
    "vadd": 2, "vmul": 2, "vexp": 2,  # von Neumann ordinal arithmetic
}

#: set relation symbols
SET_RELS = {
    "in": 2, "=": 2,
    "<a": 2,                       # Ackermann order comparison
    "~c": 2, "<c": 2, "<=c": 2,    # equinumerosity / strict / injective
    "isord": 1, "Dom": 1,
    "ordadd": 3, "ordmul": 3, "ordexp": 3,  # ordinal operation graphs
}

#: quantifier bound kinds in the set language
BOUND_MEMBER = "member"
BOUND_ORDER = "order"


# ---------------------------------------------------------------------------
# arithmetic nodes
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AVar(ArithTerm):
    name: str


@dataclass(frozen=True)
class ALit(ArithTerm):
    value: int

    def __post_init__(self):
        if self.value < 0:
            raise ValueError("numeric literals are non-negative")


@dataclass(frozen=True)
class AOp(ArithTerm):
    op: str
    args: "tuple[ArithTerm, ...]"

    def __post_init__(self):
        if self.op not in ARITH_OPS:
            raise ValueError(f"unknown arithmetic operation {self.op!r}")
        if len(self.args) != ARITH_OPS[self.op]:
            raise ValueError(f"{self.op} takes {ARITH_OPS[self.op]} arguments")


@dataclass(frozen=True)
class ASep(ArithTerm):
    """Bounded separation on codes: the code of {i < bound : body(i)}.

    Only bits of the bound's code are kept, so the value never exceeds
    the bound interpreted as a code.
    """

    var: str
    bound: ArithTerm
    body: "ArithFormula"


@dataclass(frozen=True)
class ARel(ArithFormula):
    op: str
    args: "tuple[ArithTerm, ...]"

    def __post_init__(self):
        if self.op not in ARITH_RELS:
            raise ValueError(f"unknown arithmetic relation {self.op!r}")
        if len(self.args) != ARITH_RELS[self.op]:
            raise ValueError(f"{self.op} takes {ARITH_RELS[self.op]} arguments")


@dataclass(frozen=True)
class ANot(ArithFormula):
    body: ArithFormula


@dataclass(frozen=True)
class AAnd(ArithFormula):
    left: ArithFormula
    right: ArithFormula


@dataclass(frozen=True)
class AOr(ArithFormula):
    left: ArithFormula
    right: ArithFormula


@dataclass(frozen=True)
class AImplies(ArithFormula):
    left: ArithFormula
    right: ArithFormula


@dataclass(frozen=True)
class AForall(ArithFormula):
    var: str
    bound: "ArithTerm | None"
    body: ArithFormula


@dataclass(frozen=True)
class AExists(ArithFormula):
    var: str
    bound: "ArithTerm | None"
    body: ArithFormula


# ---------------------------------------------------------------------------
# set nodes
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SVar(SetTerm):
    name: str


@dataclass(frozen=True)
class SEmpty(SetTerm):
    pass


@dataclass(frozen=True)
class SLit(SetTerm):
    """#n: the n-th set along the Ackermann ordering."""

    value: int

    def __post_init__(self):
        if self.value < 0:
            raise ValueError("numeral literals are non-negative")


@dataclass(frozen=True)
class SEnum(SetTerm):
    """A finite enumeration {t1, ..., tk}."""

    elems: "tuple[SetTerm, ...]" = field(default=())


@dataclass(frozen=True)
class SOp(SetTerm):
    op: str
    args: "tuple[SetTerm, ...]"

    def __post_init__(self):
        if self.op not in SET_OPS:
            raise ValueError(f"unknown set operation {self.op!r}")
        if len(self.args) != SET_OPS[self.op]:
            raise ValueError(f"{self.op} takes {SET_OPS[self.op]} arguments")


@dataclass(frozen=True)
class SSep(SetTerm):
    """Separation: {var in dom : body}."""

    var: str
    dom: SetTerm
    body: "SetFormula"


@dataclass(frozen=True)
class SRel(SetFormula):
    op: str
    args: "tuple[SetTerm, ...]"

    def __post_init__(self):
        if self.op not in SET_RELS:
            raise ValueError(f"unknown set relation {self.op!r}")
        if len(self.args) != SET_RELS[self.op]:
            raise ValueError(f"{self.op} takes {SET_RELS[self.op]} arguments")


@dataclass(frozen=True)
class SNot(SetFormula):
    body: SetFormula


@dataclass(frozen=True)
class SAnd(SetFormula):
    left: SetFormula
    right: SetFormula


@dataclass(frozen=True)
class SOr(SetFormula):
    left: SetFormula
    right: SetFormula


@dataclass(frozen=True)
class SImplies(SetFormula):
    left: SetFormula
    right: SetFormula


@dataclass(frozen=True)
class SForall(SetFormula):
    var: str
    bound: "SetTerm | None"
    body: SetFormula
    bound_kind: str = BOUND_MEMBER

    def __post_init__(self):
        _check_bound_kind(self)


@dataclass(frozen=True)
class SExists(SetFormula):
    var: str
    bound: "SetTerm | None"
    body: SetFormula
    bound_kind: str = BOUND_MEMBER

    def __post_init__(self):
        _check_bound_kind(self)


def _check_bound_kind(q) -> None:
    if q.bound_kind not in (BOUND_MEMBER, BOUND_ORDER):
        raise ValueError(f"unknown bound kind {q.bound_kind!r}")
    # an unbounded quantifier has no meaningful bound kind; normalize so
    # structural equality matches semantic equality
    if q.bound is None and q.bound_kind != BOUND_MEMBER:
        object.__setattr__(q, "bound_kind", BOUND_MEMBER)


Node = "ArithTerm | ArithFormula | SetTerm | SetFormula"


# ---------------------------------------------------------------------------
# free variables, substitution, boundedness
# ---------------------------------------------------------------------------

def free_vars(node) -> "frozenset[str]":
    """Free variable names of a term or formula (either language)."""
    if isinstance(node, (AVar, SVar)):
        return frozenset((node.name,))
    if isinstance(node, (ALit, SLit, SEmpty)):
        return frozenset()
    if isinstance(node, (AOp, SOp, ARel, SRel)):
        out = frozenset()
        for a in node.args:
            out |= free_vars(a)
        return out
    if isinstance(node, SEnum):
        out = frozenset()
        for a in node.elems:
            out |= free_vars(a)
        return out
    if isinstance(node, (ANot, SNot)):
        return free_vars(node.body)
    if isinstance(node, (AAnd, AOr, AImplies, SAnd, SOr, SImplies)):
        return free_vars(node.left) | free_vars(node.right)
    if isinstance(node, (AForall, AExists, SForall, SExists)):
        out = free_vars(node.body) - {node.var}
        if node.bound is not None:
            out |= free_vars(node.bound)
        return out
    if isinstance(node, ASep):
        return (free_vars(node.body) - {node.var}) | free_vars(node.bound)
    if isinstance(node, SSep):
        return (free_vars(node.body) - {node.var}) | free_vars(node.dom)
    raise TypeError(f"not a formula or term: {node!r}")


def fresh_var(base: str, avoid: "frozenset[str] | set[str]") -> str:
    """A variable name shaped like `base` that is not in `avoid`."""
    if base not in avoid:
        return base
    stem = base.rstrip("0123456789") or "v"
    for i in itertools.count(1):
        name = f"{stem}{i}"
        if name not in avoid:
            return name
    raise AssertionError("unreachable")


def _subst_binder(node, mapping, rebuild):
    """Shared capture-avoiding treatment of var-binding nodes."""
    mapping = {k: v for k, v in mapping.items() if k != node.var}
    if not mapping:
        return rebuild(node.var, node.body)
    var = node.var
    clash = any(var in free_vars(t) for t in mapping.values())
    body = node.body
    if clash:
        avoid = set(free_vars(body))
        for t in mapping.values():
            avoid |= free_vars(t)
        var = fresh_var(node.var, avoid)
        ref = AVar(var) if isinstance(body, (ArithFormula, ArithTerm)) \
            else SVar(var)
        body = substitute(body, {node.var: ref})
    return rebuild(var, substitute(body, mapping))


def substitute(node, mapping: dict):
    """Replace free variables by terms, renaming binders to avoid capture.

    The mapping sends names to terms of the node's own language.
    """
    if not mapping:
        return node
    if isinstance(node, (AVar, SVar)):
        return mapping.get(node.name, node)
    if isinstance(node, (ALit, SLit, SEmpty)):
        return node
    if isinstance(node, AOp):
        return AOp(node.op, tuple(substitute(a, mapping) for a in node.args))
    if isinstance(node, SOp):
        return SOp(node.op, tuple(substitute(a, mapping) for a in node.args))
    if isinstance(node, ARel):
        return ARel(node.op, tuple(substitute(a, mapping) for a in node.args))
    if isinstance(node, SRel):
        return SRel(node.op, tuple(substitute(a, mapping) for a in node.args))
    if isinstance(node, SEnum):
        return SEnum(tuple(substitute(a, mapping) for a in node.elems))
    if isinstance(node, (ANot, SNot)):
        return type(node)(substitute(node.body, mapping))
    if isinstance(node, (AAnd, AOr, AImplies, SAnd, SOr, SImplies)):
        return type(node)(substitute(node.left, mapping),
                          substitute(node.right, mapping))
    if isinstance(node, (AForall, AExists)):
        bound = None if node.bound is None else substitute(node.bound, mapping)
        return _subst_binder(
            node, mapping, lambda v, b: type(node)(v, bound, b))
    if isinstance(node, (SForall, SExists)):
        bound = None if node.bound is None else substitute(node.bound, mapping)
        return _subst_binder(
            node, mapping,
            lambda v, b: type(node)(v, bound, b, node.bound_kind))
    if isinstance(node, ASep):
        bound = substitute(node.bound, mapping)
        return _subst_binder(node, mapping, lambda v, b: ASep(v, bound, b))
    if isinstance(node, SSep):
        dom = substitute(node.dom, mapping)
        return _subst_binder(node, mapping, lambda v, b: SSep(v, dom, b))
    raise TypeError(f"not a formula or term: {node!r}")


def is_bounded(node) -> bool:
    """True when every quantifier in the formula carries a bound."""
    if isinstance(node, (AVar, SVar, ALit, SLit, SEmpty)):
        return True
    if isinstance(node, (AOp, SOp, ARel, SRel)):
        return all(is_bounded(a) for a in node.args)
    if isinstance(node, SEnum):
        return all(is_bounded(a) for a in node.elems)
    if isinstance(node, (ANot, SNot)):
        return is_bounded(node.body)
    if isinstance(node, (AAnd, AOr, AImplies, SAnd, SOr, SImplies)):
        return is_bounded(node.left) and is_bounded(node.right)
    if isinstance(node, (AForall, AExists, SForall, SExists)):
        if node.bound is None:
            return False
        return is_bounded(node.bound) and is_bounded(node.body)
    if isinstance(node, ASep):
        return is_bounded(node.bound) and is_bounded(node.body)
    if isinstance(node, SSep):
        return is_bounded(node.dom) and is_bounded(node.body)
    raise TypeError(f"not a formula or term: {node!r}")


# ---------------------------------------------------------------------------
# printing
# ---------------------------------------------------------------------------
# connective precedence:  !  >  &  >  |  >  ->   (-> associates right);
# a quantifier body extends as far right as possible.

_PREC_IMPLIES, _PREC_OR, _PREC_AND, _PREC_NOT = 10, 20, 30, 40
_PREC_ADD, _PREC_MUL, _PREC_ATOM = 1, 2, 3

#: infix spellings for set operations printed as s OP t
_SET_INFIX = {"oadd": ("+a", _PREC_ADD), "omul": ("*a", _PREC_MUL),
              "cadd": ("+c", _PREC_ADD), "cmul": ("*c", _PREC_MUL)}
_SET_FUNC = {"pair": "pair", "pset": "P", "sum": "U", "rank": "R",
             "vns": "vns", "osucc": "Sa", "oexp": "expa", "cexp": "expc",
             "cardof": "cardof", "vadd": "vadd", "vmul": "vmul",
             "vexp": "vexp"}


def _paren(text: str, mine: int, context: int) -> str:
    return f"({text})" if mine < context else text


def show_arith_term(t: ArithTerm, context: int = 0) -> str:
    if isinstance(t, AVar):
        return t.name
    if isinstance(t, ALit):
        return str(t.value)
    if isinstance(t, ASep):
        return (f"sepc({t.var} < {show_arith_term(t.bound)}, "
                f"{show_arith(t.body)})")
    if isinstance(t, AOp):
        if t.op in ("+", "*"):
            mine = _PREC_ADD if t.op == "+" else _PREC_MUL
            left = show_arith_term(t.args[0], mine)
            right = show_arith_term(t.args[1], mine + 1)
            return _paren(f"{left} {t.op} {right}", mine, context)
        args = ", ".join(show_arith_term(a) for a in t.args)
        return f"{t.op}({args})"
    raise TypeError(f"not an arithmetic term: {t!r}")


def show_arith(f: ArithFormula, context: int = 0) -> str:
    if isinstance(f, ARel):
        if f.op in ("=", "<"):
            return (f"{show_arith_term(f.args[0])} {f.op} "
                    f"{show_arith_term(f.args[1])}")
        args = ", ".join(show_arith_term(a) for a in f.args)
        return f"{f.op}({args})"
    if isinstance(f, ANot):
        return f"!{show_arith(f.body, _PREC_NOT)}"
    if isinstance(f, (AAnd, AOr, AImplies)):
        op, mine = {AAnd: ("&", _PREC_AND), AOr: ("|", _PREC_OR),
                    AImplies: ("->", _PREC_IMPLIES)}[type(f)]
        lctx = mine + 1 if isinstance(f, AImplies) else mine
        rctx = mine if isinstance(f, AImplies) else mine + 1
        text = f"{show_arith(f.left, lctx)} {op} {show_arith(f.right, rctx)}"
        return _paren(text, mine, context)
    if isinstance(f, (AForall, AExists)):
        word = "forall" if isinstance(f, AForall) else "exists"
        head = f"{word} {f.var}"
        if f.bound is not None:
            head += f" < {show_arith_term(f.bound)}"
        return _paren(f"{head}. {show_arith(f.body)}", 0, context)
    raise TypeError(f"not an arithmetic formula: {f!r}")


def show_set_term(t: SetTerm, context: int = 0) -> str:
    if isinstance(t, SVar):
        return t.name
    if isinstance(t, SEmpty):
        return "0e"
    if isinstance(t, SLit):
        return f"#{t.value}"
    if isinstance(t, SEnum):
        return "{" + ", ".join(show_set_term(e) for e in t.elems) + "}"
    if isinstance(t, SSep):
        return f"sep({t.var} in {show_set_term(t.dom)}, {show_set(t.body)})"
    if isinstance(t, SOp):
        if t.op in _SET_INFIX:
            sym, mine = _SET_INFIX[t.op]
            left = show_set_term(t.args[0], mine)
            right = show_set_term(t.args[1], mine + 1)
            return _paren(f"{left} {sym} {right}", mine, context)
        args = ", ".join(show_set_term(a) for a in t.args)
        return f"{_SET_FUNC[t.op]}({args})"
    raise TypeError(f"not a set term: {t!r}")


def show_set(f: SetFormula, context: int = 0) -> str:
    if isinstance(f, SRel):
        if SET_RELS[f.op] == 2:
            return (f"{show_set_term(f.args[0])} {f.op} "
                    f"{show_set_term(f.args[1])}")
        args = ", ".join(show_set_term(a) for a in f.args)
        return f"{f.op}({args})"
    if isinstance(f, SNot):
        return f"!{show_set(f.body, _PREC_NOT)}"
    if isinstance(f, (SAnd, SOr, SImplies)):
        op, mine = {SAnd: ("&", _PREC_AND), SOr: ("|", _PREC_OR),
                    SImplies: ("->", _PREC_IMPLIES)}[type(f)]
        lctx = mine + 1 if isinstance(f, SImplies) else mine
        rctx = mine if isinstance(f, SImplies) else mine + 1
        text = f"{show_set(f.left, lctx)} {op} {show_set(f.right, rctx)}"
        return _paren(text, mine, context)
    if isinstance(f, (SForall, SExists)):
        word = "forall" if isinstance(f, SForall) else "exists"
        head = f"{word} {f.var}"
        if f.bound is not None:
            sep = "in" if f.bound_kind == BOUND_MEMBER else "<a"
            head += f" {sep} {show_set_term(f.bound)}"
        return _paren(f"{head}. {show_set(f.body)}", 0, context)
    raise TypeError(f"not a set formula: {f!r}")
