"""The four translations between the two languages.

- ``a`` (set -> arithmetic): reads sets as their codes.  Membership
  becomes the bit-extraction formula, the set constructors become the
  corresponding code operations, and both kinds of bounded set
  quantifier stay bounded (a member's code is smaller than its set's
  code).  Total on the set language.

- ``c`` (arithmetic -> set): reads numbers as cardinalities.  Equality
  becomes equinumerosity, < becomes the strict cardinality comparison,
  S adjoins the set to itself, and +, *, exp become the tagged union,
  pair-set product, and function space.  Covers the core arithmetic
  fragment; code operations are out of scope.  Bounded quantifiers lose
  their bound (there is no single set containing a representative of
  every smaller cardinality), keeping only a cardinality guard.

- ``o`` (arithmetic -> set): reads numbers as von Neumann ordinals,
  relativizing quantifiers to ordinals.  < becomes membership; +, *,
  exp are flattened into operation-graph atoms behind existentials.
  Covers the core fragment.

- ``d`` (arithmetic -> set): reads the n-th number as the n-th set in
  the Ackermann ordering.  < becomes the order comparison, S, +, *, exp
  become the order-arithmetic operations, bounded quantifiers become
  order-bounded, and each code operation becomes the set constructor it
  codes.  Total on the arithmetic language.

`compose(outer, inner)` chains two maps when inner's target language is
outer's source language; `get_map` resolves names like "a" or "da"
(rightmost applied first).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .errors import LanguageMismatch
from .formulas import (
    ALit,
    AAnd,
    AExists,
    AForall,
    AImplies,
    ANot,
    AOp,
    AOr,
    ARel,
    ASep,
    AVar,
    ArithFormula,
    ArithTerm,
    BOUND_MEMBER,
    BOUND_ORDER,
    SEnum,
    SAnd,
    SEmpty,
    SExists,
    SForall,
    SImplies,
    SLit,
    SNot,
    SOp,
    SOr,
    SRel,
    SSep,
    SVar,
    SetFormula,
    SetTerm,
    free_vars,
    fresh_var,
    substitute,
)

ARITH, SET = "arith", "set"


# ---------------------------------------------------------------------------
# a: set language -> arithmetic language (sets as codes)
# ---------------------------------------------------------------------------

def _bit_formula(s: ArithTerm, t: ArithTerm) -> ArithFormula:
    """Bit s of t is set: exists n < t. exists m < 2^s.
    t = 2^(s+1) * n + 2^s + m."""
    avoid = free_vars(s) | free_vars(t)
    n = fresh_var("n", avoid)
    m = fresh_var("m", avoid | {n})
    two = ALit(2)
    low = AOp("exp", (two, s))
    high = AOp("exp", (two, AOp("+", (s, ALit(1)))))
    value = AOp("+", (AOp("+", (AOp("*", (high, AVar(n))), low)), AVar(m)))
    return AExists(n, t, AExists(m, low, ARel("=", (t, value))))


_A_OPS = {"pair": "pairc", "pset": "pow", "sum": "sumc", "rank": "rankc",
          "vns": "vnsc", "cadd": "caddc", "cmul": "cmulc", "cexp": "cexpc",
          "cardof": "cardc", "vadd": "ordaddc", "vmul": "ordmulc",
          "vexp": "ordexpc"}
_A_ORDER_OPS = {"oadd": "+", "omul": "*", "oexp": "exp"}


def translate_a_term(t: SetTerm) -> ArithTerm:
    if isinstance(t, SVar):
        return AVar(t.name)
    if isinstance(t, SEmpty):
        return ALit(0)
    if isinstance(t, SLit):
        return ALit(t.value)
    if isinstance(t, SEnum):
        if not t.elems:
            return ALit(0)
        return _enum_code([translate_a_term(e) for e in t.elems])
    if isinstance(t, SSep):
        return ASep(t.var, translate_a_term(t.dom), translate_a(t.body))
    if isinstance(t, SOp):
        if t.op == "osucc":
            return AOp("+", (translate_a_term(t.args[0]), ALit(1)))
        if t.op in _A_ORDER_OPS:
            return AOp(_A_ORDER_OPS[t.op],
                       tuple(translate_a_term(a) for a in t.args))
        return AOp(_A_OPS[t.op], tuple(translate_a_term(a) for a in t.args))
    raise LanguageMismatch(f"not a set term: {t!r}")


def _enum_code(codes: "list[ArithTerm]") -> ArithTerm:
    """Code of the set enumerating `codes`, folded through pair codes:
    {a, b, c, d} is the union of the two-element set {{a, b}, {c, d}}."""
    if len(codes) == 1:
        return AOp("pairc", (codes[0], codes[0]))
    if len(codes) == 2:
        return AOp("pairc", (codes[0], codes[1]))
    pairs = [AOp("pairc", (codes[i], codes[min(i + 1, len(codes) - 1)]))
             for i in range(0, len(codes), 2)]
    return AOp("sumc", (_enum_code(pairs),))


def _a_ord_graph(op: str, args: "tuple[ArithTerm, ...]") -> ArithFormula:
    x, y, z = args
    guard = AAnd(ARel("OrdCode", (x,)), ARel("OrdCode", (y,)))
    return AAnd(guard, ARel("=", (AOp(op, (x, y)), z)))


def translate_a(f: SetFormula) -> ArithFormula:
    if isinstance(f, SRel):
        args = tuple(translate_a_term(a) for a in f.args)
        if f.op == "in":
            return _bit_formula(args[0], args[1])
        if f.op == "=":
            return ARel("=", args)
        if f.op == "<a":
            return ARel("<", args)
        if f.op == "~c":
            return ARel("=", (AOp("cardc", (args[0],)),
                              AOp("cardc", (args[1],))))
        if f.op == "<c":
            return ARel("<", (AOp("cardc", (args[0],)),
                              AOp("cardc", (args[1],))))
        if f.op == "<=c":
            return ANot(ARel("<", (AOp("cardc", (args[1],)),
                                   AOp("cardc", (args[0],)))))
        if f.op == "isord":
            return ARel("OrdCode", args)
        if f.op == "Dom":
            return ARel("Dom", args)
        if f.op in ("ordadd", "ordmul", "ordexp"):
            return _a_ord_graph(f.op + "c", args)
        raise LanguageMismatch(f"unknown set relation {f.op!r}")
    if isinstance(f, SNot):
        return ANot(translate_a(f.body))
    if isinstance(f, SAnd):
        return AAnd(translate_a(f.left), translate_a(f.right))
    if isinstance(f, SOr):
        return AOr(translate_a(f.left), translate_a(f.right))
    if isinstance(f, SImplies):
        return AImplies(translate_a(f.left), translate_a(f.right))
    if isinstance(f, (SForall, SExists)):
        univ = isinstance(f, SForall)
        if f.bound is None:
            node = AForall if univ else AExists
            return node(f.var, None, translate_a(f.body))
        var, body = f.var, f.body
        if var in free_vars(f.bound):
            # the bound reappears inside the new scope; rename to avoid
            # capturing its occurrence of the quantified variable
            var = fresh_var(var, free_vars(body) | free_vars(f.bound))
            body = substitute(body, {f.var: SVar(var)})
        bound = translate_a_term(f.bound)
        inner = translate_a(body)
        if f.bound_kind == BOUND_ORDER:
            node = AForall if univ else AExists
            return node(var, bound, inner)
        guard = _bit_formula(AVar(var), bound)
        if univ:
            return AForall(var, bound, AImplies(guard, inner))
        return AExists(var, bound, AAnd(guard, inner))
    raise LanguageMismatch(f"not a set formula: {f!r}")


# ---------------------------------------------------------------------------
# c: arithmetic -> set (numbers as cardinalities)
# ---------------------------------------------------------------------------

_C_OPS = {"S": "vns", "+": "cadd", "*": "cmul", "exp": "cexp"}


def translate_c_term(t: ArithTerm) -> SetTerm:
    if isinstance(t, AVar):
        return SVar(t.name)
    if isinstance(t, ALit):
        out: SetTerm = SEmpty()
        for _ in range(t.value):
            out = SOp("vns", (out,))
        return out
    if isinstance(t, AOp):
        if t.op in _C_OPS:
            return SOp(_C_OPS[t.op],
                       tuple(translate_c_term(a) for a in t.args))
        raise LanguageMismatch(
            f"the cardinal interpretation covers 0, S, +, *, exp only, "
            f"not {t.op!r}")
    raise LanguageMismatch(
        f"the cardinal interpretation covers 0, S, +, *, exp only: {t!r}")


def translate_c(f: ArithFormula) -> SetFormula:
    if isinstance(f, ARel):
        if f.op in ("=", "<"):
            op = "~c" if f.op == "=" else "<c"
            return SRel(op, tuple(translate_c_term(a) for a in f.args))
        if f.op == "Dom":
            return SRel("Dom", tuple(translate_c_term(a) for a in f.args))
        raise LanguageMismatch(
            f"the cardinal interpretation does not cover {f.op!r}")
    if isinstance(f, ANot):
        return SNot(translate_c(f.body))
    if isinstance(f, AAnd):
        return SAnd(translate_c(f.left), translate_c(f.right))
    if isinstance(f, AOr):
        return SOr(translate_c(f.left), translate_c(f.right))
    if isinstance(f, AImplies):
        return SImplies(translate_c(f.left), translate_c(f.right))
    if isinstance(f, (AForall, AExists)):
        univ = isinstance(f, AForall)
        node = SForall if univ else SExists
        if f.bound is None:
            return node(f.var, None, translate_c(f.body))
        # sets of every smaller cardinality occur arbitrarily late in any
        # enumeration, so the translated quantifier cannot stay bounded;
        # keep the comparison as a guard
        var, body = f.var, f.body
        if var in free_vars(f.bound):
            var = fresh_var(var, free_vars(body) | free_vars(f.bound))
            body = substitute(body, {f.var: AVar(var)})
        guard = SRel("<c", (SVar(var), translate_c_term(f.bound)))
        inner = translate_c(body)
        if univ:
            return SForall(var, None, SImplies(guard, inner))
        return SExists(var, None, SAnd(guard, inner))
    raise LanguageMismatch(f"not an arithmetic formula: {f!r}")


# ---------------------------------------------------------------------------
# o: arithmetic -> set (numbers as von Neumann ordinals)
# ---------------------------------------------------------------------------

_O_GRAPHS = {"+": "ordadd", "*": "ordmul", "exp": "ordexp"}


def _o_flatten(t: ArithTerm, constraints: "list[SetFormula]",
               avoid: "set[str]", fresh: "list[str]") -> SetTerm:
    """Translate a term, pushing +, *, exp into graph atoms on fresh
    variables appended to `constraints` (and recorded in `fresh`)."""
    if isinstance(t, AVar):
        return SVar(t.name)
    if isinstance(t, ALit):
        out: SetTerm = SEmpty()
        for _ in range(t.value):
            out = SOp("vns", (out,))
        return out
    if isinstance(t, AOp):
        if t.op == "S":
            return SOp("vns",
                       (_o_flatten(t.args[0], constraints, avoid, fresh),))
        if t.op in _O_GRAPHS:
            left = _o_flatten(t.args[0], constraints, avoid, fresh)
            right = _o_flatten(t.args[1], constraints, avoid, fresh)
            z = fresh_var(f"t{len(fresh)}", avoid)
            avoid.add(z)
            fresh.append(z)
            constraints.append(
                SRel(_O_GRAPHS[t.op], (left, right, SVar(z))))
            return SVar(z)
        raise LanguageMismatch(
            f"the ordinal interpretation covers 0, S, +, *, exp only, "
            f"not {t.op!r}")
    raise LanguageMismatch(
        f"the ordinal interpretation covers 0, S, +, *, exp only: {t!r}")


def _o_close(atom: SetFormula, constraints: "list[SetFormula]",
             fresh: "list[str]") -> SetFormula:
    out = atom
    for c in reversed(constraints):
        out = SAnd(c, out)
    for name in reversed(fresh):
        out = SExists(name, None, out)
    return out


def _o_atom(op: str, terms: "tuple[ArithTerm, ...]") -> SetFormula:
    avoid = set()
    for t in terms:
        avoid |= free_vars(t)
    constraints: "list[SetFormula]" = []
    fresh: "list[str]" = []
    parts = [_o_flatten(t, constraints, avoid, fresh) for t in terms]
    if op == "=":
        atom: SetFormula = SRel("=", tuple(parts))
    elif op == "<":
        atom = SRel("in", tuple(parts))
    elif op == "Dom":
        atom = SRel("isord", tuple(parts))
    else:
        raise LanguageMismatch(
            f"the ordinal interpretation does not cover {op!r}")
    return _o_close(atom, constraints, fresh)


def translate_o(f: ArithFormula) -> SetFormula:
    if isinstance(f, ARel):
        return _o_atom(f.op, f.args)
    if isinstance(f, ANot):
        return SNot(translate_o(f.body))
    if isinstance(f, AAnd):
        return SAnd(translate_o(f.left), translate_o(f.right))
    if isinstance(f, AOr):
        return SOr(translate_o(f.left), translate_o(f.right))
    if isinstance(f, AImplies):
        return SImplies(translate_o(f.left), translate_o(f.right))
    if isinstance(f, (AForall, AExists)):
        univ = isinstance(f, AForall)
        inner = translate_o(f.body)
        if f.bound is None:
            guard = SRel("isord", (SVar(f.var),))
            body = SImplies(guard, inner) if univ else SAnd(guard, inner)
            return (SForall if univ else SExists)(f.var, None, body)
        # n < bound becomes membership, so the quantifier can range over
        # the bound's members; ordinal-hood of members is automatic
        avoid = set(free_vars(f.bound)) | set(free_vars(f.body)) | {f.var}
        constraints: "list[SetFormula]" = []
        fresh: "list[str]" = []
        bound = _o_flatten(f.bound, constraints, avoid, fresh)
        var = f.var
        if var in free_vars(f.bound):
            var = fresh_var(var, avoid)
            inner = translate_o(substitute(f.body, {f.var: AVar(var)}))
        quant = (SForall if univ else SExists)(
            var, bound, inner, BOUND_MEMBER)
        if not constraints:
            return quant
        return _o_close(quant, constraints, fresh)
    raise LanguageMismatch(f"not an arithmetic formula: {f!r}")


# ---------------------------------------------------------------------------
# d: arithmetic -> set (numbers as their position along the ordering)
# ---------------------------------------------------------------------------

_D_OPS = {"S": "osucc", "+": "oadd", "*": "omul", "exp": "oexp",
          "pow": "pset", "sumc": "sum", "pairc": "pair", "rankc": "rank",
          "cardc": "cardof", "vnsc": "vns", "ordaddc": "vadd",
          "ordmulc": "vmul", "ordexpc": "vexp", "caddc": "cadd",
          "cmulc": "cmul", "cexpc": "cexp"}


def translate_d_term(t: ArithTerm) -> SetTerm:
    if isinstance(t, AVar):
        return SVar(t.name)
    if isinstance(t, ALit):
        return SEmpty() if t.value == 0 else SLit(t.value)
    if isinstance(t, AOp):
        return SOp(_D_OPS[t.op], tuple(translate_d_term(a) for a in t.args))
    if isinstance(t, ASep):
        return SSep(t.var, translate_d_term(t.bound), translate_d(t.body))
    raise LanguageMismatch(f"not an arithmetic term: {t!r}")


def translate_d(f: ArithFormula) -> SetFormula:
    if isinstance(f, ARel):
        args = tuple(translate_d_term(a) for a in f.args)
        if f.op == "=":
            return SRel("=", args)
        if f.op == "<":
            return SRel("<a", args)
        if f.op == "Dom":
            return SRel("Dom", args)
        if f.op == "OrdCode":
            return SRel("isord", args)
        raise LanguageMismatch(f"unknown arithmetic relation {f.op!r}")
    if isinstance(f, ANot):
        return SNot(translate_d(f.body))
    if isinstance(f, AAnd):
        return SAnd(translate_d(f.left), translate_d(f.right))
    if isinstance(f, AOr):
        return SOr(translate_d(f.left), translate_d(f.right))
    if isinstance(f, AImplies):
        return SImplies(translate_d(f.left), translate_d(f.right))
    if isinstance(f, (AForall, AExists)):
        node = SForall if isinstance(f, AForall) else SExists
        bound = None if f.bound is None else translate_d_term(f.bound)
        kind = BOUND_ORDER if bound is not None else BOUND_MEMBER
        return node(f.var, bound, translate_d(f.body), kind)
    raise LanguageMismatch(f"not an arithmetic formula: {f!r}")


# ---------------------------------------------------------------------------
# the map registry and composition
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class InterpMap:
    """A named translation between the languages."""

    name: str
    source: str
    target: str
    on_formula: "Callable[..., object]"
    on_term: "Callable[..., object] | None" = None

    def __call__(self, formula):
        return self.on_formula(formula)


MAP_A = InterpMap("a", SET, ARITH, translate_a, translate_a_term)
MAP_C = InterpMap("c", ARITH, SET, translate_c, translate_c_term)
MAP_O = InterpMap("o", ARITH, SET, translate_o, None)
MAP_D = InterpMap("d", ARITH, SET, translate_d, translate_d_term)

MAPS = {"a": MAP_A, "c": MAP_C, "o": MAP_O, "d": MAP_D}


def compose(outer: InterpMap, inner: InterpMap) -> InterpMap:
    """The map applying `inner` first, then `outer`."""
    if inner.target != outer.source:
        raise LanguageMismatch(
            f"cannot compose: {inner.name!r} produces {inner.target} "
            f"formulas but {outer.name!r} consumes {outer.source} formulas")
    on_term = None
    if inner.on_term is not None and outer.on_term is not None:
        term_in, term_out = inner.on_term, outer.on_term
        on_term = lambda t: term_out(term_in(t))  # noqa: E731
    return InterpMap(outer.name + inner.name, inner.source, outer.target,
                     lambda f: outer.on_formula(inner.on_formula(f)),
                     on_term)


def get_map(tag: str) -> InterpMap:
    """Resolve a map name like "a" or a composition like "da"
    (rightmost letter applied first)."""
    if not tag or any(ch not in MAPS for ch in tag):
        known = ", ".join(sorted(MAPS))
        raise LanguageMismatch(f"unknown map {tag!r} (single maps: {known})")
    out = MAPS[tag[-1]]
    for ch in reversed(tag[:-1]):
        out = compose(MAPS[ch], out)
    return out
