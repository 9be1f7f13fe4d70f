"""Expression, domain and statement nodes, plus canonical printing.

All nodes are frozen dataclasses: structural equality and hashing drive
common-subexpression detection, so source positions are excluded from
comparisons. Parse-time trees use Ident/MatrixLit; grounding resolves these
into VarRef atoms and MatVal constants, and the rewrite passes introduce the
n-ary And/Or/Sum/Prod and LinCmp forms.
"""

from __future__ import annotations

from dataclasses import dataclass, field, fields


def pos_field():
    return field(default=None, compare=False, repr=False)


class Expr:
    __slots__ = ()


# ---------------------------------------------------------------- leaves


@dataclass(frozen=True)
class IntLit(Expr):
    value: int
    pos: object = pos_field()


@dataclass(frozen=True)
class BoolLit(Expr):
    value: bool
    pos: object = pos_field()


@dataclass(frozen=True)
class Ident(Expr):
    name: str
    pos: object = pos_field()


@dataclass(frozen=True)
class VarRef(Expr):
    """A single decision variable: scalar find, matrix element, or auxiliary."""

    name: str
    pos: object = pos_field()


@dataclass(frozen=True)
class MatVal(Expr):
    """A fully shaped matrix value; elements may still be symbolic."""

    m: object  # values.Matrix
    pos: object = pos_field()


# ------------------------------------------------------------ structure


@dataclass(frozen=True)
class MatrixLit(Expr):
    items: tuple
    index_dom: object = None  # explicit domain after `;`, or None
    pos: object = pos_field()


@dataclass(frozen=True)
class UnOp(Expr):
    op: str  # '-', '!', 'abs'
    a: Expr
    pos: object = pos_field()


@dataclass(frozen=True)
class BinOp(Expr):
    op: str
    a: Expr
    b: object  # Expr, or a domain node when op == 'in'
    pos: object = pos_field()


@dataclass(frozen=True)
class Quant(Expr):
    which: str  # 'forAll' | 'exists' | 'sum'
    names: tuple
    dom: object
    body: Expr
    pos: object = pos_field()


@dataclass(frozen=True)
class Compr(Expr):
    head: Expr
    gens: tuple  # tuple[(name, domain-node), ...]
    conds: tuple  # boolean Exprs, evaluated once all generators are bound
    index_dom: object = None
    pos: object = pos_field()


@dataclass(frozen=True)
class Call(Expr):
    func: str
    args: tuple
    pos: object = pos_field()


@dataclass(frozen=True)
class Subscript(Expr):
    base: Expr
    subs: tuple  # Expr per position, or None for `..`
    pos: object = pos_field()


# ----------------------------------------------- ground-only internal forms


@dataclass(frozen=True)
class And(Expr):
    args: tuple
    pos: object = pos_field()


@dataclass(frozen=True)
class Or(Expr):
    args: tuple
    pos: object = pos_field()


@dataclass(frozen=True)
class Sum(Expr):
    """const + sum of coeff*expr terms."""

    terms: tuple  # tuple[(coeff, Expr), ...]
    const: int = 0
    pos: object = pos_field()


@dataclass(frozen=True)
class Prod(Expr):
    args: tuple
    pos: object = pos_field()


@dataclass(frozen=True)
class LinCmp(Expr):
    """sum(coeff*expr) op k, with op one of <= = !=."""

    op: str
    terms: tuple
    k: int
    pos: object = pos_field()


# ------------------------------------------------------------- domains


@dataclass(frozen=True)
class BoolDom:
    pos: object = pos_field()


@dataclass(frozen=True)
class IntParseDom:
    """int(...) with unevaluated endpoints; (None, e) / (e, None) are open."""

    items: tuple  # tuple[(lo Expr|None, hi Expr|None), ...]
    pos: object = pos_field()


@dataclass(frozen=True)
class MatrixDom:
    index_doms: tuple
    base: object
    pos: object = pos_field()


@dataclass(frozen=True)
class DomIdent:
    name: str
    pos: object = pos_field()


@dataclass(frozen=True)
class DomBinOp:
    op: str  # 'union' | 'intersect' | '-'
    a: object
    b: object
    pos: object = pos_field()


# ----------------------------------------------------------- statements


@dataclass(frozen=True)
class GivenStmt:
    names: tuple
    dom: object
    pos: object = pos_field()


@dataclass(frozen=True)
class WhereStmt:
    expr: Expr
    pos: object = pos_field()


@dataclass(frozen=True)
class LettingStmt:
    name: str
    expr: Expr
    dom: object = None  # optional annotation, re-indexes matrix literals
    pos: object = pos_field()


@dataclass(frozen=True)
class LettingDomStmt:
    name: str
    dom: object
    pos: object = pos_field()


@dataclass(frozen=True)
class FindStmt:
    names: tuple
    dom: object
    pos: object = pos_field()


@dataclass(frozen=True)
class ObjectiveStmt:
    minimise: bool
    expr: Expr
    pos: object = pos_field()


@dataclass(frozen=True)
class BranchingStmt:
    expr: Expr  # a matrix literal of variables/matrices
    pos: object = pos_field()


@dataclass(frozen=True)
class HeuristicStmt:
    name: str
    pos: object = pos_field()


@dataclass(frozen=True)
class SuchThatStmt:
    constraints: tuple
    pos: object = pos_field()


@dataclass(frozen=True)
class Model:
    statements: tuple


# ------------------------------------------------------------- printing

# Binary operator printing precedence; mirrors the parser's table.
BIN_PREC = {
    "<->": (-4, "L"), "->": (-4, "L"),
    "\\/": (-2, "L"), "/\\": (-1, "L"),
    "=": (0, "L"), "!=": (0, "L"), "<": (0, "L"), "<=": (0, "L"),
    ">": (0, "L"), ">=": (0, "L"),
    "<lex": (0, "L"), "<=lex": (0, "L"), ">lex": (0, "L"), ">=lex": (0, "L"),
    "in": (0, "L"),
    "union": (1, "L"), "+": (1, "L"), "-": (1, "L"),
    "intersect": (2, "L"),
    "*": (10, "L"), "/": (10, "L"), "%": (10, "L"),
    "**": (18, "R"),
}

ATOM_PREC = 100


def _paren(s, need):
    return f"({s})" if need else s


def expr_prec(e) -> int:
    if isinstance(e, UnOp):
        return {"-": 15, "!": 20, "abs": ATOM_PREC}[e.op]
    if isinstance(e, BinOp):
        return BIN_PREC.get(e.op, (ATOM_PREC, "L"))[0]
    if isinstance(e, Quant):
        return -10
    if isinstance(e, And):
        return -1
    if isinstance(e, Or):
        return -2
    if isinstance(e, (Sum, LinCmp)):
        return 0 if isinstance(e, LinCmp) else 1
    if isinstance(e, Prod):
        return 10
    if isinstance(e, IntLit) and e.value < 0:
        return 15
    return ATOM_PREC


def expr_str(e) -> str:
    from .values import matrix_str

    if isinstance(e, bool):
        return "true" if e else "false"
    if isinstance(e, int):
        return str(e)
    if isinstance(e, IntLit):
        return str(e.value)
    if isinstance(e, BoolLit):
        return "true" if e.value else "false"
    if isinstance(e, (Ident, VarRef)):
        return e.name
    if isinstance(e, MatVal):
        return matrix_str(e.m, elem=expr_str)
    if isinstance(e, MatrixLit):
        inner = ",".join(expr_str(x) for x in e.items)
        if e.index_dom is not None:
            inner += f";{domain_str(e.index_dom)}"
        return f"[{inner}]"
    if isinstance(e, UnOp):
        if e.op == "abs":
            return f"|{expr_str(e.a)}|"
        sub = _paren(expr_str(e.a), expr_prec(e.a) < expr_prec(e))
        return f"{e.op}{sub}"
    if isinstance(e, BinOp):
        prec, assoc = BIN_PREC.get(e.op, (ATOM_PREC, "L"))
        if e.op not in BIN_PREC:
            return f"{e.op}({expr_str(e.a)},{expr_str(e.b)})"
        rhs = domain_str(e.b) if e.op == "in" and not isinstance(e.b, Expr) \
            else expr_str(e.b)
        la = expr_prec(e.a)
        lb = expr_prec(e.b) if isinstance(e.b, Expr) else ATOM_PREC
        left = _paren(expr_str(e.a), la < prec or (la == prec and assoc == "R"))
        right = _paren(rhs, lb < prec or (lb == prec and assoc == "L"))
        return f"{left} {e.op} {right}"
    if isinstance(e, Quant):
        return (f"{e.which} {','.join(e.names)} : {domain_str(e.dom)} . "
                f"{expr_str(e.body)}")
    if isinstance(e, Compr):
        parts = [f"{n} : {domain_str(d)}" for n, d in e.gens]
        parts += [expr_str(c) for c in e.conds]
        s = f"[{expr_str(e.head)} | {', '.join(parts)}"
        if e.index_dom is not None:
            s += f";{domain_str(e.index_dom)}"
        return s + "]"
    if isinstance(e, Call):
        return f"{e.func}({','.join(expr_str(a) for a in e.args)})"
    if isinstance(e, Subscript):
        subs = ",".join(".." if s is None else expr_str(s) for s in e.subs)
        base = _paren(expr_str(e.base), not isinstance(
            e.base, (Ident, VarRef, MatVal, Subscript, MatrixLit, Compr)))
        return f"{base}[{subs}]"
    if isinstance(e, And):
        if not e.args:
            return "true"
        return " /\\ ".join(
            _paren(expr_str(a), expr_prec(a) <= -1 and not isinstance(a, And))
            for a in e.args)
    if isinstance(e, Or):
        if not e.args:
            return "false"
        return " \\/ ".join(
            _paren(expr_str(a), expr_prec(a) <= -2 and not isinstance(a, Or))
            for a in e.args)
    if isinstance(e, Sum):
        return _sum_str(e.terms, e.const)
    if isinstance(e, Prod):
        return "*".join(_paren(expr_str(a), expr_prec(a) < 10) for a in e.args)
    if isinstance(e, LinCmp):
        return f"{_sum_str(e.terms, 0)} {e.op} {e.k}"
    raise TypeError(f"cannot print {e!r}")


def _sum_str(terms, const):
    if not terms:
        return str(const)
    bits = []
    for coeff, x in terms:
        xs = _paren(expr_str(x), expr_prec(x) < 10)
        if coeff == 1:
            t = xs
        elif coeff == -1:
            t = f"-{xs}"
        else:
            t = f"{coeff}*{xs}"
        if bits and not t.startswith("-"):
            bits.append(f"+ {t}")
        elif bits:
            bits.append(f"- {t[1:]}")
        else:
            bits.append(t)
    if const:
        bits.append(f"+ {const}" if const > 0 else f"- {-const}")
    return " ".join(bits)


def domain_str(d) -> str:
    from .domains import IntDomain

    if isinstance(d, IntDomain):
        return str(d)
    if isinstance(d, BoolDom):
        return "bool"
    if isinstance(d, IntParseDom):
        if len(d.items) == 1 and d.items[0] == (None, None):
            return "int"
        parts = []
        for lo, hi in d.items:
            if lo is not None and hi is not None and lo == hi:
                parts.append(expr_str(lo))
            else:
                ls = expr_str(lo) if lo is not None else ""
                hs = expr_str(hi) if hi is not None else ""
                parts.append(f"{ls}..{hs}")
        return f"int({','.join(parts)})"
    if isinstance(d, MatrixDom):
        idx = ",".join(domain_str(x) for x in d.index_doms)
        return f"matrix indexed by [{idx}] of {domain_str(d.base)}"
    if isinstance(d, DomIdent):
        return d.name
    if isinstance(d, DomBinOp):
        return f"({domain_str(d.a)} {d.op} {domain_str(d.b)})"
    if isinstance(d, tuple) and len(d) == 2:  # grounded matrix domain
        idx = ",".join(domain_str(x) for x in d[0])
        return f"matrix indexed by [{idx}] of {domain_str(d[1])}"
    raise TypeError(f"cannot print domain {d!r}")


def expr_key(e):
    """Deterministic, totally orderable structural key.

    Every component is a tagged tuple so heterogeneous keys never hit a
    cross-type comparison when used for sorting.
    """
    from .values import Matrix

    def item(v):
        if v is None:
            return ("n",)
        if isinstance(v, bool):
            return ("b", int(v))
        if isinstance(v, int):
            return ("i", v)
        if isinstance(v, str):
            return ("s", v)
        if isinstance(v, Expr):
            return ("e", expr_key(v))
        if isinstance(v, Matrix):
            return ("e", expr_key(v))
        if isinstance(v, tuple):
            return ("t",) + tuple(item(x) for x in v)
        return ("d", domain_str(v))

    if isinstance(e, Matrix):
        return ("Matrix", item(tuple(str(d) for d in e.index_doms)),
                item(e.elem_bool), item(e.elems))
    out = [type(e).__name__]
    for f in fields(e):
        if f.compare:
            out.append(item(getattr(e, f.name)))
    return tuple(out)
