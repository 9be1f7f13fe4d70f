"""Expression evaluation: total on constants, partial on decision residuals.

`partial_eval` folds every constant subexpression, expands quantifiers and
comprehensions, applies the relational semantics of undefinedness (an
undefined integer or matrix propagates upward until the closest boolean
expression, which becomes false), and returns either a Python value or a
residual tree over VarRef atoms. All arithmetic is checked signed 64-bit;
overflow is an instance error, never silent wraparound.
"""

from __future__ import annotations

import itertools

from .ast_nodes import (And, BinOp, BoolDom, BoolLit, Call, Compr, DomBinOp,
                        DomIdent, Expr, Ident, IntLit, IntParseDom, LinCmp,
                        MatVal, MatrixDom, MatrixLit, Or, Prod, Quant,
                        Subscript, Sum, UnOp, VarRef)
from .domains import BOOL_DOMAIN, INT64_MAX, INT64_MIN, IntDomain, NEG_INF, POS_INF
from .errors import InstanceError, ModelError
from .values import (UNDEF, Matrix, flatten_matrix, is_const, matrix_1d,
                     matrix_from_rows, subscript_matrix)

MAX_UNROLL = 1 << 20  # assignments per quantifier/comprehension

BOOL_CALLS = {"allDiff", "alldifferent_except", "gcc", "atmost", "atleast",
              "table", "and", "or"}
INT_CALLS = {"sum", "product", "min", "max", "factorial", "popcount", "toInt"}


class Env:
    """Name bindings: constant values, ground domains, and decision info."""

    def __init__(self):
        self.values = {}  # name -> int | bool | Matrix | IntDomain (sets)
        self.domains = {}  # name -> ('int'|'bool'|'matrix', payload)
        self.decision = {}  # VarRef name -> VarInfo
        self.decision_matrices = {}  # find-matrix name -> Matrix of VarRefs

    def copy(self):
        e = Env()
        e.values = dict(self.values)
        e.domains = dict(self.domains)
        e.decision = self.decision
        e.decision_matrices = self.decision_matrices
        return e


class VarInfo:
    __slots__ = ("name", "domain", "is_bool")

    def __init__(self, name, domain, is_bool):
        self.name = name
        self.domain = domain
        self.is_bool = is_bool


def chk64(v: int) -> int:
    if v < INT64_MIN or v > INT64_MAX:
        raise InstanceError(f"arithmetic overflow: {v} does not fit in "
                            "signed 64 bits")
    return v


def as_int(v):
    """bool-to-int conversion; the reverse direction never happens."""
    if isinstance(v, bool):
        return int(v)
    if isinstance(v, int):
        return v
    raise ModelError(f"expected an integer, got {_describe(v)}")


def as_bool(v):
    if isinstance(v, bool):
        return v
    raise ModelError(f"expected a boolean, got {_describe(v)}")


def _describe(v):
    if isinstance(v, Matrix):
        return "a matrix"
    if isinstance(v, IntDomain):
        return "a set"
    if isinstance(v, Expr):
        return "a decision expression"
    return repr(v)


def lift(v) -> Expr:
    """Embed a constant into a residual tree."""
    if isinstance(v, Expr):
        return v
    if isinstance(v, bool):
        return BoolLit(v)
    if isinstance(v, int):
        return IntLit(v)
    if isinstance(v, Matrix):
        return MatVal(v)
    raise TypeError(f"cannot lift {v!r}")


# ------------------------------------------------------ integer primitives


def int_div(a: int, b: int):
    if b == 0:
        return UNDEF
    return chk64(a // b)  # Python // is floor division


def int_mod(a: int, b: int):
    if b == 0:
        return UNDEF
    return chk64(a - b * (a // b))


def int_pow(a: int, b: int):
    if b < 0 or (a == 0 and b == 0):
        return UNDEF
    acc = 1
    base = a
    n = b
    while n:
        if n & 1:
            acc = chk64(acc * base)
        n >>= 1
        if n:
            base = chk64(base * base)
    return acc


def factorial(x: int):
    if x < 0:
        return UNDEF
    if x > 20:
        raise InstanceError(f"factorial({x}) overflows signed 64 bits")
    acc = 1
    for i in range(2, x + 1):
        acc *= i
    return acc


def popcount(x: int) -> int:
    return bin(x & ((1 << 64) - 1)).count("1")


ARITH_OPS = {
    "+": lambda a, b: chk64(a + b),
    "-": lambda a, b: chk64(a - b),
    "*": lambda a, b: chk64(a * b),
    "/": int_div,
    "%": int_mod,
    "**": int_pow,
    "safediv": lambda a, b: 0 if b == 0 else chk64(a // b),
    "safemod": lambda a, b: 0 if b == 0 else chk64(a - b * (a // b)),
    "safepow": lambda a, b: 0 if (b < 0 or (a == 0 and b == 0))
    else int_pow(a, b),
}

CMP_OPS = {
    "=": lambda a, b: a == b,
    "!=": lambda a, b: a != b,
    "<": lambda a, b: a < b,
    "<=": lambda a, b: a <= b,
    ">": lambda a, b: a > b,
    ">=": lambda a, b: a >= b,
}


# -------------------------------------------------------------- type_of


def type_of(e, env: Env) -> str:
    """'int' | 'bool' | 'matrix' for residual trees."""
    if isinstance(e, VarRef):
        return "bool" if env.decision[e.name].is_bool else "int"
    if isinstance(e, IntLit):
        return "int"
    if isinstance(e, BoolLit):
        return "bool"
    if isinstance(e, (MatVal, MatrixLit)):
        return "matrix"
    if isinstance(e, UnOp):
        return "bool" if e.op == "!" else "int"
    if isinstance(e, BinOp):
        if e.op in ("+", "-", "*", "/", "%", "**",
                    "safediv", "safemod", "safepow"):
            return "int"
        return "bool"
    if isinstance(e, (And, Or)):
        return "bool"
    if isinstance(e, (Sum, Prod)):
        return "int"
    if isinstance(e, LinCmp):
        return "bool"
    if isinstance(e, Call):
        if e.func in BOOL_CALLS:
            return "bool"
        if e.func == "toInt":
            return "int"
        if e.func in ("flatten", "toSet"):
            return "matrix"
        return "int"
    if isinstance(e, Subscript):
        if any(s is None for s in e.subs):
            return "matrix"
        base = e.base
        if isinstance(base, MatVal):
            return "bool" if base.m.elem_bool else "int"
        return "int"
    if isinstance(e, Quant):
        return "int" if e.which == "sum" else "bool"
    raise ModelError(f"cannot type {e!r}")


# --------------------------------------------------------------- domains


def normalize_domain(d, env: Env):
    """Ground a domain node: ('bool', dom) | ('int', dom) | ('matrix', (...))."""
    if isinstance(d, tuple):  # already ground (matrix descriptor)
        return d
    if isinstance(d, IntDomain):
        return ("int", d)
    if isinstance(d, BoolDom):
        return ("bool", BOOL_DOMAIN)
    if isinstance(d, IntParseDom):
        ranges = []
        for lo_e, hi_e in d.items:
            lo = NEG_INF if lo_e is None else _endpoint(lo_e, env)
            hi = POS_INF if hi_e is None else _endpoint(hi_e, env)
            if lo <= hi:
                ranges.append((lo, hi))
        return ("int", IntDomain.of(*ranges))
    if isinstance(d, MatrixDom):
        idx = []
        for nd in d.index_doms:
            kind, dom = _scalar_domain(nd, env)
            idx.append(dom)
        bkind, bdom = _scalar_domain(d.base, env)
        return ("matrix", (tuple(idx), bdom, bkind == "bool"))
    if isinstance(d, DomIdent):
        if d.name in env.domains:
            return env.domains[d.name]
        v = env.values.get(d.name)
        if isinstance(v, IntDomain):
            return ("int", v)
        raise ModelError(f"{d.name!r} is not a domain",
                         *(d.pos or (None, None)))
    if isinstance(d, DomBinOp):
        ka, da = _scalar_domain(d.a, env)
        kb, db = _scalar_domain(d.b, env)
        if d.op == "union":
            return ("int", da.union(db))
        if d.op == "intersect":
            return ("int", da.intersect(db))
        return ("int", da.minus(db))
    raise ModelError(f"bad domain {d!r}")


def _scalar_domain(d, env):
    kind, payload = normalize_domain(d, env)
    if kind == "matrix":
        raise ModelError("matrix domain not allowed here")
    return kind, payload


def _endpoint(e, env):
    v = partial_eval(e, env)
    if v is UNDEF:
        raise InstanceError("undefined domain endpoint")
    if isinstance(v, Expr):
        raise ModelError("domain endpoints may not contain decision "
                         "variables")
    return chk64(as_int(v))


def domain_values_for_unroll(kind, payload):
    """Assignments of a quantifier/generator domain, in ascending order."""
    if kind == "bool":
        return [False, True]
    if kind == "int":
        dom = payload
        if not dom.is_finite():
            raise ModelError("cannot unroll over an open domain")
        if dom.size() > MAX_UNROLL:
            raise InstanceError("domain too large to unroll")
        return list(dom.values())
    idx_doms, base, elem_bool = payload
    if not base.is_finite() or not all(d.is_finite() for d in idx_doms):
        raise ModelError("cannot unroll over an open matrix domain")
    n_elems = 1
    for d in idx_doms:
        n_elems *= d.size()
    if base.size() ** n_elems > MAX_UNROLL:
        raise InstanceError("matrix domain too large to unroll")
    elem_choices = [False, True] if elem_bool else list(base.values())
    out = []
    for combo in itertools.product(elem_choices, repeat=n_elems):
        out.append(_shape_matrix(idx_doms, list(combo), elem_bool))
    return out


def _shape_matrix(idx_doms, flat, elem_bool):
    return Matrix(tuple(idx_doms), tuple(flat), elem_bool)


# ------------------------------------------------------------ evaluation


def partial_eval(e, env: Env):
    """Value | UNDEF | residual Expr."""
    if isinstance(e, IntLit):
        return chk64(e.value)
    if isinstance(e, BoolLit):
        return e.value
    if isinstance(e, Ident):
        return _lookup(e, env)
    if isinstance(e, VarRef):
        if e.name in env.values:
            return env.values[e.name]
        return e
    if isinstance(e, MatVal):
        return _eval_matrix_elems(e.m, env)
    if isinstance(e, MatrixLit):
        return _eval_matrix_lit(e, env)
    if isinstance(e, UnOp):
        return _eval_unop(e, env)
    if isinstance(e, BinOp):
        return _eval_binop(e, env)
    if isinstance(e, Quant):
        return _eval_quant(e, env)
    if isinstance(e, Compr):
        return _eval_compr(e, env)
    if isinstance(e, Call):
        return _eval_call(e, env)
    if isinstance(e, Subscript):
        return _eval_subscript(e, env)
    if isinstance(e, And):
        return _combine_and([partial_eval(a, env) for a in e.args])
    if isinstance(e, Or):
        return _combine_or([partial_eval(a, env) for a in e.args])
    if isinstance(e, Sum):
        return _eval_sum_node(e, env)
    if isinstance(e, Prod):
        return _eval_prod_node(e, env)
    if isinstance(e, LinCmp):
        return _eval_lincmp_node(e, env)
    raise ModelError(f"cannot evaluate {e!r}")


def eval_const(e, env: Env, what="expression"):
    v = partial_eval(e, env)
    if isinstance(v, Expr):
        raise ModelError(f"{what} may not contain decision variables")
    return v


def _lookup(e: Ident, env: Env):
    if e.name in env.values:
        return env.values[e.name]
    if e.name in env.decision_matrices:
        return env.decision_matrices[e.name]
    if e.name in env.decision:
        return VarRef(e.name)
    if e.name in env.domains:
        kind, payload = env.domains[e.name]
        if kind == "int":
            return payload  # domain used as a set value
    raise ModelError(f"undeclared identifier {e.name!r}",
                     *(e.pos or (None, None)))


def _eval_matrix_elems(m: Matrix, env: Env):
    if is_const(m):
        return m
    out = []
    for x in m.elems:
        v = partial_eval(x, env) if isinstance(x, Expr) else x
        if v is UNDEF:
            return UNDEF
        if isinstance(v, Matrix):
            raise ModelError("matrix element evaluated to a matrix")
        out.append(v if isinstance(v, Expr) else v)
    return Matrix(m.index_doms, tuple(out), m.elem_bool)


def _eval_matrix_lit(e: MatrixLit, env: Env):
    items = []
    for it in e.items:
        v = partial_eval(it, env)
        if v is UNDEF:
            return UNDEF
        items.append(v)
    dom = None
    if e.index_dom is not None:
        kind, dval = _scalar_domain(e.index_dom, env)
        dom = _fit_index_domain(dval, len(items), e)
    if items and all(isinstance(v, Matrix) for v in items):
        shape0 = items[0].index_doms
        for v in items[1:]:
            if v.index_doms != shape0 or v.elem_bool != items[0].elem_bool:
                raise ModelError("matrix literal rows differ in shape",
                                 *(e.pos or (None, None)))
        return matrix_from_rows(items, dom)
    if any(isinstance(v, Matrix) for v in items):
        raise ModelError("matrix literal mixes scalars and matrices",
                         *(e.pos or (None, None)))
    elem_bool = bool(items) and all(
        (isinstance(v, bool)) or (isinstance(v, Expr)
                                  and type_of(v, env) == "bool")
        for v in items)
    return matrix_1d([lift(v) if isinstance(v, Expr) else v for v in items],
                     elem_bool, dom)


def _fit_index_domain(dom: IntDomain, n: int, where):
    """Explicit index domains may be open: take the first n members."""
    if dom.is_finite() and dom.size() == n:
        return dom
    if dom.ranges and dom.ranges[-1][1] == POS_INF:
        vals = []
        for lo, hi in dom.ranges:
            hi = min(hi, lo + n)
            vals.extend(range(lo, hi + 1))
            if len(vals) >= n:
                break
        if len(vals) >= n:
            return IntDomain.values_of(vals[:n])
    raise InstanceError(
        f"index domain {dom} does not match {n} element(s)",
        *(getattr(where, "pos", None) or (None, None)))


def _eval_unop(e: UnOp, env: Env):
    v = partial_eval(e.a, env)
    if e.op == "!":
        if v is UNDEF:
            return True  # boolean child was absorbed to false upstream
        if isinstance(v, Expr):
            return UnOp("!", v)
        return not as_bool(v)
    if v is UNDEF:
        return UNDEF
    if isinstance(v, Expr):
        return UnOp(e.op, v)
    if e.op == "-":
        return chk64(-as_int(v))
    if e.op == "abs":
        return chk64(abs(as_int(v)))
    raise ModelError(f"bad unary op {e.op}")


def _eval_binop(e: BinOp, env: Env):
    op = e.op
    if op in ("/\\", "\\/", "->", "<->"):
        return _eval_logic(e, env)
    if op == "in":
        return _eval_in(e, env)
    if op in ("union", "intersect"):
        a = partial_eval(e.a, env)
        b = partial_eval(e.b, env)
        if not isinstance(a, IntDomain) or not isinstance(b, IntDomain):
            raise ModelError(f"{op} expects set operands")
        return a.union(b) if op == "union" else a.intersect(b)
    a = partial_eval(e.a, env)
    b = partial_eval(e.b, env)
    if op == "-" and isinstance(a, IntDomain) and isinstance(b, IntDomain):
        return a.minus(b)
    if isinstance(a, Matrix) or isinstance(b, Matrix) or \
            op in ("<lex", "<=lex", ">lex", ">=lex"):
        return _eval_matrix_cmp(e, a, b, env)
    if op in ARITH_OPS:
        if a is UNDEF or b is UNDEF:
            return UNDEF
        if isinstance(a, Expr) or isinstance(b, Expr):
            _check_scalar(a, env)
            _check_scalar(b, env)
            return BinOp(op, lift(a), lift(b))
        return ARITH_OPS[op](as_int(a), as_int(b))
    if op in CMP_OPS:
        if a is UNDEF or b is UNDEF:
            return False
        if isinstance(a, Expr) or isinstance(b, Expr):
            _check_scalar(a, env)
            _check_scalar(b, env)
            return BinOp(op, lift(a), lift(b))
        return CMP_OPS[op](as_int(a), as_int(b))
    raise ModelError(f"bad operator {op}")


def _check_scalar(v, env):
    if isinstance(v, Matrix) or isinstance(v, IntDomain):
        raise ModelError("expected a scalar operand")
    if isinstance(v, Expr) and type_of(v, env) == "matrix":
        raise ModelError("expected a scalar operand")


def _eval_logic(e: BinOp, env: Env):
    a = partial_eval(e.a, env)
    if a is UNDEF:
        a = False
    b = partial_eval(e.b, env)
    if b is UNDEF:
        b = False
    op = e.op
    if not isinstance(a, Expr) and not isinstance(b, Expr):
        a, b = as_bool(a), as_bool(b)
        return {"/\\": a and b, "\\/": a or b,
                "->": (not a) or b, "<->": a == b}[op]
    # fold the constant side; all rewrites below are boolean-safe
    if not isinstance(a, Expr):
        a = as_bool(a)
        if op == "/\\":
            return b if a else False
        if op == "\\/":
            return True if a else b
        if op == "->":
            return b if a else True
        return b if a else UnOp("!", b)
    if not isinstance(b, Expr):
        b = as_bool(b)
        if op == "/\\":
            return a if b else False
        if op == "\\/":
            return True if b else a
        if op == "->":
            return True if b else UnOp("!", a)
        return a if b else UnOp("!", a)
    return BinOp(op, a, b)


def _eval_in(e: BinOp, env: Env):
    a = partial_eval(e.a, env)
    rhs = e.b
    if isinstance(rhs, Expr):
        s = partial_eval(rhs, env)
    else:
        kind, s = _scalar_domain(rhs, env)
    if not isinstance(s, IntDomain):
        raise ModelError("right side of `in` must be a set")
    if a is UNDEF:
        return False
    if isinstance(a, Expr):
        return BinOp("in", a, s)
    return s.contains(as_int(a))


def _eval_matrix_cmp(e: BinOp, a, b, env: Env):
    op = e.op
    if op in ("=", "!=", "<lex", "<=lex", ">lex", ">=lex"):
        if a is UNDEF or b is UNDEF:
            return False
        if not isinstance(a, Matrix) or not isinstance(b, Matrix):
            raise ModelError(f"{op} here requires two matrix operands")
        if op in ("=", "!="):
            if a.extents != b.extents:
                raise ModelError("matrix comparison requires matching "
                                 "extents")
            eqs = []
            for x, y in zip(a.elems, b.elems):
                r = partial_eval(BinOp("=", lift(x), lift(y)), env)
                eqs.append(r)
            both = _combine_and(eqs)
            if op == "=":
                return both
            if isinstance(both, Expr):
                return UnOp("!", both)
            return not both
        if is_const(a) and is_const(b):
            ta = tuple(as_int(x) for x in a.elems)
            tb = tuple(as_int(x) for x in b.elems)
            return {"<lex": ta < tb, "<=lex": ta <= tb,
                    ">lex": ta > tb, ">=lex": ta >= tb}[op]
        return BinOp(op, MatVal(a), MatVal(b))
    raise ModelError(f"operator {op} cannot take a matrix operand")


def _combine_and(parts):
    out = []
    for p in parts:
        if p is UNDEF or p is False:
            return False
        if p is True:
            continue
        out.append(p)
    if not out:
        return True
    if len(out) == 1:
        return out[0]
    return And(tuple(out))


def _combine_or(parts):
    out = []
    for p in parts:
        if p is True:
            return True
        if p is UNDEF or p is False:
            continue
        out.append(p)
    if not out:
        return False
    if len(out) == 1:
        return out[0]
    return Or(tuple(out))


def _eval_quant(e: Quant, env: Env):
    return _expand_quant(e, env, 0)


def _expand_quant(e: Quant, env: Env, k: int):
    if k == len(e.names):
        return partial_eval(e.body, env)
    kind, payload = normalize_domain(e.dom, env)
    name = e.names[k]
    parts = []
    saved = env.values.get(name, _MISSING)
    try:
        for v in domain_values_for_unroll(kind, payload):
            env.values[name] = v
            r = _expand_quant(e, env, k + 1)
            if e.which == "forAll":
                if r is False or r is UNDEF:
                    return False
                if r is not True:
                    parts.append(r)
            elif e.which == "exists":
                if r is True:
                    return True
                if r is not False and r is not UNDEF:
                    parts.append(r)
            else:  # sum
                if r is UNDEF:
                    return UNDEF
                parts.append(r)
    finally:
        if saved is _MISSING:
            env.values.pop(name, None)
        else:
            env.values[name] = saved
    if e.which == "forAll":
        return _combine_and([True] + parts)
    if e.which == "exists":
        return _combine_or([False] + parts)
    return _sum_parts(parts, env)


_MISSING = object()


def _sum_parts(parts, env):
    const = 0
    terms = []
    for p in parts:
        if isinstance(p, Expr):
            _check_scalar(p, env)
            terms.append((1, p))
        else:
            const = chk64(const + as_int(p))
    if not terms:
        return const
    return Sum(tuple(terms), const)


def _eval_compr(e: Compr, env: Env):
    elems = []
    undef = _expand_compr(e, env, 0, elems)
    if undef:
        return UNDEF
    dom = None
    if e.index_dom is not None:
        kind, dval = _scalar_domain(e.index_dom, env)
        dom = _fit_index_domain(dval, len(elems), e)
    if elems and all(isinstance(v, Matrix) for v in elems):
        return matrix_from_rows(elems, dom)
    if any(isinstance(v, Matrix) for v in elems):
        raise ModelError("comprehension mixes scalar and matrix elements",
                         *(e.pos or (None, None)))
    elem_bool = bool(elems) and all(
        isinstance(v, bool) or (isinstance(v, Expr)
                                and type_of(v, env) == "bool")
        for v in elems)
    return matrix_1d([lift(v) if isinstance(v, Expr) else v for v in elems],
                     elem_bool, dom)


def _expand_compr(e: Compr, env: Env, k: int, out) -> bool:
    """Append head values in lexicographic generator order; True if undef."""
    if k == len(e.gens):
        for c in e.conds:
            cv = partial_eval(c, env)
            if isinstance(cv, Expr):
                raise ModelError("comprehension condition may not contain "
                                 "decision variables",
                                 *(e.pos or (None, None)))
            if cv is UNDEF or not as_bool(cv):
                return False
        v = partial_eval(e.head, env)
        if v is UNDEF:
            return True
        out.append(v)
        return False
    name, dnode = e.gens[k]
    kind, payload = normalize_domain(dnode, env)
    saved = env.values.get(name, _MISSING)
    try:
        for v in domain_values_for_unroll(kind, payload):
            env.values[name] = v
            if _expand_compr(e, env, k + 1, out):
                return True
    finally:
        if saved is _MISSING:
            env.values.pop(name, None)
        else:
            env.values[name] = saved
    return False


def _eval_call(e: Call, env: Env):
    f = e.func
    if f == "toInt":
        _arity(e, 1)
        v = partial_eval(e.args[0], env)
        if v is UNDEF:
            return 0  # inner boolean absorbed to false
        if isinstance(v, Expr):
            if type_of(v, env) != "bool":
                raise ModelError("toInt expects a boolean argument")
            return v
        return int(as_bool(v))
    if f == "factorial":
        _arity(e, 1)
        v = partial_eval(e.args[0], env)
        if v is UNDEF:
            return UNDEF
        if isinstance(v, Expr):
            return Call("factorial", (v,))
        return factorial(as_int(v))
    if f == "popcount":
        _arity(e, 1)
        v = partial_eval(e.args[0], env)
        if v is UNDEF:
            return UNDEF
        if isinstance(v, Expr):
            return Call("popcount", (v,))
        return popcount(as_int(v))
    if f == "toSet":
        _arity(e, 1)
        v = partial_eval(e.args[0], env)
        if v is UNDEF:
            raise InstanceError("toSet of an undefined matrix")
        if not isinstance(v, Matrix) or not is_const(v):
            raise ModelError("toSet expects a constant matrix")
        return IntDomain.values_of(as_int(x) for x in v.elems)
    if f == "flatten":
        if len(e.args) == 1:
            m = _matrix_arg(e, 0, env)
            if m is UNDEF:
                return UNDEF
            return flatten_matrix(m)
        _arity(e, 2)
        n = eval_const(e.args[0], env, "flatten depth")
        m = _matrix_arg(e, 1, env)
        if m is UNDEF:
            return UNDEF
        return flatten_matrix(m, as_int(n))
    if f in ("min", "max") and len(e.args) == 2:
        a = partial_eval(e.args[0], env)
        b = partial_eval(e.args[1], env)
        if isinstance(a, Matrix) or isinstance(b, Matrix):
            raise ModelError(f"{f}(X,Y) expects two integer arguments")
        if a is UNDEF or b is UNDEF:
            return UNDEF
        if isinstance(a, Expr) or isinstance(b, Expr):
            return Call(f, (lift(a), lift(b)))
        a, b = as_int(a), as_int(b)
        return min(a, b) if f == "min" else max(a, b)
    if f in ("sum", "product", "and", "or", "min", "max"):
        _arity(e, 1)
        m = _matrix_arg(e, 0, env)
        if m is UNDEF:
            return UNDEF if f in ("sum", "product", "min", "max") else False
        return _matrix_fold(f, m, env, e)
    if f in ("allDiff", "alldifferent") :
        _arity(e, 1)
        m = _matrix_arg(e, 0, env)
        if m is UNDEF:
            return False
        if is_const(m):
            vals = [as_int(x) for x in m.elems]
            return len(set(vals)) == len(vals)
        return Call("allDiff", (MatVal(m),))
    if f == "alldifferent_except":
        _arity(e, 2)
        m = _matrix_arg(e, 0, env)
        exc = eval_const(e.args[1], env, "alldifferent_except value")
        if m is UNDEF or exc is UNDEF:
            return False
        exc = as_int(exc)
        if is_const(m):
            vals = [as_int(x) for x in m.elems if as_int(x) != exc]
            return len(set(vals)) == len(vals)
        return Call("alldifferent_except", (MatVal(m), IntLit(exc)))
    if f in ("atmost", "atleast"):
        _arity(e, 3)
        m = _matrix_arg(e, 0, env)
        c = _const_matrix_arg(e, 1, env, f)
        vals = _const_matrix_arg(e, 2, env, f)
        if m is UNDEF:
            return False
        if c.extents != vals.extents:
            raise ModelError(f"{f} count and value matrices differ in length")
        if is_const(m):
            xs = [as_int(x) for x in m.elems]
            ok = True
            for cv, vv in zip(c.elems, vals.elems):
                cnt = xs.count(as_int(vv))
                ok = ok and (cnt <= as_int(cv) if f == "atmost"
                             else cnt >= as_int(cv))
            return ok
        return Call(f, (MatVal(m), MatVal(c), MatVal(vals)))
    if f == "gcc":
        _arity(e, 3)
        m = _matrix_arg(e, 0, env)
        vals = _const_matrix_arg(e, 1, env, f)
        counts = _matrix_arg(e, 2, env)  # counts may be decision variables
        if m is UNDEF or counts is UNDEF:
            return False
        if counts.extents != vals.extents:
            raise ModelError("gcc value and count matrices differ in length")
        if is_const(m) and is_const(counts):
            xs = [as_int(x) for x in m.elems]
            return all(xs.count(as_int(v)) == as_int(c)
                       for v, c in zip(vals.elems, counts.elems))
        return Call("gcc", (MatVal(m), MatVal(vals), MatVal(counts)))
    if f == "table":
        _arity(e, 2)
        m = _matrix_arg(e, 0, env)
        tups = _const_matrix_arg(e, 1, env, f)
        if m is UNDEF:
            return False
        if tups.ndim == 1 and tups.extents[0] == 0:
            tups = Matrix((IntDomain.empty(), IntDomain.empty()), (), False)
        if tups.ndim != 2:
            raise ModelError("table expects a 2-dimensional tuple matrix")
        width = tups.extents[1] if tups.extents[0] else m.extents[0]
        if m.ndim != 1 or (tups.extents[0] and m.extents[0] != width):
            raise ModelError("table scope and tuples differ in length")
        if is_const(m):
            xs = tuple(as_int(x) for x in m.elems)
            return any(xs == tuple(as_int(v) for v in row.elems)
                       for row in tups.rows())
        return Call("table", (MatVal(m), MatVal(tups)))
    raise ModelError(f"unknown function {f!r}", *(e.pos or (None, None)))


def _arity(e: Call, n: int):
    if len(e.args) != n:
        raise ModelError(f"{e.func} expects {n} argument(s), got "
                         f"{len(e.args)}", *(e.pos or (None, None)))


def _matrix_arg(e: Call, i: int, env: Env):
    v = partial_eval(e.args[i], env)
    if v is UNDEF:
        return UNDEF
    if not isinstance(v, Matrix):
        raise ModelError(f"argument {i + 1} of {e.func} must be a matrix",
                         *(e.pos or (None, None)))
    return v


def _const_matrix_arg(e: Call, i: int, env: Env, f: str):
    v = _matrix_arg(e, i, env)
    if v is UNDEF or not is_const(v):
        raise ModelError(f"argument {i + 1} of {f} must be a constant matrix",
                         *(e.pos or (None, None)))
    return v


def _matrix_fold(f: str, m: Matrix, env: Env, e):
    elems = list(m.elems)
    if f == "and":
        return _combine_and([x if isinstance(x, Expr) else as_bool(x)
                             for x in elems])
    if f == "or":
        return _combine_or([x if isinstance(x, Expr) else as_bool(x)
                            for x in elems])
    if f == "sum":
        return _sum_parts(elems, env)
    if f == "product":
        const = 1
        syms = []
        for x in elems:
            if isinstance(x, Expr):
                syms.append(x)
            else:
                const = chk64(const * as_int(x))
        if not syms:
            return const
        if const == 0:
            return 0
        parts = tuple(syms) + ((IntLit(const),) if const != 1 else ())
        return Prod(parts) if len(parts) > 1 else parts[0]
    # min / max over a matrix
    if not elems:
        raise InstanceError(f"{f} of an empty matrix",
                            *(getattr(e, "pos", None) or (None, None)))
    if all(not isinstance(x, Expr) for x in elems):
        vals = [as_int(x) for x in elems]
        return min(vals) if f == "min" else max(vals)
    return Call(f, (MatVal(m),))


def _eval_subscript(e: Subscript, env: Env):
    base = partial_eval(e.base, env)
    is_slice = any(s is None for s in e.subs)
    if base is UNDEF:
        return UNDEF
    if not isinstance(base, Matrix):
        raise ModelError("subscripted expression is not a matrix",
                         *(e.pos or (None, None)))
    if len(e.subs) != base.ndim:
        raise ModelError(f"matrix has {base.ndim} dimension(s), "
                         f"{len(e.subs)} subscript(s) given",
                         *(e.pos or (None, None)))
    subs = []
    symbolic = False
    for s in e.subs:
        if s is None:
            subs.append(None)
            continue
        v = partial_eval(s, env)
        if v is UNDEF:
            return False if (not is_slice and base.elem_bool) else UNDEF
        if isinstance(v, Expr):
            if is_slice:
                raise ModelError("slice subscripts may not contain decision "
                                 "variables", *(e.pos or (None, None)))
            symbolic = True
            subs.append(v)
        else:
            subs.append(as_int(v))
    if symbolic:
        return Subscript(MatVal(base),
                         tuple(None if s is None else lift(s) for s in subs))
    r = subscript_matrix(base, subs)
    if r is UNDEF:
        if not is_slice and base.elem_bool:
            return False  # boolean access absorbs its own undefinedness
        return UNDEF
    if isinstance(r, Expr):
        return partial_eval(r, env)
    if isinstance(r, Matrix):
        return r
    return r


def _eval_sum_node(e: Sum, env: Env):
    const = e.const
    terms = []
    for coeff, x in e.terms:
        v = partial_eval(x, env)
        if v is UNDEF:
            return UNDEF
        if isinstance(v, Expr):
            terms.append((coeff, v))
        else:
            const = chk64(const + coeff * as_int(v))
    if not terms:
        return const
    return Sum(tuple(terms), const)


def _eval_prod_node(e: Prod, env: Env):
    const = 1
    syms = []
    for x in e.args:
        v = partial_eval(x, env)
        if v is UNDEF:
            return UNDEF
        if isinstance(v, Expr):
            syms.append(v)
        else:
            const = chk64(const * as_int(v))
    if not syms:
        return const
    if const == 0:
        return 0
    parts = tuple(syms) + ((IntLit(const),) if const != 1 else ())
    return Prod(parts) if len(parts) > 1 else parts[0]


def _eval_lincmp_node(e: LinCmp, env: Env):
    acc = 0
    terms = []
    for coeff, x in e.terms:
        v = partial_eval(x, env)
        if v is UNDEF:
            return False
        if isinstance(v, Expr):
            terms.append((coeff, v))
        else:
            acc = chk64(acc + coeff * as_int(v))
    if not terms:
        if e.op == "<=":
            return acc <= e.k
        if e.op == "=":
            return acc == e.k
        return acc != e.k
    return LinCmp(e.op, tuple(terms), e.k - acc)
