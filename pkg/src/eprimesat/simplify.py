"""Algebraic normalisation of ground constraints.

Rewrites every boolean constraint into a canonical vocabulary:

  And / Or        flattened, deduplicated, operands sorted structurally
  LinCmp          sum-of-terms against a constant, op in {<=, =, !=},
                  gcd-reduced, sign-normalised
  Sum / Prod      merged like terms, sorted operands, constants folded
  <->             operands sorted; -> eliminated; ! pushed to atoms

Canonical ordering makes structurally equal expressions identical
(x+y+z vs z+y+x), which later passes rely on for CSE and for rules such
as allDiff with a repeated operand being false.
"""

from __future__ import annotations

from math import gcd

from .ast_nodes import (And, BinOp, BoolLit, Call, Expr, IntLit, LinCmp,
                        MatVal, Or, Prod, Subscript, Sum, UnOp, VarRef,
                        expr_key)
from .domains import IntDomain
from .errors import ModelError
from .evaluator import ARITH_OPS, UNDEF, chk64, factorial, popcount, type_of
from .values import Matrix, matrix_1d

LEX_SWAP = {"<lex": "<lex", "<=lex": "<=lex", ">lex": "<lex", ">=lex": "<=lex"}
CMP_NEG = {"=": "!=", "!=": "="}

_MAX_PASSES = 8


def simplify_model(gm):
    out = []
    seen = set()
    for c in gm.constraints:
        c2 = simplify_expr(c, gm.env)
        for part in (c2.args if isinstance(c2, And) else (c2,)):
            if isinstance(part, BoolLit):
                if not part.value:
                    gm.unsat = True
                continue
            k = expr_key(part)
            if k in seen:
                continue
            seen.add(k)
            out.append(part)
    gm.constraints = out
    if gm.objective is not None:
        minimise, obj = gm.objective
        if isinstance(obj, Expr):
            obj2 = simplify_expr(obj, gm.env)
            if isinstance(obj2, IntLit):
                obj2 = obj2.value
            gm.objective = (minimise, obj2)


def simplify_expr(e, env):
    for _ in range(_MAX_PASSES):
        e2 = _sx(e, env)
        if expr_key(e2) == expr_key(e):
            return e2
        e = e2
    return e


def _sx(e, env):
    if isinstance(e, (IntLit, BoolLit, VarRef)):
        return e
    if isinstance(e, UnOp):
        a = _sx(e.a, env)
        if e.op == "!":
            return neg(a, env)
        if e.op == "-":
            t, k = _as_terms(a)
            return make_sum([(-c, x) for c, x in t], -k)
        if e.op == "abs":
            if isinstance(a, IntLit):
                return IntLit(chk64(abs(a.value)))
            if isinstance(a, UnOp) and a.op == "abs":
                return a
            return UnOp("abs", a)
        raise ModelError(f"unexpected unary {e.op}")
    if isinstance(e, BinOp):
        return _sx_binop(e, env)
    if isinstance(e, And):
        return make_and([_sx(x, env) for x in e.args], env)
    if isinstance(e, Or):
        return make_or([_sx(x, env) for x in e.args], env)
    if isinstance(e, Sum):
        contribs = []
        for c, x in e.terms:
            contribs.append((c, _sx(x, env)))
        return make_sum(contribs, e.const)
    if isinstance(e, Prod):
        return make_prod([_sx(x, env) for x in e.args])
    if isinstance(e, LinCmp):
        contribs = [(c, _sx(x, env)) for c, x in e.terms]
        return make_lincmp(e.op, contribs, e.k, env)
    if isinstance(e, MatVal):
        return MatVal(_sx_matrix(e.m, env))
    if isinstance(e, Call):
        return _sx_call(e, env)
    if isinstance(e, Subscript):
        return _sx_subscript(e, env)
    raise ModelError(f"unexpected node: {e!r}")


def _sx_matrix(m, env):
    elems = tuple(_sx(x, env) if isinstance(x, Expr) else x for x in m.elems)
    return Matrix(m.index_doms, elems, m.elem_bool)


def _const_int(e):
    if isinstance(e, IntLit):
        return e.value
    if isinstance(e, BoolLit):
        return int(e.value)
    return None


def _sx_binop(e, env):
    op = e.op
    if op == "->":
        return make_or([neg(_sx(e.a, env), env), _sx(e.b, env)], env)
    if op == "<->":
        return make_iff(_sx(e.a, env), _sx(e.b, env), env)
    if op in ("/\\", "\\/"):
        args = [_sx(e.a, env), _sx(e.b, env)]
        return make_and(args, env) if op == "/\\" else make_or(args, env)
    if op == "in":
        a = _sx(e.a, env)
        dom = e.b
        if dom.is_empty():
            return BoolLit(False)
        v = _const_int(a)
        if v is not None:
            return BoolLit(dom.contains(v))
        return BinOp("in", a, dom)
    if op in LEX_SWAP or op in (">lex", ">=lex"):
        return _sx_lex(e, env)
    a = _sx(e.a, env)
    b = _sx(e.b, env)
    if op == "+":
        ta, ka = _as_terms(a)
        tb, kb = _as_terms(b)
        return make_sum(list(ta) + list(tb), ka + kb)
    if op == "-":
        ta, ka = _as_terms(a)
        tb, kb = _as_terms(b)
        return make_sum(list(ta) + [(-c, x) for c, x in tb], ka - kb)
    if op == "*":
        return _sx_mul(a, b)
    if op in ("/", "%", "**", "safediv", "safemod", "safepow"):
        va, vb = _const_int(a), _const_int(b)
        if va is not None and vb is not None:
            r = ARITH_OPS[op](va, vb)
            if r is not UNDEF:
                return IntLit(chk64(r))
        return BinOp(op, a, b)
    if op in ("=", "!=", "<", "<=", ">", ">="):
        if (op in ("=", "!=") and type_of(a, env) == "bool"
                and type_of(b, env) == "bool"):
            iff = make_iff(a, b, env)
            return iff if op == "=" else neg(iff, env)
        ta, ka = _as_terms(a)
        tb, kb = _as_terms(b)
        diff = list(ta) + [(-c, x) for c, x in tb]
        if op in ("=", "!="):
            return make_lincmp(op, diff, kb - ka, env)
        if op == "<=":
            return make_lincmp("<=", diff, kb - ka, env)
        if op == "<":
            return make_lincmp("<=", diff, kb - ka - 1, env)
        ndiff = [(-c, x) for c, x in diff]
        if op == ">=":
            return make_lincmp("<=", ndiff, ka - kb, env)
        return make_lincmp("<=", ndiff, ka - kb - 1, env)
    raise ModelError(f"unexpected operator {op}")


def _sx_mul(a, b):
    va, vb = _const_int(a), _const_int(b)
    if va is not None and vb is not None:
        return IntLit(chk64(va * vb))
    if va is not None:
        a, b, va = b, a, None
        vb = _const_int(b)
    if vb is not None:
        if vb == 0:
            return IntLit(0)
        t, k = _as_terms(a)
        return make_sum([(chk64(c * vb), x) for c, x in t], chk64(k * vb))
    ta, ka = _as_terms(a)
    tb, kb = _as_terms(b)
    if len(ta) == 1 and ka == 0 and len(tb) == 1 and kb == 0:
        (ca, xa), (cb, xb) = ta[0], tb[0]
        prod = make_prod([xa, xb])
        t, k = _as_terms(prod)
        return make_sum([(chk64(c * ca * cb), x) for c, x in t],
                        chk64(k * ca * cb))
    return make_prod([a, b])


def _sx_lex(e, env):
    op = e.op
    a, b = _sx(e.a, env), _sx(e.b, env)
    if op in (">lex", ">=lex"):
        a, b = b, a
        op = LEX_SWAP[op]
    if not (isinstance(a, MatVal) and isinstance(b, MatVal)):
        raise ModelError("lex comparison needs matrix operands")
    xs = [x for x in a.m.elems]
    ys = [y for y in b.m.elems]
    while xs and ys:
        x, y = xs[0], ys[0]
        kx, ky = expr_key(_lift(x)), expr_key(_lift(y))
        if kx == ky:
            xs.pop(0)
            ys.pop(0)
            continue
        vx = _const_int(_lift(x))
        vy = _const_int(_lift(y))
        if vx is not None and vy is not None and vx != vy:
            return BoolLit(vx < vy)
        break
    if not xs:
        return BoolLit(True) if op == "<=lex" else BoolLit(len(ys) > 0)
    if not ys:
        return BoolLit(False)
    return BinOp(op, MatVal(matrix_1d(xs, a.m.elem_bool)),
                 MatVal(matrix_1d(ys, b.m.elem_bool)))


def _lift(x):
    if isinstance(x, Expr):
        return x
    if isinstance(x, bool):
        return BoolLit(x)
    return IntLit(x)


def _sx_call(e, env):
    f = e.func
    args = [_sx(x, env) for x in e.args]
    if f in ("allDiff", "alldifferent_except"):
        m = args[0].m
        elems = [_lift(x) for x in m.elems]
        if f == "alldifferent_except":
            ex = args[1]
            if isinstance(ex, IntLit):
                elems = [x for x in elems
                         if _const_int(x) is None or _const_int(x) != ex.value]
        if len(elems) <= 1:
            return BoolLit(True)
        elems.sort(key=expr_key)
        for i in range(len(elems) - 1):
            if expr_key(elems[i]) != expr_key(elems[i + 1]):
                continue
            if f == "allDiff" or _const_int(elems[i]) is not None:
                return BoolLit(False)
        mv = MatVal(matrix_1d(elems, m.elem_bool))
        return Call(f, (mv,) + tuple(args[1:]))
    if f in ("atmost", "atleast", "gcc"):
        m = args[0].m
        elems = [_lift(x) for x in m.elems]
        if f != "gcc":
            elems.sort(key=expr_key)
        mv = MatVal(matrix_1d(elems, m.elem_bool))
        return Call(f, (mv,) + tuple(args[1:]))
    if f == "table":
        return Call(f, tuple(args))
    if f in ("min", "max"):
        if len(args) == 2:
            va, vb = _const_int(args[0]), _const_int(args[1])
            if va is not None and vb is not None:
                return IntLit(min(va, vb) if f == "min" else max(va, vb))
            if expr_key(args[0]) == expr_key(args[1]):
                return args[0]
            args.sort(key=expr_key)
            return Call(f, tuple(args))
        m = args[0].m
        elems = [_lift(x) for x in m.elems]
        vals = [_const_int(x) for x in elems]
        if all(v is not None for v in vals):
            return IntLit(min(vals) if f == "min" else max(vals))
        if len(elems) == 1:
            return elems[0]
        elems.sort(key=expr_key)
        return Call(f, (MatVal(matrix_1d(elems, m.elem_bool)),))
    if f == "factorial":
        v = _const_int(args[0])
        if v is not None:
            return IntLit(factorial(v) if v >= 0 else 0)
        return Call(f, tuple(args))
    if f == "popcount":
        v = _const_int(args[0])
        if v is not None:
            return IntLit(popcount(v))
        return Call(f, tuple(args))
    return Call(f, tuple(args))


def _sx_subscript(e, env):
    base = _sx(e.base, env)
    subs = tuple(None if s is None else _sx(s, env) for s in e.subs)
    m = base.m
    if all(s is not None and isinstance(s, IntLit) for s in subs):
        from .values import subscript_matrix

        r = subscript_matrix(m, [s.value for s in subs])
        if r is not UNDEF:
            return _lift(r) if not isinstance(r, Matrix) else MatVal(r)
        lo = _min_possible(m, env)
        if lo is not None:
            return IntLit(lo)
    return Subscript(base, subs)


def _min_possible(m, env):
    lo = None
    for x in m.elems:
        v = _const_int(_lift(x))
        if v is None:
            if isinstance(x, VarRef) and x.name in env.decision:
                v = env.decision[x.name].domain.min()
            else:
                return None
        lo = v if lo is None else min(lo, v)
    return lo


# ---------------------------------------------------------------- builders

def _as_terms(e):
    """Decompose a canonical expr into (terms, const)."""
    v = _const_int(e)
    if v is not None:
        return (), v
    if isinstance(e, Sum):
        return e.terms, e.const
    return ((1, e),), 0


def make_sum(contribs, const):
    merged = {}
    order = []
    total = const
    for c, x in contribs:
        if c == 0:
            continue
        v = _const_int(x)
        if v is not None:
            total += c * v
            continue
        if isinstance(x, Sum):
            inner_terms, inner_const = x.terms, x.const
            total += c * inner_const
            for c2, x2 in inner_terms:
                k = expr_key(x2)
                if k not in merged:
                    merged[k] = [0, x2]
                    order.append(k)
                merged[k][0] += c * c2
            continue
        k = expr_key(x)
        if k not in merged:
            merged[k] = [0, x]
            order.append(k)
        merged[k][0] += c
    terms = tuple((chk64(merged[k][0]), merged[k][1])
                  for k in sorted(order) if merged[k][0] != 0)
    total = chk64(total)
    if not terms:
        return IntLit(total)
    if len(terms) == 1 and terms[0][0] == 1 and total == 0:
        return terms[0][1]
    return Sum(terms, total)


def make_prod(args):
    flat = []
    const = 1
    for a in args:
        v = _const_int(a)
        if v is not None:
            const = chk64(const * v)
            continue
        if isinstance(a, Prod):
            flat.extend(a.args)
        else:
            flat.append(a)
    if const == 0:
        return IntLit(0)
    flat.sort(key=expr_key)
    if not flat:
        return IntLit(const)
    node = flat[0] if len(flat) == 1 else Prod(tuple(flat))
    if const == 1:
        return node
    return Sum(((const, node),), 0)


def make_lincmp(op, contribs, k, env):
    s = make_sum(contribs, 0)
    terms, c0 = _as_terms(s)
    k = chk64(k - c0)
    if not terms:
        if op == "=":
            return BoolLit(0 == k)
        if op == "!=":
            return BoolLit(0 != k)
        return BoolLit(0 <= k)
    g = 0
    for c, _ in terms:
        g = gcd(g, abs(c))
    if g > 1:
        if op in ("=", "!=") and k % g != 0:
            return BoolLit(op == "!=")
        terms = tuple((c // g, x) for c, x in terms)
        k = k // g  # exact for =/!= (checked above), floor for <=
    if op in ("=", "!=") and terms[0][0] < 0:
        terms = tuple((-c, x) for c, x in terms)
        k = -k
    if len(terms) == 1:
        c, x = terms[0]
        if type_of(x, env) == "bool" and abs(c) == 1:
            sat = {v for v in (0, 1) if _cmp_holds(op, c * v, k)}
            if sat == {0, 1}:
                return BoolLit(True)
            if not sat:
                return BoolLit(False)
            return x if sat == {1} else neg(x, env)
    if op == "=" and len(terms) == 2 and k == 0:
        (c1, x1), (c2, x2) = terms
        if (c1, c2) == (1, -1) and type_of(x1, env) == "bool" \
                and type_of(x2, env) == "bool":
            return make_iff(x1, x2, env)
    return LinCmp(op, terms, k)


def _cmp_holds(op, a, b):
    if op == "=":
        return a == b
    if op == "!=":
        return a != b
    return a <= b


def make_and(args, env):
    return _make_nary(args, env, is_and=True)


def make_or(args, env):
    return _make_nary(args, env, is_and=False)


def _make_nary(args, env, is_and):
    same, dual = (And, Or) if is_and else (Or, And)
    absorb = not is_and  # True absorbs Or; False absorbs And
    flat = []
    stack = list(args)
    while stack:
        a = stack.pop(0)
        if isinstance(a, same):
            stack = list(a.args) + stack
            continue
        if isinstance(a, BoolLit):
            if a.value == absorb:
                return BoolLit(absorb)
            continue
        flat.append(a)
    seen = {}
    uniq = []
    for a in flat:
        k = expr_key(a)
        if k in seen:
            continue
        seen[k] = a
        uniq.append(a)
    for a in uniq:
        if expr_key(neg(a, env)) in seen:
            return BoolLit(absorb)
    uniq.sort(key=expr_key)
    if not uniq:
        return BoolLit(not absorb)
    if len(uniq) == 1:
        return uniq[0]
    return same(tuple(uniq))


def make_iff(a, b, env):
    for x, y in ((a, b), (b, a)):
        if isinstance(x, BoolLit):
            return y if x.value else neg(y, env)
    if expr_key(a) == expr_key(b):
        return BoolLit(True)
    if expr_key(a) > expr_key(b):
        a, b = b, a
    return BinOp("<->", a, b)


def neg(e, env):
    """Negation pushed toward atoms."""
    if isinstance(e, BoolLit):
        return BoolLit(not e.value)
    if isinstance(e, UnOp) and e.op == "!":
        return e.a
    if isinstance(e, And):
        return make_or([neg(x, env) for x in e.args], env)
    if isinstance(e, Or):
        return make_and([neg(x, env) for x in e.args], env)
    if isinstance(e, LinCmp):
        if e.op in CMP_NEG:
            return make_lincmp(CMP_NEG[e.op], list(e.terms), e.k, env)
        return make_lincmp("<=", [(-c, x) for c, x in e.terms], -e.k - 1, env)
    if isinstance(e, BinOp):
        if e.op == "<->":
            return make_iff(e.a, neg(e.b, env), env)
        if e.op in ("<lex", "<=lex"):
            swapped = "<=lex" if e.op == "<lex" else "<lex"
            return _sx_lex(BinOp(swapped, e.b, e.a), env)
    return UnOp("!", e)
