"""Common subexpression elimination.

Identical CSE happens implicitly during flattening: flattening is
hash-consed on canonical structure, so equal subtrees share one literal
or one auxiliary variable.

Active CSE canonicalises complementary boolean subtrees: when both e and
its negation occur, the negation is rewritten to !e so the flattener
reuses a single literal for the pair.

AC-CSE extracts common sub-multisets of the operands of the associative
and commutative operators (+, *, /\\, \\/) that occur in at least two
places, introducing one auxiliary variable per extracted set.
"""

from __future__ import annotations

from .ast_nodes import (And, BinOp, Call, Expr, IntLit, LinCmp, MatVal, Or,
                        Prod, Subscript, Sum, UnOp, VarRef, expr_key)
from .domains import IntDomain
from .ranges import expr_range
from .simplify import make_lincmp, make_sum, neg, simplify_model


def _sub_exprs(e):
    if isinstance(e, UnOp):
        return (e.a,)
    if isinstance(e, BinOp):
        return (e.a, e.b) if isinstance(e.b, Expr) else (e.a,)
    if isinstance(e, (And, Or, Prod)):
        return e.args
    if isinstance(e, (Sum, LinCmp)):
        return tuple(x for _, x in e.terms)
    if isinstance(e, Call):
        return e.args
    if isinstance(e, Subscript):
        return (e.base,) + tuple(s for s in e.subs if s is not None)
    if isinstance(e, MatVal):
        return tuple(x for x in e.m.elems if isinstance(x, Expr))
    return ()


def _walk_all(e):
    yield e
    for s in _sub_exprs(e):
        yield from _walk_all(s)


# ------------------------------------------------------------- active CSE

def active_cse(gm):
    """Rewrite complements of occurring booleans as explicit negations."""
    env = gm.env
    seen = {}
    for c in gm.constraints:
        for node in _walk_all(c):
            if isinstance(node, (And, Or, LinCmp)):
                seen.setdefault(expr_key(node), node)
    repl = {}
    for k, e in seen.items():
        nk = expr_key(neg(e, env))
        if nk in seen and k < nk:
            repl[nk] = e
    if not repl:
        return

    def rw(e):
        k = expr_key(e)
        if k in repl:
            return UnOp("!", rw_inside(repl[k]))
        return rw_inside(e)

    def rw_inside(e):
        if isinstance(e, UnOp):
            return UnOp(e.op, rw(e.a))
        if isinstance(e, BinOp):
            b = rw(e.b) if isinstance(e.b, Expr) else e.b
            return BinOp(e.op, rw(e.a), b)
        if isinstance(e, (And, Or, Prod)):
            return type(e)(tuple(rw(x) for x in e.args))
        if isinstance(e, Sum):
            return Sum(tuple((c, rw(x)) for c, x in e.terms), e.const)
        if isinstance(e, LinCmp):
            return LinCmp(e.op, tuple((c, rw(x)) for c, x in e.terms), e.k)
        if isinstance(e, Call):
            return Call(e.func, tuple(rw(x) for x in e.args))
        if isinstance(e, Subscript):
            return Subscript(rw(e.base),
                             tuple(None if s is None else rw(s)
                                   for s in e.subs))
        if isinstance(e, MatVal):
            from .values import Matrix

            elems = tuple(rw(x) if isinstance(x, Expr) else x
                          for x in e.m.elems)
            return MatVal(Matrix(e.m.index_doms, elems, e.m.elem_bool))
        return e

    gm.constraints = [rw(c) for c in gm.constraints]


# ----------------------------------------------------------------- AC-CSE

_MAX_EXTRACTIONS = 200


def ac_cse(gm, match_negated=False):
    """Extract common operand multisets of +, *, /\\ and \\/.

    With match_negated, a sum multiset also matches other sums through
    term-wise negation (x+y-z and w-x-y+z share y-z)."""
    def_keys = set()  # defining constraints do not seed extraction
    for _ in range(_MAX_EXTRACTIONS):
        if not _extract_one(gm, def_keys, match_negated):
            break
    simplify_model(gm)


def _neg_key(k):
    return (-k[0], k[1])


def _neg_counts(counts):
    return {_neg_key(k): n for k, n in counts.items()}


def _node_multiset(e):
    """(kind, Counter of element keys, key->payload) or None."""
    if isinstance(e, (Sum, LinCmp)):
        items = {}
        counts = {}
        for c, x in e.terms:
            k = (c, expr_key(x))
            items[k] = (c, x)
            counts[k] = counts.get(k, 0) + 1
        return ("sum", counts, items)
    if isinstance(e, (And, Or, Prod)):
        kind = {And: "and", Or: "or", Prod: "prod"}[type(e)]
        items = {}
        counts = {}
        for x in e.args:
            k = expr_key(x)
            items[k] = x
            counts[k] = counts.get(k, 0) + 1
        return (kind, counts, items)
    return None


def _extract_one(gm, def_keys, match_negated=False):
    nodes = []  # (kind, counts, items) per occurrence
    for c in gm.constraints:
        if expr_key(c) in def_keys:
            continue
        for node in _walk_all(c):
            ms = _node_multiset(node)
            if ms is not None and sum(ms[1].values()) >= 2:
                nodes.append(ms)

    def canon(kind, k1, k2):
        if kind != "sum" or not match_negated:
            return (kind, k1, k2)
        n1, n2 = sorted((_neg_key(k1), _neg_key(k2)))
        return min((kind, k1, k2), (kind, n1, n2))

    pair_count = {}
    for kind, counts, _ in nodes:
        keys = sorted(counts)
        here = set()
        for i, k1 in enumerate(keys):
            if counts[k1] >= 2:
                here.add(canon(kind, k1, k1))
            for k2 in keys[i + 1:]:
                here.add(canon(kind, k1, k2))
        for pc in here:
            pair_count[pc] = pair_count.get(pc, 0) + 1
    best = None
    for pc, n in sorted(pair_count.items()):
        if n >= 2 and (best is None or n > pair_count[best]):
            best = pc
    if best is None:
        return False
    kind, k1, k2 = best
    need = {k1: 2} if k1 == k2 else {k1: 1, k2: 1}
    allow_neg = kind == "sum" and match_negated

    def fits(counts):
        return all(counts.get(k, 0) >= n for k, n in need.items())

    oriented = []  # (counts, items) in the orientation matching the pair
    for mk, counts, items in nodes:
        if mk != kind:
            continue
        if fits(counts):
            oriented.append((counts, items))
        elif allow_neg and fits(_neg_counts(counts)):
            oriented.append((_neg_counts(counts),
                             {_neg_key(k): (-c, x)
                              for k, (c, x) in items.items()}))
    # grow to the largest multiset common to every containing node
    common = dict(oriented[0][0])
    payload = dict(oriented[0][1])
    for counts, _ in oriented[1:]:
        for k in list(common):
            common[k] = min(common[k], counts.get(k, 0))
            if common[k] == 0:
                del common[k]
    if sum(common.values()) < 2:
        common = need
    _do_extract(gm, kind, common, payload, def_keys, allow_neg)
    return True


def _do_extract(gm, kind, sub, payload, def_keys, allow_neg=False):
    env = gm.env
    if kind == "sum":
        terms = []
        for k, n in sorted(sub.items()):
            c, x = payload[k]
            terms.append((c * n, x))
        expr = make_sum(terms, 0)
        lo, hi = expr_range(expr, env)
        aux = gm.new_aux(IntDomain.of((lo, hi)))
        defin = make_lincmp("=", list(terms) + [(-1, VarRef(aux))], 0, env)
        repl_term = (1, VarRef(aux))
    else:
        args = []
        for k, n in sorted(sub.items()):
            args.extend([payload[k]] * n)
        if kind == "prod":
            expr = Prod(tuple(args))
            lo, hi = expr_range(expr, env)
            aux = gm.new_aux(IntDomain.of((lo, hi)))
            defin = make_lincmp("=", [(1, expr), (-1, VarRef(aux))], 0, env)
            repl_term = VarRef(aux)
        else:
            expr = (And if kind == "and" else Or)(tuple(args))
            aux = gm.new_aux(IntDomain.of((0, 1)), is_bool=True)
            defin = BinOp("<->", VarRef(aux), expr)
            repl_term = VarRef(aux)

    def covers(counts):
        return all(counts.get(k, 0) >= n for k, n in sub.items())

    def covers_neg(counts):
        return all(counts.get(_neg_key(k), 0) >= n for k, n in sub.items())

    def rw(e):
        ms = _node_multiset(e)
        if ms is not None and ms[0] == kind:
            if covers(ms[1]):
                return _rebuild(e, kind, sub, repl_term, 1)
            if allow_neg and kind == "sum" and covers_neg(ms[1]):
                return _rebuild(e, kind, sub, repl_term, -1)
        return _rw_children(e)

    def _rw_children(e):
        if isinstance(e, UnOp):
            return UnOp(e.op, rw(e.a))
        if isinstance(e, BinOp):
            b = rw(e.b) if isinstance(e.b, Expr) else e.b
            return BinOp(e.op, rw(e.a), b)
        if isinstance(e, (And, Or, Prod)):
            return type(e)(tuple(rw(x) for x in e.args))
        if isinstance(e, Sum):
            return Sum(tuple((c, rw(x)) for c, x in e.terms), e.const)
        if isinstance(e, LinCmp):
            return LinCmp(e.op, tuple((c, rw(x)) for c, x in e.terms), e.k)
        if isinstance(e, Call):
            return Call(e.func, tuple(rw(x) for x in e.args))
        if isinstance(e, Subscript):
            return Subscript(rw(e.base),
                             tuple(None if s is None else rw(s)
                                   for s in e.subs))
        if isinstance(e, MatVal):
            from .values import Matrix

            elems = tuple(rw(x) if isinstance(x, Expr) else x
                          for x in e.m.elems)
            return MatVal(Matrix(e.m.index_doms, elems, e.m.elem_bool))
        return e

    def _rebuild(e, kind, sub, repl_term, orient=1):
        if kind == "sum":
            remaining = {k if orient > 0 else _neg_key(k): n
                         for k, n in sub.items()}
            kept = []
            for c, x in e.terms:
                k = (c, expr_key(x))
                if remaining.get(k, 0) > 0:
                    remaining[k] -= 1
                    continue
                kept.append((c, rw(x)))
            kept.append((orient, repl_term[1]))
            if isinstance(e, LinCmp):
                return LinCmp(e.op, tuple(kept), e.k)
            return Sum(tuple(kept), e.const)
        remaining = dict(sub)
        kept = []
        for x in e.args:
            k = expr_key(x)
            if remaining.get(k, 0) > 0:
                remaining[k] -= 1
                continue
            kept.append(rw(x))
        kept.append(repl_term)
        return type(e)(tuple(kept))

    def_keys.add(expr_key(defin))
    gm.constraints = [rw(c) for c in gm.constraints] + [defin]
