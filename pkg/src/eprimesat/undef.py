"""Relational semantics of partial functions, as a ground rewrite.

Two combined steps, applied bottom-up to every constraint (and the
objective): each partial function contributes a definedness guard, guards
bubble upward through integer and matrix positions, and the closest
boolean expression absorbs them as a conjunction. The partial function
itself is replaced by a total one (safediv/safemod/safepow are 0 on the
undefined points; matrix access out of bounds reads as the base minimum,
which the guard makes unobservable in solutions).
"""

from __future__ import annotations

from .ast_nodes import (And, BinOp, BoolLit, Call, Expr, IntLit, LinCmp,
                        MatVal, Or, Prod, Subscript, Sum, UnOp, VarRef,
                        expr_str)
from .errors import ModelError
from .evaluator import type_of
from .values import Matrix

SAFE_OP = {"/": "safediv", "%": "safemod", "**": "safepow"}


def apply_undef(gm):
    """Rewrite gm.constraints and the objective; returns nothing."""
    out = []
    for c in gm.constraints:
        c2, guards = _walk(c, gm)
        assert not guards, "boolean constraint must absorb its guards"
        out.append(c2)
    gm.constraints = out
    if gm.objective is not None:
        minimise, obj = gm.objective
        if isinstance(obj, Expr):
            obj2, guards = _walk(obj, gm)
            gm.objective = (minimise, obj2)
            # an objective must be defined in every solution
            for g in guards:
                _note(gm, g)
                gm.constraints.append(g)


def _note(gm, guard):
    if gm.warn_undef:
        gm.warnings.append(f"guarding possibly-undefined expression: "
                           f"{expr_str(guard)}")


def _walk(e, gm):
    """Returns (total expr, pending guards from partial subterms)."""
    env = gm.env
    if isinstance(e, (VarRef, IntLit, BoolLit)):
        return e, []
    if isinstance(e, UnOp):
        a, g = _walk(e.a, gm)
        return _absorb(UnOp(e.op, a), g, gm)
    if isinstance(e, BinOp):
        guards = []
        a, ga = _walk(e.a, gm)
        guards += ga
        if isinstance(e.b, Expr):
            b, gb = _walk(e.b, gm)
            guards += gb
        else:
            b = e.b  # `in` carries a ground set
        node = BinOp(e.op, a, b)
        if e.op in SAFE_OP:
            if e.op == "**":
                guard = BinOp(
                    "/\\",
                    BinOp("\\/", BinOp("!=", a, IntLit(0)),
                          BinOp("!=", b, IntLit(0))),
                    BinOp(">=", b, IntLit(0)))
            else:
                guard = BinOp("!=", b, IntLit(0))
            _note(gm, guard)
            guards.append(guard)
            node = BinOp(SAFE_OP[e.op], a, b)
        return _absorb(node, guards, gm)
    if isinstance(e, (And, Or)):
        args = []
        for x in e.args:
            x2, g = _walk(x, gm)
            assert not g  # boolean children absorb their own guards
            args.append(x2)
        return type(e)(tuple(args)), []
    if isinstance(e, Sum):
        guards = []
        terms = []
        for coeff, x in e.terms:
            x2, g = _walk(x, gm)
            guards += g
            terms.append((coeff, x2))
        return Sum(tuple(terms), e.const), guards
    if isinstance(e, Prod):
        guards = []
        args = []
        for x in e.args:
            x2, g = _walk(x, gm)
            guards += g
            args.append(x2)
        return Prod(tuple(args)), guards
    if isinstance(e, LinCmp):
        guards = []
        terms = []
        for coeff, x in e.terms:
            x2, g = _walk(x, gm)
            guards += g
            terms.append((coeff, x2))
        return _absorb(LinCmp(e.op, tuple(terms), e.k), guards, gm)
    if isinstance(e, MatVal):
        guards = []
        elems = []
        changed = False
        for x in e.m.elems:
            if isinstance(x, Expr):
                x2, g = _walk(x, gm)
                guards += g
                changed = changed or x2 is not x
                elems.append(x2)
            else:
                elems.append(x)
        m = e.m if not changed else Matrix(e.m.index_doms, tuple(elems),
                                           e.m.elem_bool)
        return MatVal(m), guards
    if isinstance(e, Call):
        guards = []
        args = []
        for x in e.args:
            x2, g = _walk(x, gm)
            guards += g
            args.append(x2)
        node = Call(e.func, tuple(args))
        if e.func == "factorial":
            guard = BinOp(">=", args[0], IntLit(0))
            _note(gm, guard)
            guards.append(guard)
        return _absorb(node, guards, gm)
    if isinstance(e, Subscript):
        guards = []
        if not isinstance(e.base, MatVal):
            raise ModelError("unresolved matrix in ground constraint")
        base, gb = _walk(e.base, gm)
        guards += gb
        subs = []
        for d, s in zip(e.base.m.index_doms, e.subs):
            if s is None:
                subs.append(None)
                continue
            s2, g = _walk(s, gm)
            guards += g
            subs.append(s2)
            guard = BinOp("in", s2, d)
            _note(gm, guard)
            guards.append(guard)
        return _absorb(Subscript(base, tuple(subs)), guards, gm)
    raise ModelError(f"unexpected node in ground constraint: {e!r}")


def _absorb(node, guards, gm):
    """Boolean nodes conjoin pending guards; others pass them upward."""
    from .ast_nodes import BoolLit

    if isinstance(node, BoolLit):
        return node, guards
    if guards and type_of(node, gm.env) == "bool":
        return And(tuple(guards) + (node,)), []
    return node, guards
