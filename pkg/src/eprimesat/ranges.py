"""Interval analysis over ground expressions (sound, not exact)."""

from __future__ import annotations

from .ast_nodes import (And, BinOp, BoolLit, Call, IntLit, LinCmp, MatVal,
                        Or, Prod, Subscript, Sum, UnOp, VarRef)
from .domains import INT64_MAX, INT64_MIN
from .errors import ModelError
from .evaluator import factorial

BOOL_RANGE = (0, 1)


def _clamp(v):
    return max(INT64_MIN, min(INT64_MAX, v))


def expr_range(e, env):
    """Inclusive (lo, hi) hull of the expression's possible values."""
    if isinstance(e, IntLit):
        return (e.value, e.value)
    if isinstance(e, BoolLit):
        v = int(e.value)
        return (v, v)
    if isinstance(e, VarRef):
        d = env.decision[e.name].domain
        return (d.min(), d.max())
    if isinstance(e, (And, Or, LinCmp)):
        return BOOL_RANGE
    if isinstance(e, UnOp):
        if e.op == "!":
            return BOOL_RANGE
        lo, hi = expr_range(e.a, env)
        if e.op == "-":
            return (-hi, -lo)
        if e.op == "abs":
            if lo >= 0:
                return (lo, hi)
            if hi <= 0:
                return (-hi, -lo)
            return (0, max(-lo, hi))
    if isinstance(e, Sum):
        lo = hi = e.const
        for c, x in e.terms:
            xlo, xhi = expr_range(x, env)
            if c >= 0:
                lo += c * xlo
                hi += c * xhi
            else:
                lo += c * xhi
                hi += c * xlo
        return (_clamp(lo), _clamp(hi))
    if isinstance(e, Prod):
        lo, hi = 1, 1
        for x in e.args:
            xlo, xhi = expr_range(x, env)
            cands = [lo * xlo, lo * xhi, hi * xlo, hi * xhi]
            lo, hi = min(cands), max(cands)
        return (_clamp(lo), _clamp(hi))
    if isinstance(e, BinOp):
        return _binop_range(e, env)
    if isinstance(e, Call):
        return _call_range(e, env)
    if isinstance(e, Subscript):
        lo = hi = None
        for x in e.base.m.elems:
            xlo, xhi = expr_range(_as_expr(x), env)
            lo = xlo if lo is None else min(lo, xlo)
            hi = xhi if hi is None else max(hi, xhi)
        return (lo, hi)
    raise ModelError(f"cannot bound {e!r}")


def _as_expr(x):
    if isinstance(x, bool):
        return BoolLit(x)
    if isinstance(x, int):
        return IntLit(x)
    return x


def _binop_range(e, env):
    op = e.op
    if op in ("=", "!=", "<", "<=", ">", ">=", "/\\", "\\/", "->", "<->",
              "in", "<lex", "<=lex", ">lex", ">=lex"):
        return BOOL_RANGE
    alo, ahi = expr_range(e.a, env)
    blo, bhi = expr_range(e.b, env)
    if op == "+":
        return (_clamp(alo + blo), _clamp(ahi + bhi))
    if op == "-":
        return (_clamp(alo - bhi), _clamp(ahi - blo))
    if op == "*":
        cands = [alo * blo, alo * bhi, ahi * blo, ahi * bhi]
        return (_clamp(min(cands)), _clamp(max(cands)))
    if op in ("/", "safediv"):
        cands = [0]
        bs = {b for b in (blo, bhi, -1, 1) if blo <= b <= bhi and b != 0}
        for a in (alo, ahi):
            for b in bs:
                cands.append(a // b)
        return (_clamp(min(cands)), _clamp(max(cands)))
    if op in ("%", "safemod"):
        m = max(abs(blo), abs(bhi))
        lo = min(0, -m + 1 if blo < 0 else 0)
        hi = max(0, m - 1 if bhi > 0 else 0)
        return (lo, hi)
    if op in ("**", "safepow"):
        cands = [0]  # safe default
        as_ = {a for a in (alo, ahi, -1, 0, 1) if alo <= a <= ahi}
        b0, b1 = max(0, blo), min(bhi, 63)
        for b in range(b0, b1 + 1):
            for a in as_:
                try:
                    cands.append(a ** b)
                except OverflowError:
                    pass
        return (_clamp(min(cands)), _clamp(max(cands)))
    raise ModelError(f"cannot bound operator {op}")


def _call_range(e, env):
    f = e.func
    if f in ("allDiff", "alldifferent_except", "gcc", "atmost", "atleast",
             "table"):
        return BOOL_RANGE
    if f in ("min", "max"):
        pick = min if f == "min" else max
        if len(e.args) == 2:
            alo, ahi = expr_range(e.args[0], env)
            blo, bhi = expr_range(e.args[1], env)
            return (pick(alo, blo), pick(ahi, bhi))
        lo = hi = None
        for x in e.args[0].m.elems:
            xlo, xhi = expr_range(_as_expr(x), env)
            lo = xlo if lo is None else pick(lo, xlo)
            hi = xhi if hi is None else pick(hi, xhi)
        return (lo, hi)
    if f == "factorial":
        lo, hi = expr_range(e.args[0], env)
        if hi < 0:
            return (0, 0)
        top = factorial(min(hi, 20))
        bot = 0 if lo < 0 else factorial(lo) if lo <= 20 else top
        return (min(bot, top), max(bot, top))
    if f == "popcount":
        return (0, 64)
    raise ModelError(f"cannot bound call {f}")
