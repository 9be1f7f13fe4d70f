"""Flattening of canonical ground constraints into CNF.

Every boolean subterm maps to one SAT literal (hash-consed, so repeated
subtrees share); integer expressions map to encoded operands: decision
variables directly, composite terms through auxiliary order-encoded
variables defined by adder or function-table clauses.

Linear constraints reduce by a balanced binary tree of adders (each
node a ternary sum a+b=z over order literals) to at most two operands,
then finish with ladder clauses; sums of booleans with unit
coefficients against 1 use the configured at-most-one/exactly-one
scheme instead.
"""

from __future__ import annotations

import itertools

from .ast_nodes import (And, BinOp, BoolLit, Call, Expr, IntLit, LinCmp,
                        Or, Prod, Subscript, Sum, UnOp, VarRef,
                        expr_key, expr_str)
from .amo import encode_amo, encode_eo
from .domains import IntDomain
from .errors import ModelError
from .evaluator import ARITH_OPS, chk64, factorial, popcount, type_of
from .simplify import neg
from .varenc import ConstEnc, IntVarEnc, LitEnc

_ADDER_VALUE_CAP = 30000


class ScaledEnc:
    """coeff * enc, with literals derived from the underlying encoding."""

    def __init__(self, cnf, enc, coeff):
        assert coeff != 0
        self.cnf = cnf
        self.enc = enc
        self.coeff = coeff
        self.values = tuple(sorted(coeff * v for v in enc.values))

    def le_lit(self, v):
        c = self.coeff
        if c > 0:
            return self.enc.le_lit(v // c)
        m = -((-v) // c)  # ceil(v / c)
        return -self.enc.le_lit(m - 1)

    def eq_lit(self, v):
        if v % self.coeff:
            return self.cnf.FALSE
        return self.enc.eq_lit(v // self.coeff)

    def decode(self, val):
        return self.coeff * self.enc.decode(val)


def scaled(cnf, enc, coeff):
    return enc if coeff == 1 else ScaledEnc(cnf, enc, coeff)


def _is_bool(e, env):
    return isinstance(e, Expr) and type_of(e, env) == "bool"


# ---------------------------------------------------------------- analysis

def analyze_needs(gm, objective):
    """Which literal families each decision variable requires."""
    env = gm.env
    need = {}

    def tag(name, fam):
        need.setdefault(name, set()).add(fam)

    def eq_ctx(x):
        if isinstance(x, VarRef):
            tag(x.name, "d")
        elif isinstance(x, IntLit):
            pass
        else:
            int_composite(x)

    def operand(x):
        if isinstance(x, VarRef):
            if env.decision[x.name].is_bool:
                return
            tag(x.name, "o")
        elif _is_bool(x, env):
            mark_bool(x)
        elif not isinstance(x, IntLit):
            int_composite(x)

    def int_composite(e):
        if isinstance(e, VarRef):
            tag(e.name, "d")
            return
        if isinstance(e, (IntLit, BoolLit)):
            return
        if _is_bool(e, env):
            mark_bool(e)
            return
        if isinstance(e, Sum):
            for _, x in e.terms:
                operand(x)
            return
        if isinstance(e, Prod):
            for x in e.args:
                eq_ctx(x)
            return
        if isinstance(e, BinOp):
            eq_ctx(e.a)
            eq_ctx(e.b)
            return
        if isinstance(e, UnOp):
            eq_ctx(e.a)
            return
        if isinstance(e, Call):
            if e.func in ("min", "max"):
                args = e.args
                if len(args) == 1:
                    args = [x for x in args[0].m.elems if isinstance(x, Expr)]
                for x in args:
                    if isinstance(x, VarRef):
                        tag(x.name, "o")
                        tag(x.name, "d")
                    else:
                        eq_ctx(x)
                return
            eq_ctx(e.args[0])
            return
        if isinstance(e, Subscript):
            for s in e.subs:
                if s is not None:
                    eq_ctx(s)
            for x in e.base.m.elems:
                if isinstance(x, Expr):
                    eq_ctx(x)
            return
        raise ModelError(f"cannot analyze {e!r}")

    def mark_bool(e):
        if isinstance(e, (BoolLit, VarRef)):
            return
        if isinstance(e, UnOp) and e.op == "!":
            mark_bool(e.a)
            return
        if isinstance(e, (And, Or)):
            for x in e.args:
                mark_bool(x)
            return
        if isinstance(e, BinOp) and e.op == "<->":
            mark_bool(e.a)
            mark_bool(e.b)
            return
        if isinstance(e, BinOp) and e.op == "in":
            if isinstance(e.a, VarRef):
                for lo, hi in e.b.ranges:
                    tag(e.a.name, "d" if lo == hi else "o")
            else:
                int_composite(e.a)
            return
        if isinstance(e, LinCmp):
            if len(e.terms) == 1:
                _, x = e.terms[0]
                if isinstance(x, VarRef):
                    tag(x.name, "d" if e.op in ("=", "!=") else "o")
                else:
                    int_composite(x)
                return
            if _bool_sum_case(e, env) is not None:
                for _, x in e.terms:
                    mark_bool(x)
                return
            for _, x in e.terms:
                operand(x)
            return
        if isinstance(e, Call) and e.func == "table":
            for x in e.args[0].m.elems:
                if isinstance(x, Expr):
                    eq_ctx(x)
            return
        if isinstance(e, Subscript):
            int_composite(e)
            return
        raise ModelError(f"cannot analyze constraint {e!r}")

    for c in gm.constraints:
        mark_bool(c)
    if isinstance(objective, Expr):
        if isinstance(objective, VarRef):
            tag(objective.name, "o")
        else:
            int_composite(objective)
    for name in gm.env.decision:
        need.setdefault(name, {"o"})
    return need


def _bool_sum_case(c, env):
    """'amo' / 'eo' / 'alo' when the constraint is a unit-coefficient
    boolean cardinality against one; None otherwise."""
    if all(cf == 1 and _is_bool(x, env) for cf, x in c.terms):
        if c.op == "<=" and c.k == 1:
            return "amo"
        if c.op == "=" and c.k == 1:
            return "eo"
    if all(cf == -1 and _is_bool(x, env) for cf, x in c.terms) \
            and c.op == "<=" and c.k == -1:
        return "alo"
    return None


# ----------------------------------------------------------------- encoder

class Encoder:
    def __init__(self, gm, cnf, amo_scheme="product", full_reify=False):
        self.gm = gm
        self.env = gm.env
        self.cnf = cnf
        self.amo_scheme = amo_scheme
        self.full_reify = full_reify  # define every literal in both ways
        self.enc = {}
        self.lit_cache = {}  # key -> [lit, pos_done, neg_done]
        self.int_cache = {}  # key -> operand enc
        self.aux_n = 0
        self.obj_enc = None

    # -- variable allocation

    def allocate_vars(self, objective=None):
        need = analyze_needs(self.gm, objective)
        for name in self.gm.var_order:
            if name not in self.env.decision:
                continue  # deleted by unification
            if name in self.gm.removed_redundant:
                continue
            vi = self.env.decision[name]
            fams = need.get(name, {"o"})
            first = self.cnf.nvars + 1
            e = IntVarEnc(self.cnf, name, vi.domain, "o" in fams,
                          "d" in fams, strict=True)
            kind = ("const" if e.k == 1 else "two" if e.k == 2 else
                    "+".join(f for f, p in (("order", e.order),
                                            ("direct", e.direct))
                             if p is not None))
            self.cnf.comment(
                f"{name} {vi.domain} {kind} vars {first}..{self.cnf.nvars}"
                if self.cnf.nvars >= first else f"{name} {vi.domain} const")
            self.enc[name] = e

    def encode_model(self):
        for c in self.gm.constraints:
            self.encode_top(c)
        obj = self.gm.objective
        if obj is not None and isinstance(obj[1], Expr):
            self.obj_enc = self.operand_of(obj[1])

    # -- top-level constraints

    def encode_top(self, c):
        cnf = self.cnf
        if isinstance(c, BoolLit):
            if not c.value:
                cnf.add_clause(())
            return
        if isinstance(c, And):
            for x in c.args:
                self.encode_top(x)
            return
        if isinstance(c, Or):
            cnf.add_clause(tuple(self.lit_of(x, 1) for x in c.args))
            return
        if isinstance(c, LinCmp):
            self.encode_lincmp(c, ())
            return
        if isinstance(c, BinOp) and c.op == "<->":
            la = self.lit_of(c.a, 0)
            lb = self.lit_of(c.b, 0)
            cnf.add_clause((-la, lb))
            cnf.add_clause((la, -lb))
            return
        if isinstance(c, Call) and c.func == "table":
            self.encode_table(c, ())
            return
        cnf.add_clause((self.lit_of(c, 1),))

    # -- literals for boolean expressions

    def lit_of(self, e, pol):
        if self.full_reify:
            pol = 0
        if isinstance(e, BoolLit):
            return self.cnf.TRUE if e.value else self.cnf.FALSE
        if isinstance(e, VarRef):
            return self.enc[e.name].eq_lit(1)
        if isinstance(e, UnOp) and e.op == "!":
            return -self.lit_of(e.a, -pol)
        if isinstance(e, LinCmp) and len(e.terms) == 1:
            return self._unit_lincmp_lit(e)
        if isinstance(e, BinOp) and e.op == "in":
            return self.lit_of(self._in_formula(e), pol)
        if isinstance(e, Subscript):
            return self.operand_of(e).eq_lit(1)
        if isinstance(e, Call) and e.func == "table":
            return self.lit_of(self._table_formula(e), pol)

        key = expr_key(e)
        entry = self.lit_cache.get(key)
        if entry is None:
            entry = [self.cnf.new_var(), False, False]
            self.lit_cache[key] = entry
        g = entry[0]
        want_pos = pol >= 0 and not entry[1]
        want_neg = pol <= 0 and not entry[2]
        if want_pos:
            entry[1] = True
        if want_neg:
            entry[2] = True
        if not (want_pos or want_neg):
            return g
        if isinstance(e, (And, Or)):
            child_pol = pol
            lits = [self.lit_of(x, child_pol) for x in e.args]
            if isinstance(e, And):
                if want_pos:
                    for l in lits:
                        self.cnf.add_clause((-g, l))
                if want_neg:
                    self.cnf.add_clause((g,) + tuple(-l for l in lits))
            else:
                if want_pos:
                    self.cnf.add_clause((-g,) + tuple(lits))
                if want_neg:
                    for l in lits:
                        self.cnf.add_clause((g, -l))
            return g
        if isinstance(e, BinOp) and e.op == "<->":
            la = self.lit_of(e.a, 0)
            lb = self.lit_of(e.b, 0)
            if want_pos:
                self.cnf.add_clause((-g, -la, lb))
                self.cnf.add_clause((-g, la, -lb))
            if want_neg:
                self.cnf.add_clause((g, la, lb))
                self.cnf.add_clause((g, -la, -lb))
            return g
        if isinstance(e, LinCmp):
            if want_pos:
                self.encode_lincmp(e, (-g,))
            if want_neg:
                self.encode_lincmp(neg(e, self.env), (g,))
            return g
        raise ModelError(f"cannot reify {expr_str(e)}")

    def _unit_lincmp_lit(self, e):
        coeff, x = e.terms[0]
        enc = scaled(self.cnf, self.operand_of(x), coeff)
        if e.op == "<=":
            return enc.le_lit(e.k)
        l = enc.eq_lit(e.k)
        return l if e.op == "=" else -l

    def _in_formula(self, e):
        parts = []
        for lo, hi in e.b.ranges:
            if lo == hi:
                parts.append(LinCmp("=", ((1, e.a),), lo))
            else:
                parts.append(And((LinCmp("<=", ((-1, e.a),), -lo),
                                  LinCmp("<=", ((1, e.a),), hi))))
        if not parts:
            return BoolLit(False)
        return parts[0] if len(parts) == 1 else Or(tuple(parts))

    def _table_formula(self, e):
        scope = [_lift(x) for x in e.args[0].m.elems]
        rows = [tuple(r.elems) for r in e.args[1].m.rows()]
        alts = []
        for row in rows:
            conj = tuple(LinCmp("=", ((1, x),), v)
                         for x, v in zip(scope, row))
            alts.append(And(conj) if len(conj) > 1 else conj[0])
        if not alts:
            return BoolLit(False)
        return alts[0] if len(alts) == 1 else Or(tuple(alts))

    # -- integer operands

    def operand_of(self, e):
        if isinstance(e, IntLit):
            return ConstEnc(self.cnf, e.value)
        if isinstance(e, BoolLit):
            return ConstEnc(self.cnf, int(e.value))
        if isinstance(e, VarRef):
            enc = self.enc[e.name]
            if self.env.decision[e.name].is_bool:
                return LitEnc(self.cnf, enc.eq_lit(1))
            return enc
        if _is_bool(e, self.env):
            return LitEnc(self.cnf, self.lit_of(e, 0))
        key = expr_key(e)
        if key in self.int_cache:
            return self.int_cache[key]
        if isinstance(e, Sum):
            ops = [scaled(self.cnf, self.operand_of(x), c)
                   for c, x in e.terms]
            if e.const:
                ops.append(ConstEnc(self.cnf, e.const))
            enc = self.sum_root(ops)
        elif isinstance(e, Prod):
            enc = self.operand_of(e.args[0])
            for x in e.args[1:]:
                enc = self._ternary("*", enc, self.operand_of(x))
        elif isinstance(e, BinOp):
            enc = self._ternary(e.op, self.operand_of(e.a),
                                self.operand_of(e.b))
        elif isinstance(e, UnOp) and e.op == "abs":
            enc = self._unary(abs, self.operand_of(e.a))
        elif isinstance(e, Call) and e.func == "factorial":
            enc = self._unary(lambda a: factorial(a) if a >= 0 else 0,
                              self.operand_of(e.args[0]))
        elif isinstance(e, Call) and e.func == "popcount":
            enc = self._unary(popcount, self.operand_of(e.args[0]))
        elif isinstance(e, Call) and e.func in ("min", "max"):
            enc = self._minmax(e)
        elif isinstance(e, Subscript):
            enc = self._element(e)
        else:
            raise ModelError(f"cannot flatten {expr_str(e)}")
        self.int_cache[key] = enc
        return enc

    def _new_aux(self, values, why):
        self.aux_n += 1
        name = f"__flat{self.aux_n}"
        dom = IntDomain.values_of(sorted(set(values)))
        first = self.cnf.nvars + 1
        e = IntVarEnc(self.cnf, name, dom, True, False, strict=False)
        self.cnf.comment(f"aux {name} {dom} for {why} "
                         f"vars {first}..{self.cnf.nvars}")
        return e

    # -- sums over order literals

    def sum_root(self, ops):
        """Reduce encoded operands to a single one by a tree of adders."""
        while len(ops) > 1:
            ops = [self._adder(ops[i:i + 2])
                   for i in range(0, len(ops), 2)]
        return ops[0]

    def _adder(self, chunk):
        consts = sum(c.values[0] for c in chunk if len(c.values) == 1)
        rest = [c for c in chunk if len(c.values) != 1]
        if not rest:
            return ConstEnc(self.cnf, consts)
        if len(rest) == 1 and consts == 0:
            return rest[0]
        vals = {consts}
        for c in rest:
            vals = {a + b for a in vals for b in c.values}
            if len(vals) > _ADDER_VALUE_CAP:
                lo = sum(min(c.values) for c in rest) + consts
                hi = sum(max(c.values) for c in rest) + consts
                vals = range(lo, hi + 1)
                break
        z = self._new_aux([chk64(v) for v in vals], "sum")
        for combo in itertools.product(*(c.values for c in rest)):
            s = sum(combo) + consts
            # all parts at their value or below => sum at s or below
            self.cnf.add_clause(
                tuple(-c.le_lit(a) for c, a in zip(rest, combo))
                + (z.le_lit(s),))
            # all parts at their value or above => sum at s or above
            self.cnf.add_clause(
                tuple(c.le_lit(a - 1) for c, a in zip(rest, combo))
                + (-z.le_lit(s - 1),))
        return z

    # -- linear constraints

    def encode_lincmp(self, c, cond):
        env = self.env
        if not c.terms:
            ok = 0 <= c.k if c.op == "<=" else \
                (0 == c.k) == (c.op == "=")
            if not ok:
                self.cnf.add_clause(tuple(cond))
            return
        if c.op in ("=", "!=") and len(c.terms) == 1 \
                and self._support_eq(c, cond):
            return
        if len(c.terms) == 1:
            self.cnf.add_clause(tuple(cond) + (self._unit_lincmp_lit(c),))
            return
        case = _bool_sum_case(c, env)
        if case == "alo":
            self.cnf.add_clause(
                tuple(cond) + tuple(self.lit_of(x, 0) for _, x in c.terms))
            return
        if case and not cond:
            lits = [self.lit_of(x, 0) for _, x in c.terms]
            if case == "amo":
                encode_amo(self.cnf, lits, self.amo_scheme)
            else:
                encode_eo(self.cnf, lits, self.amo_scheme)
            return
        ops = [scaled(self.cnf, self.operand_of(x), cf)
               for cf, x in c.terms]
        if c.op == "<=":
            self._le(ops, c.k, cond)
        elif c.op == "=":
            self._le(ops, c.k, cond)
            negs = [ScaledEnc(self.cnf, op, -1) for op in ops]
            self._le(negs, -c.k, cond)
        else:  # !=
            root = self.sum_root(ops)
            if c.k not in root.values:
                return
            self.cnf.add_clause(tuple(cond)
                                + (-root.le_lit(c.k), root.le_lit(c.k - 1)))

    def _le(self, ops, k, cond):
        while len(ops) > 2:
            ops = [self._adder(ops[i:i + 2])
                   for i in range(0, len(ops), 2)]
        if len(ops) == 1:
            self.cnf.add_clause(tuple(cond) + (ops[0].le_lit(k),))
            return
        e1, e2 = ops
        if len(e1.values) > len(e2.values):
            e1, e2 = e2, e1
        for a in e1.values:
            # e1 >= a  =>  e2 <= k - a
            self.cnf.add_clause(tuple(cond)
                                + (e1.le_lit(a - 1), e2.le_lit(k - a)))

    def _support_eq(self, c, cond):
        """c*f(x[,y]) = / != k with constant result: support or nogood
        clauses instead of an auxiliary variable. Returns False when the
        term shape doesn't apply (caller falls back)."""
        coeff, t = c.terms[0]
        if expr_key(t) in self.int_cache:
            return False  # aux already exists; derived literal is cheaper
        f = None
        args = None
        if isinstance(t, Prod) and len(t.args) == 2:
            f, args = ARITH_OPS["*"], t.args
        elif isinstance(t, BinOp) and t.op in ARITH_OPS:
            f, args = ARITH_OPS[t.op], (t.a, t.b)
        elif isinstance(t, UnOp) and t.op == "abs":
            f, args = abs, (t.a,)
        elif isinstance(t, Call) and t.func == "factorial":
            f, args = (lambda a: factorial(a) if a >= 0 else 0), \
                (t.args[0],)
        elif isinstance(t, Call) and t.func == "popcount":
            f, args = popcount, (t.args[0],)
        if f is None or any(_is_bool(x, self.env) for x in args):
            return False
        eq = c.op == "="
        if c.k % coeff:
            if eq:
                self.cnf.add_clause(tuple(cond))
            return True
        k = c.k // coeff
        encs = [self.operand_of(x) for x in args]
        if len(encs) == 1:
            ea = encs[0]
            hits = [a for a in ea.values if chk64(f(a)) == k]
            if eq:
                self.cnf.add_clause(tuple(cond)
                                    + tuple(ea.eq_lit(a) for a in hits))
            else:
                for a in hits:
                    self.cnf.add_clause(tuple(cond) + (-ea.eq_lit(a),))
            return True
        ea, eb = encs
        if not eq:
            for a in ea.values:
                for b in eb.values:
                    if chk64(f(a, b)) == k:
                        self.cnf.add_clause(
                            tuple(cond) + (-ea.eq_lit(a), -eb.eq_lit(b)))
            return True
        for a in ea.values:
            support = [eb.eq_lit(b) for b in eb.values
                       if chk64(f(a, b)) == k]
            self.cnf.add_clause(tuple(cond) + (-ea.eq_lit(a),)
                                + tuple(support))
        for b in eb.values:
            support = [ea.eq_lit(a) for a in ea.values
                       if chk64(f(a, b)) == k]
            self.cnf.add_clause(tuple(cond) + (-eb.eq_lit(b),)
                                + tuple(support))
        return True

    # -- function tables

    def _ternary(self, op, ea, eb):
        f = ARITH_OPS[op]
        outs = sorted({chk64(f(a, b))
                       for a in ea.values for b in eb.values})
        z = self._new_aux(outs, f"op {op}")
        for a in ea.values:
            la = ea.eq_lit(a)
            for b in eb.values:
                self.cnf.add_clause(
                    (-la, -eb.eq_lit(b), z.eq_lit(chk64(f(a, b)))))
        return z

    def _unary(self, f, ea):
        outs = sorted({chk64(f(a)) for a in ea.values})
        z = self._new_aux(outs, "fn")
        for a in ea.values:
            self.cnf.add_clause((-ea.eq_lit(a), z.eq_lit(chk64(f(a)))))
        return z

    def _minmax(self, e):
        pick_min = e.func == "min"
        if len(e.args) == 2:
            args = list(e.args)
        else:
            args = [_lift(x) for x in e.args[0].m.elems]
        encs = [self.operand_of(x) for x in args]
        lo = (min if pick_min else max)(min(c.values) for c in encs)
        hi = min(max(c.values) for c in encs) if pick_min \
            else max(max(c.values) for c in encs)
        union = sorted({v for c in encs for v in c.values
                        if lo <= v <= hi})
        z = self._new_aux(union, e.func)
        for c in encs:
            for a in c.values:
                if pick_min:
                    # c <= a => z <= a
                    self.cnf.add_clause((-c.le_lit(a), z.le_lit(a)))
                else:
                    # c >= a => z >= a
                    self.cnf.add_clause((c.le_lit(a - 1), -z.le_lit(a - 1)))
        for v in z.values:
            self.cnf.add_clause((-z.eq_lit(v),)
                                + tuple(c.eq_lit(v) for c in encs))
        return z

    def _element(self, e):
        m = e.base.m
        subs = [self.operand_of(s) for s in e.subs]
        elem_ops = {}
        reachable = []
        any_oob = False
        combos = itertools.product(*(s.values for s in subs))
        for combo in combos:
            if all(d.contains(v) for d, v in zip(m.index_doms, combo)):
                off = m.offset_of(combo)
                x = _lift(m.elems[off])
                if not isinstance(x, (IntLit, BoolLit)):
                    if off not in elem_ops:
                        elem_ops[off] = self.operand_of(x)
                reachable.append((combo, off, x))
            else:
                reachable.append((combo, None, None))
                any_oob = True
        zvals = set()
        for _, off, x in reachable:
            if off is None:
                continue
            if isinstance(x, (IntLit, BoolLit)):
                zvals.add(int(x.value) if isinstance(x, BoolLit)
                          else x.value)
            else:
                zvals.update(elem_ops[off].values)
        if not zvals:
            zvals = {0}
        default = min(zvals)
        if any_oob:
            zvals.add(default)
        z = self._new_aux(sorted(zvals), "element")
        for combo, off, x in reachable:
            prefix = tuple(-s.eq_lit(v) for s, v in zip(subs, combo))
            if off is None:
                self.cnf.add_clause(prefix + (z.eq_lit(default),))
            elif isinstance(x, (IntLit, BoolLit)):
                v = int(x.value) if isinstance(x, BoolLit) else x.value
                self.cnf.add_clause(prefix + (z.eq_lit(v),))
            else:
                ey = elem_ops[off]
                for v in ey.values:
                    self.cnf.add_clause(prefix
                                        + (-ey.eq_lit(v), z.eq_lit(v)))
        return z

    # -- table constraints

    def encode_table(self, e, cond):
        scope = [self.operand_of(_lift(x)) for x in e.args[0].m.elems]
        rows = [tuple(r.elems) for r in e.args[1].m.rows()]
        rows = [r for r in rows
                if all(v in enc.values for enc, v in zip(scope, r))]
        if not rows:
            self.cnf.add_clause(tuple(cond))
            return
        if len(scope) == 1:
            self.cnf.add_clause(
                tuple(cond) + tuple(scope[0].eq_lit(r[0]) for r in rows))
            return
        if len(scope) == 2:
            ea, eb = scope
            for a in ea.values:
                support = [eb.eq_lit(r[1]) for r in rows if r[0] == a]
                self.cnf.add_clause(tuple(cond) + (-ea.eq_lit(a),)
                                    + tuple(support))
            for b in eb.values:
                support = [ea.eq_lit(r[0]) for r in rows if r[1] == b]
                self.cnf.add_clause(tuple(cond) + (-eb.eq_lit(b),)
                                    + tuple(support))
            return
        row_vars = self.cnf.new_vars(len(rows))
        for r, rv in zip(rows, row_vars):
            for enc, v in zip(scope, r):
                self.cnf.add_clause((-rv, enc.eq_lit(v)))
            self.cnf.add_clause((rv,) + tuple(-enc.eq_lit(v)
                                              for enc, v in zip(scope, r)))
        self.cnf.add_clause(tuple(cond) + tuple(row_vars))
        for i, enc in enumerate(scope):
            for a in enc.values:
                matching = [rv for r, rv in zip(rows, row_vars)
                            if r[i] == a]
                self.cnf.add_clause(tuple(cond) + (-enc.eq_lit(a),)
                                    + tuple(matching))


def _lift(x):
    if isinstance(x, Expr):
        return x
    if isinstance(x, bool):
        return BoolLit(x)
    return IntLit(x)
