"""Model-level rewriting passes between simplification and flattening."""

from __future__ import annotations

from .ast_nodes import (And, BinOp, Call, Expr, IntLit, BoolLit, LinCmp,
                        MatVal, Or, Prod, Subscript, Sum, UnOp, VarRef,
                        expr_key)
from .domains import IntDomain
from .errors import ModelError
from .simplify import make_lincmp, neg, simplify_expr, simplify_model
from .values import Matrix, matrix_1d


def subst(e, binds):
    """Replace VarRefs per binds (name -> IntLit | BoolLit | VarRef)."""
    if isinstance(e, VarRef):
        return binds.get(e.name, e)
    if isinstance(e, (IntLit, BoolLit)):
        return e
    if isinstance(e, UnOp):
        return UnOp(e.op, subst(e.a, binds))
    if isinstance(e, BinOp):
        b = subst(e.b, binds) if isinstance(e.b, Expr) else e.b
        return BinOp(e.op, subst(e.a, binds), b)
    if isinstance(e, (And, Or, Prod)):
        return type(e)(tuple(subst(x, binds) for x in e.args))
    if isinstance(e, Sum):
        return Sum(tuple((c, subst(x, binds)) for c, x in e.terms), e.const)
    if isinstance(e, LinCmp):
        return LinCmp(e.op, tuple((c, subst(x, binds)) for c, x in e.terms),
                      e.k)
    if isinstance(e, Call):
        return Call(e.func, tuple(subst(x, binds) for x in e.args))
    if isinstance(e, Subscript):
        return Subscript(subst(e.base, binds),
                         tuple(None if s is None else subst(s, binds)
                               for s in e.subs))
    if isinstance(e, MatVal):
        elems = tuple(subst(x, binds) if isinstance(x, Expr) else x
                      for x in e.m.elems)
        return MatVal(Matrix(e.m.index_doms, elems, e.m.elem_bool))
    raise ModelError(f"cannot substitute in {e!r}")


# ------------------------------------------------------------- delete vars

def delete_vars(gm):
    """Unify variables equated to each other or to constants."""
    for _ in range(50):
        if gm.unsat or not _delete_once(gm):
            break


def _delete_once(gm):
    env = gm.env
    aliases = []  # (a, b) var names, same type
    consts = {}  # name -> int value

    def note_const(name, v):
        if name in consts and consts[name] != v:
            gm.unsat = True
        consts[name] = v

    for name, vi in env.decision.items():
        if vi.domain.size() == 1:
            note_const(name, vi.domain.min())
    for c in gm.constraints:
        if isinstance(c, VarRef):
            note_const(c.name, 1)
        elif isinstance(c, UnOp) and c.op == "!" and isinstance(c.a, VarRef):
            note_const(c.a.name, 0)
        elif isinstance(c, LinCmp) and c.op == "=":
            if len(c.terms) == 1:
                coeff, x = c.terms[0]
                if isinstance(x, VarRef) and coeff == 1:
                    note_const(x.name, c.k)
            elif len(c.terms) == 2 and c.k == 0:
                (c1, x1), (c2, x2) = c.terms
                if (c1, c2) == (1, -1) and isinstance(x1, VarRef) \
                        and isinstance(x2, VarRef) \
                        and env.decision[x1.name].is_bool \
                        == env.decision[x2.name].is_bool:
                    aliases.append((x1.name, x2.name))
        elif isinstance(c, BinOp) and c.op == "<->":
            if isinstance(c.a, VarRef) and isinstance(c.b, VarRef):
                aliases.append((c.a.name, c.b.name))
    if gm.unsat or (not aliases and not consts):
        return False

    parent = {}

    def find(n):
        parent.setdefault(n, n)
        while parent[n] != n:
            parent[n] = parent[parent[n]]
            n = parent[n]
        return n

    for a, b in aliases:
        ra, rb = find(a), find(b)
        if ra != rb:
            lo, hi = (ra, rb) if ra < rb else (rb, ra)
            parent[hi] = lo
    groups = {}
    for n in list(parent):
        groups.setdefault(find(n), set()).add(n)
    for n in consts:
        groups.setdefault(find(n), set()).add(find(n))

    binds = {}
    for root, members in sorted(groups.items()):
        members.add(root)
        dom = None
        is_bool = env.decision[root].is_bool
        for m in members:
            d = env.decision[m].domain
            dom = d if dom is None else dom.intersect(d)
        v = None
        for m in members:
            if m in consts:
                if v is not None and v != consts[m]:
                    gm.unsat = True
                    return False
                v = consts[m]
        if v is not None:
            dom = dom.intersect(IntDomain.of((v, v)))
        if dom.is_empty():
            gm.unsat = True
            return False
        if v is not None:
            for m in members:
                gm.deleted[m] = ("const", v)
                del env.decision[m]
                binds[m] = BoolLit(bool(v)) if is_bool else IntLit(v)
        else:
            env.decision[root].domain = dom
            for m in members:
                if m == root:
                    continue
                gm.deleted[m] = ("alias", root)
                del env.decision[m]
                binds[m] = VarRef(root)
    if not binds:
        return False
    gm.constraints = [subst(c, binds) for c in gm.constraints]
    if gm.objective is not None and isinstance(gm.objective[1], Expr):
        gm.objective = (gm.objective[0], subst(gm.objective[1], binds))
    if gm.branching is not None:
        out = []
        for n in gm.branching:
            while n in gm.deleted:
                kind, tgt = gm.deleted[n]
                if kind == "const":
                    n = None
                    break
                n = tgt
            if n is not None and n not in out:
                out.append(n)
        gm.branching = out
    simplify_model(gm)
    return True


# --------------------------------------------------------------- aggregate

def _diseq_edge(c, env):
    """x != y between two int variables."""
    if isinstance(c, LinCmp) and c.op == "!=" and c.k == 0 \
            and len(c.terms) == 2:
        (c1, x1), (c2, x2) = c.terms
        if sorted((c1, c2)) == [-1, 1] and isinstance(x1, VarRef) \
                and isinstance(x2, VarRef) \
                and not env.decision[x1.name].is_bool \
                and not env.decision[x2.name].is_bool:
            return (x1.name, x2.name)
    return None


def _less_edge(c, env):
    if isinstance(c, LinCmp) and c.op == "<=" and c.k == -1 \
            and len(c.terms) == 2:
        (c1, x1), (c2, x2) = c.terms
        if sorted((c1, c2)) == [-1, 1] and isinstance(x1, VarRef) \
                and isinstance(x2, VarRef) \
                and not env.decision[x1.name].is_bool \
                and not env.decision[x2.name].is_bool:
            return (x1.name, x2.name)
    return None


def _alldiff_scope(c):
    if isinstance(c, Call) and c.func == "allDiff":
        names = []
        for x in c.args[0].m.elems:
            if not isinstance(x, VarRef):
                return None
            names.append(x.name)
        if len(set(names)) == len(names):
            return names
    return None


def aggregate(gm):
    """Grow allDiff constraints from disequality and less-than edges,
    and merge matching atmost/atleast pairs into gcc."""
    env = gm.env
    adj = {}
    removable = set()  # constraint indices subsumable by a clique
    seeds = []
    for i, c in enumerate(gm.constraints):
        d = _diseq_edge(c, env)
        if d is not None:
            _add_edge(adj, *d)
            removable.add(i)
            seeds.append((2, sorted(d), i))
            continue
        l = _less_edge(c, env)
        if l is not None:
            _add_edge(adj, *l)
            continue
        s = _alldiff_scope(c)
        if s is not None:
            for a in s:
                for b in s:
                    if a < b:
                        _add_edge(adj, a, b)
            removable.add(i)
            seeds.append((len(s), sorted(s), i))
    if not seeds:
        _merge_gcc(gm)
        return
    seeds.sort(key=lambda t: (-t[0], t[1]))
    consumed = set()
    new_alldiffs = []
    for size, scope, idx in seeds:
        if idx in consumed:
            continue
        clique = list(scope)
        in_clique = set(clique)
        for cand in sorted(adj):
            if cand in in_clique:
                continue
            if all(cand in adj.get(m, ()) for m in clique):
                clique.append(cand)
                in_clique.add(cand)
        if len(clique) == size:
            continue  # no growth; keep original constraint
        clique.sort()
        consumed.add(idx)
        for j, c in enumerate(gm.constraints):
            if j in removable and j not in consumed:
                d = _diseq_edge(c, env)
                s = d if d is not None else _alldiff_scope(c)
                if s is not None and set(s) <= in_clique:
                    consumed.add(j)
        new_alldiffs.append(Call("allDiff", (MatVal(matrix_1d(
            [VarRef(n) for n in clique], False)),)))
    gm.constraints = [c for i, c in enumerate(gm.constraints)
                      if i not in consumed] + new_alldiffs
    _merge_gcc(gm)


def _add_edge(adj, a, b):
    adj.setdefault(a, set()).add(b)
    adj.setdefault(b, set()).add(a)


def _merge_gcc(gm):
    """atmost(X,C,V) + atleast(X,C,V) with equal arguments -> gcc(X,V,C)."""
    index = {}
    for i, c in enumerate(gm.constraints):
        if isinstance(c, Call) and c.func in ("atmost", "atleast"):
            sig = tuple(expr_key(a) for a in c.args)
            index.setdefault(sig, {})[c.func] = i
    drop = set()
    add = []
    for sig, found in sorted(index.items()):
        if "atmost" in found and "atleast" in found:
            c = gm.constraints[found["atmost"]]
            scope, counts, vals = c.args
            add.append(Call("gcc", (scope, vals, counts)))
            drop.add(found["atmost"])
            drop.add(found["atleast"])
    if add:
        gm.constraints = [c for i, c in enumerate(gm.constraints)
                          if i not in drop] + add


# ---------------------------------------------------------- domain filter

def filter_domains(gm):
    """Shrink variable domains from unary and linear constraints; returns
    True when anything shrank (callers restart the pass pipeline)."""
    env = gm.env
    any_change = False
    while not gm.unsat:
        changed = False
        keep = []
        for c in gm.constraints:
            drop = False
            if isinstance(c, BinOp) and c.op == "in" \
                    and isinstance(c.a, VarRef):
                changed |= _restrict(gm, c.a.name,
                                     env.decision[c.a.name].domain
                                     .intersect(c.b))
                drop = True
            elif isinstance(c, LinCmp):
                drop, ch = _filter_lincmp(gm, c)
                changed |= ch
            elif isinstance(c, Call) and c.func == "allDiff":
                c2, ch = _filter_alldiff(gm, c)
                changed |= ch
                if c2 is None:
                    drop = True
                else:
                    c = c2
            elif isinstance(c, Call) and c.func == "table":
                c2, ch = _filter_table(gm, c)
                changed |= ch
                if c2 is None:
                    drop = True
                else:
                    c = c2
            if not drop:
                keep.append(c)
            if gm.unsat:
                break
        gm.constraints = keep
        any_change |= changed
        if not changed:
            break
    return any_change


def _restrict(gm, name, new_dom):
    vi = gm.env.decision[name]
    if new_dom.is_empty():
        gm.unsat = True
        vi.domain = new_dom
        return True
    if new_dom.size() == vi.domain.size():
        return False
    vi.domain = new_dom
    return True


def _filter_lincmp(gm, c):
    """Returns (drop, changed)."""
    env = gm.env
    from .ranges import expr_range

    if len(c.terms) == 1:
        coeff, x = c.terms[0]
        if isinstance(x, VarRef):
            d = env.decision[x.name].domain
            if c.op == "<=":
                if coeff > 0:
                    nd = d.restrict_bounds(None, c.k // coeff)
                else:
                    nd = d.restrict_bounds(-(c.k // -coeff), None)
            elif c.op == "=":
                if c.k % coeff == 0:
                    nd = d.intersect(IntDomain.of((c.k // coeff,) * 2))
                else:
                    gm.unsat = True
                    return True, True
            else:  # !=
                if c.k % coeff == 0:
                    nd = d.remove_value(c.k // coeff)
                else:
                    return True, False
            return True, _restrict(gm, x.name, nd)
        return False, False
    if c.op not in ("<=", "="):
        return False, False
    ranges = [expr_range(x, env) for _, x in c.terms]
    changed = False
    for i, (coeff, x) in enumerate(c.terms):
        if not isinstance(x, VarRef):
            continue
        rest_min = rest_max = 0
        for j, (cj, _) in enumerate(c.terms):
            if j == i:
                continue
            lo, hi = ranges[j]
            if cj >= 0:
                rest_min += cj * lo
                rest_max += cj * hi
            else:
                rest_min += cj * hi
                rest_max += cj * lo
        d = env.decision[x.name].domain
        nd = d
        # coeff*x <= k - rest_min
        bound = c.k - rest_min
        if coeff > 0:
            nd = nd.restrict_bounds(None, bound // coeff)
        else:
            nd = nd.restrict_bounds(-(bound // -coeff), None)
        if c.op == "=":
            # coeff*x >= k - rest_max
            bound = c.k - rest_max
            if coeff > 0:
                nd = nd.restrict_bounds(-(-bound // coeff), None)
            else:
                nd = nd.restrict_bounds(None, bound // coeff)
        if nd.size() != d.size():
            changed |= _restrict(gm, x.name, nd)
            if gm.unsat:
                return False, True
    return False, changed


def _filter_alldiff(gm, c):
    env = gm.env
    names = []
    fixed = []  # values of constant scope members
    for x in c.args[0].m.elems:
        if isinstance(x, VarRef):
            names.append(x.name)
        elif isinstance(x, IntLit):
            fixed.append(x.value)
        elif isinstance(x, (int, bool)):
            fixed.append(int(x))
        else:
            return c, False
    if len(set(fixed)) != len(fixed):
        gm.unsat = True
        return None, True
    changed = False
    pending = list(fixed)
    while True:
        singles = [n for n in names if env.decision[n].domain.size() == 1]
        for s in singles:
            pending.append(env.decision[s].domain.min())
            names.remove(s)
        if not pending:
            break
        vals, pending = pending, []
        if len(set(vals)) != len(vals):
            gm.unsat = True
            return c, True
        for v in vals:
            for n in names:
                d = env.decision[n].domain
                if d.contains(v):
                    changed |= _restrict(gm, n, d.remove_value(v))
                    if gm.unsat:
                        return c, True
    if len(names) <= 1:
        return None, changed
    if len(names) == len(c.args[0].m.elems):
        return c, changed
    return Call("allDiff", (MatVal(matrix_1d(
        [VarRef(n) for n in sorted(names)], False)),)), changed


def _filter_table(gm, c):
    env = gm.env
    scope_m, rows_m = c.args[0].m, c.args[1].m
    scope = list(scope_m.elems)
    if not all(isinstance(x, VarRef) for x in scope) or rows_m.ndim != 2:
        return c, False
    doms = [env.decision[x.name].domain for x in scope]
    rows = [tuple(r.elems) for r in rows_m.rows()]
    ok_rows = [r for r in rows
               if all(d.contains(v) for d, v in zip(doms, r))]
    if not ok_rows:
        gm.unsat = True
        return None, True
    changed = False
    for i, x in enumerate(scope):
        support = IntDomain.values_of(sorted({r[i] for r in ok_rows}))
        changed |= _restrict(gm, x.name, doms[i].intersect(support))
        if gm.unsat:
            return c, True
    if len(ok_rows) != len(rows):
        from .values import matrix_from_rows

        new_rows = matrix_from_rows(
            [matrix_1d(r, False) for r in ok_rows])
        return Call("table", (c.args[0], MatVal(new_rows))), True
    return c, changed


# ------------------------------------------------------- redundant finds

def remove_redundant_vars(gm):
    """Find variables mentioned nowhere can take any value; fix them."""
    used = set()

    def mark(e):
        if isinstance(e, VarRef):
            used.add(e.name)
            return
        from .cse import _sub_exprs

        for s in _sub_exprs(e):
            mark(s)

    for c in gm.constraints:
        mark(c)
    if gm.objective is not None and isinstance(gm.objective[1], Expr):
        mark(gm.objective[1])
    for n in gm.branching or ():
        used.add(n)
    from .instantiate import element_names

    for f in gm.finds:
        for n in element_names(f):
            if n in gm.env.decision and n not in used:
                gm.removed_redundant.add(n)


# ------------------------------------------------------ lex decomposition

def decompose_lex(gm):
    out = []
    for c in gm.constraints:
        defs = []
        out.append(_lex_rewrite(c, gm, defs))
        out.extend(defs)
    gm.constraints = out


def _lex_rewrite(c, gm, defs):
    if isinstance(c, BinOp) and c.op in ("<lex", "<=lex"):
        return _lex_formula(c, gm, None)
    if isinstance(c, UnOp) and c.op == "!" and isinstance(c.a, BinOp) \
            and c.a.op in ("<lex", "<=lex"):
        swapped = BinOp("<=lex" if c.a.op == "<lex" else "<lex",
                        c.a.b, c.a.a)
        return _lex_formula(swapped, gm, None)
    return _rewrite_nested_lex(c, gm, defs)


def _rewrite_nested_lex(e, gm, defs):
    if isinstance(e, BinOp) and e.op in ("<lex", "<=lex"):
        return _lex_formula(e, gm, defs)
    if isinstance(e, UnOp):
        inner = e.a
        if isinstance(inner, BinOp) and inner.op in ("<lex", "<=lex") \
                and e.op == "!":
            return _lex_formula(BinOp("<=lex" if inner.op == "<lex"
                                      else "<lex", inner.b, inner.a),
                                gm, defs)
        return UnOp(e.op, _rewrite_nested_lex(inner, gm, defs))
    if isinstance(e, (And, Or)):
        return type(e)(tuple(_rewrite_nested_lex(x, gm, defs)
                             for x in e.args))
    if isinstance(e, BinOp) and isinstance(e.b, Expr):
        return BinOp(e.op, _rewrite_nested_lex(e.a, gm, defs),
                     _rewrite_nested_lex(e.b, gm, defs))
    return e


def _lex_formula(c, gm, defs):
    """Clause-ladder decomposition of a lexicographic comparison.

    The ladder introduces functional aux definitions.  At the top level
    they join the returned conjunction; for a nested occurrence they must
    hold unconditionally, so they go out through `defs` and only the
    value chain substitutes in place.
    """
    env = gm.env
    xs = [_lift(x) for x in c.a.m.elems]
    ys = [_lift(y) for y in c.b.m.elems]
    n = min(len(xs), len(ys))
    strict_tail = c.op == "<lex" and len(xs) >= len(ys)
    if c.op == "<=lex" and len(xs) > len(ys):
        strict_tail = True
    if n == 0:
        return BoolLit(not strict_tail)
    diffs = [simplify_expr(BinOp("!=", xs[i], ys[i]), env) for i in range(n)]
    les = [simplify_expr(BinOp("<=", xs[i], ys[i]), env) for i in range(n)]
    parts = []
    if n < 3:
        for i in range(n):
            parts.append(Or(tuple(diffs[:i]) + (les[i],)))
        if strict_tail:
            parts.append(Or(tuple(diffs)))
    else:
        prev = None
        for i in range(n):
            if prev is None:
                parts.append(les[i])
            else:
                parts.append(Or((VarRef(prev), les[i])))
            p = gm.new_aux(IntDomain.of((0, 1)), is_bool=True)
            rhs = diffs[i] if prev is None else Or((VarRef(prev), diffs[i]))
            d = BinOp("<->", VarRef(p), rhs)
            if defs is None:
                parts.append(d)
            else:
                defs.append(simplify_expr(d, env))
            prev = p
        if strict_tail:
            parts.append(VarRef(prev))
    return simplify_expr(And(tuple(parts)), env)


def _lift(x):
    if isinstance(x, Expr):
        return x
    if isinstance(x, bool):
        return BoolLit(x)
    return IntLit(x)


# -------------------------------------------------- global decompositions

_ALLDIFF_VAL_CAP = 1000


def decompose_globals(gm):
    """Rewrite counting globals into sums of value indicators, so the
    flattener's boolean-cardinality forms (and the selected at-most-one
    scheme) apply to them."""
    out = []
    for c in gm.constraints:
        if isinstance(c, Call) and c.func in _GLOBALS:
            out.extend(_global_formulas(c, gm.env))
        else:
            out.append(_rw_nested_globals(c, gm.env))
    gm.constraints = [c for c in out if not _is_true(c)]
    for c in gm.constraints:
        if isinstance(c, BoolLit) and not c.value:
            gm.unsat = True


def _is_true(c):
    return isinstance(c, BoolLit) and c.value


_GLOBALS = ("allDiff", "alldifferent_except", "atmost", "atleast", "gcc")


def _rw_nested_globals(e, env):
    if isinstance(e, Call) and e.func in _GLOBALS:
        parts = tuple(_global_formulas(e, env))
        return simplify_expr(And(parts), env) if parts else BoolLit(True)
    if isinstance(e, UnOp):
        return UnOp(e.op, _rw_nested_globals(e.a, env))
    if isinstance(e, (And, Or)):
        return type(e)(tuple(_rw_nested_globals(x, env) for x in e.args))
    if isinstance(e, BinOp) and isinstance(e.b, Expr):
        return BinOp(e.op, _rw_nested_globals(e.a, env),
                     _rw_nested_globals(e.b, env))
    return e


def _global_formulas(c, env):
    scope = [_lift(x) for x in c.args[0].m.elems]
    if c.func == "allDiff":
        return _alldiff_formulas(scope, env, None)
    if c.func == "alldifferent_except":
        return _alldiff_formulas(scope, env, _as_int(c.args[1]))
    if c.func in ("atmost", "atleast"):
        occs = [_as_int(v) for v in c.args[1].m.elems]
        vals = [_as_int(v) for v in c.args[2].m.elems]
        lo = c.func == "atleast"
        return [_count_cmp(scope, v, o, lo, env)
                for o, v in zip(occs, vals)]
    occs = [_lift(x) for x in c.args[2].m.elems]
    vals = [_as_int(v) for v in c.args[1].m.elems]
    return [_gcc_cmp(scope, v, o, env) for v, o in zip(vals, occs)]


def _as_int(x):
    return x.value if isinstance(x, IntLit) else int(x)


def _may_take(x, v, env):
    if isinstance(x, IntLit):
        return x.value == v
    if isinstance(x, BoolLit):
        return int(x.value) == v
    if isinstance(x, VarRef):
        vi = env.decision[x.name]
        return vi.domain.contains(v)
    from .ranges import expr_range
    lo, hi = expr_range(x, env)
    return lo <= v <= hi


def _const_val(x):
    if isinstance(x, IntLit):
        return x.value
    if isinstance(x, BoolLit):
        return int(x.value)
    return None


def _ind(x, v, env):
    return simplify_expr(BinOp("=", x, IntLit(v)), env)


def _split_scope(scope, v, env):
    """(indicator contribs, number of constants fixed at v)."""
    contribs = []
    base = 0
    for x in scope:
        cv = _const_val(x)
        if cv is not None:
            base += cv == v
        elif _may_take(x, v, env):
            contribs.append((1, _ind(x, v, env)))
    return contribs, base


def _count_cmp(scope, v, occ, at_least, env):
    contribs, base = _split_scope(scope, v, env)
    if not contribs:
        return BoolLit(base >= occ if at_least else base <= occ)
    if at_least:
        return make_lincmp("<=", [(-c, x) for c, x in contribs],
                           -(occ - base), env)
    return make_lincmp("<=", contribs, occ - base, env)


def _gcc_cmp(scope, v, occ, env):
    contribs, base = _split_scope(scope, v, env)
    cv = _const_val(occ)
    if cv is not None:
        if not contribs:
            return BoolLit(base == cv)
        return make_lincmp("=", contribs, cv - base, env)
    return make_lincmp("=", contribs + [(-1, occ)], -base, env)


def _cand_values(x, env):
    cv = _const_val(x)
    if cv is not None:
        return (cv,)
    if isinstance(x, VarRef):
        vi = env.decision[x.name]
        if vi.is_bool:
            return (0, 1)
        return tuple(vi.domain.values())
    from .evaluator import type_of
    if type_of(x, env) == "bool":
        return (0, 1)
    from .ranges import expr_range
    lo, hi = expr_range(x, env)
    if hi - lo >= _ALLDIFF_VAL_CAP:
        return None
    return tuple(range(lo, hi + 1))


def _alldiff_formulas(scope, env, exclude):
    cand = []
    total = set()
    for x in scope:
        vs = _cand_values(x, env)
        if vs is None:
            return _alldiff_pairwise(scope, env, exclude)
        cand.append(vs)
        total.update(vs)
        if len(total) > _ALLDIFF_VAL_CAP:
            return _alldiff_pairwise(scope, env, exclude)
    perm = exclude is None and len(scope) == len(total)
    out = []
    for v in sorted(total):
        if exclude is not None and v == exclude:
            continue
        contribs, base = _split_scope(
            [x for x, vs in zip(scope, cand) if v in vs], v, env)
        if base > 1:
            return [BoolLit(False)]
        if not contribs:
            continue
        out.append(make_lincmp("=" if perm else "<=", contribs,
                               1 - base, env))
    return out


def _alldiff_pairwise(scope, env, exclude):
    out = []
    for i in range(len(scope)):
        for j in range(i + 1, len(scope)):
            d = BinOp("!=", scope[i], scope[j])
            if exclude is not None:
                d = Or((d, BinOp("=", scope[i], IntLit(exclude))))
            out.append(simplify_expr(d, env))
    return out
