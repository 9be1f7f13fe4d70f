"""Grounding: bind parameters, expand lettings, unroll, register decisions.

The result is a GroundModel: a flat list of residual boolean constraints over
scalar decision atoms (VarRef), one VarInfo per atom (matrix finds become one
atom per element, named like M[2,3] with the original index values), plus the
objective and the distinctness scope for solution enumeration.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .ast_nodes import (BranchingStmt, Expr, FindStmt, GivenStmt,
                        HeuristicStmt, LettingDomStmt, LettingStmt, MatVal,
                        MatrixLit, Model, ObjectiveStmt, SuchThatStmt,
                        VarRef, WhereStmt)
from .domains import IntDomain
from .errors import InstanceError, ModelError
from .evaluator import (Env, VarInfo, UNDEF, as_bool, as_int, eval_const,
                        normalize_domain, partial_eval, type_of)
from .values import Matrix, is_const


@dataclass
class FindDecl:
    name: str
    kind: str  # 'scalar' | 'matrix'
    is_bool: bool
    domain: object  # IntDomain for scalars
    index_doms: tuple = ()  # for matrices
    base: object = None  # IntDomain for matrices


@dataclass
class GroundModel:
    env: Env
    var_order: list = field(default_factory=list)  # declaration order
    finds: list = field(default_factory=list)  # list[FindDecl]
    constraints: list = field(default_factory=list)  # residual boolean Exprs
    objective: object = None  # (minimise: bool, Expr | int) or None
    branching: object = None  # list[str] | None
    unsat: bool = False
    warnings: list = field(default_factory=list)
    deleted: dict = field(default_factory=dict)  # name -> ('const',v)|('alias',n)
    removed_redundant: set = field(default_factory=set)
    aux_counter: int = 0
    warn_undef: bool = False

    def var(self, name) -> VarInfo:
        return self.env.decision[name]

    def new_aux(self, domain: IntDomain, is_bool=False) -> str:
        while True:
            name = f"aux{self.aux_counter}"
            self.aux_counter += 1
            if name not in self.env.decision and name not in self.env.values:
                break
        self.env.decision[name] = VarInfo(name, domain, is_bool)
        self.var_order.append(name)
        return name

    def live_find_vars(self):
        """Find-origin atoms that still exist (not deleted/removed)."""
        out = []
        for f in self.finds:
            for n in element_names(f):
                if n not in self.deleted and n not in self.removed_redundant:
                    out.append(n)
        return out


def element_names(f: FindDecl):
    if f.kind == "scalar":
        return [f.name]
    out = []
    idx_vals = [tuple(d.values()) for d in f.index_doms]
    for combo in itertools.product(*idx_vals):
        out.append(f"{f.name}[{','.join(map(str, combo))}]")
    return out


def ground_model(model: Model, param_stmts=()) -> GroundModel:
    gm = GroundModel(env=Env())
    env = gm.env
    param_names = set()
    for s in param_stmts:
        _do_letting(s, env, gm, param_names)
    given_names = set()
    seen_objective = False
    for stmt in model.statements:
        if isinstance(stmt, (LettingStmt, LettingDomStmt, GivenStmt,
                             FindStmt, WhereStmt)) and seen_objective:
            raise ModelError("declarations must appear before the objective",
                             *(stmt.pos or (None, None)))
        if isinstance(stmt, GivenStmt):
            kind, payload = normalize_domain(stmt.dom, env)
            for name in stmt.names:
                _check_fresh(name, env, stmt)
                if name in given_names:
                    raise ModelError(f"duplicate declaration of {name!r}",
                                     *(stmt.pos or (None, None)))
                if name not in env.values:
                    raise InstanceError(
                        f"no value given for parameter {name!r}",
                        *(stmt.pos or (None, None)))
                env.values[name] = _conform(env.values[name], kind, payload,
                                            name, stmt)
                given_names.add(name)
        elif isinstance(stmt, LettingDomStmt):
            _check_fresh(stmt.name, env, stmt)
            env.domains[stmt.name] = normalize_domain(stmt.dom, env)
        elif isinstance(stmt, LettingStmt):
            _do_letting(stmt, env, gm, set())
        elif isinstance(stmt, WhereStmt):
            v = eval_const(stmt.expr, env, "where clause")
            if v is UNDEF or not as_bool(v):
                raise InstanceError("where clause is false for this instance",
                                    *(stmt.pos or (None, None)))
        elif isinstance(stmt, FindStmt):
            kind, payload = normalize_domain(stmt.dom, env)
            for name in stmt.names:
                _check_fresh(name, env, stmt)
                _register_find(gm, name, kind, payload, stmt)
        elif isinstance(stmt, ObjectiveStmt):
            if seen_objective:
                raise ModelError("more than one objective",
                                 *(stmt.pos or (None, None)))
            seen_objective = True
            v = partial_eval(stmt.expr, env)
            if v is UNDEF:
                raise InstanceError("objective is undefined",
                                    *(stmt.pos or (None, None)))
            if isinstance(v, Matrix):
                raise ModelError("objective must be an integer expression",
                                 *(stmt.pos or (None, None)))
            gm.objective = (stmt.minimise, v)
        elif isinstance(stmt, BranchingStmt):
            gm.branching = _branching_vars(stmt, env)
        elif isinstance(stmt, HeuristicStmt):
            gm.warnings.append(
                f"heuristic {stmt.name!r} is accepted but ignored")
        elif isinstance(stmt, SuchThatStmt):
            for c in stmt.constraints:
                _add_constraint(gm, c, env)
        else:
            raise ModelError(f"unsupported statement {stmt!r}")
    spare = param_names - given_names
    # parameter names never declared by the model are tolerated (SR warns)
    if spare:
        gm.warnings.append(
            "parameter(s) not declared by the model: "
            + ", ".join(sorted(spare)))
    return gm


def _add_constraint(gm: GroundModel, c, env: Env):
    v = partial_eval(c, env)
    if v is UNDEF or v is False:
        gm.unsat = True
        return
    if v is True:
        return
    if not isinstance(v, Expr):
        raise ModelError("constraint is not boolean",
                         *(getattr(c, "pos", None) or (None, None)))
    if type_of(v, env) != "bool":
        raise ModelError("constraint is not boolean",
                         *(getattr(c, "pos", None) or (None, None)))
    gm.constraints.append(v)


def _do_letting(stmt, env: Env, gm: GroundModel, param_names: set):
    if isinstance(stmt, LettingDomStmt):
        _check_fresh(stmt.name, env, stmt)
        env.domains[stmt.name] = normalize_domain(stmt.dom, env)
        param_names.add(stmt.name)
        return
    _check_fresh(stmt.name, env, stmt)
    v = eval_const(stmt.expr, env, f"letting {stmt.name!r}")
    if v is UNDEF:
        raise InstanceError(f"letting {stmt.name!r} is undefined",
                            *(stmt.pos or (None, None)))
    if stmt.dom is not None:
        kind, payload = normalize_domain(stmt.dom, env)
        v = _conform(v, kind, payload, stmt.name, stmt, reindex=True)
    env.values[stmt.name] = v
    param_names.add(stmt.name)


def _check_fresh(name, env: Env, stmt):
    if name in env.decision or name in env.domains or (
            name in env.values and not isinstance(stmt, GivenStmt)):
        raise ModelError(f"duplicate declaration of {name!r}",
                         *(stmt.pos or (None, None)))
    if name in env.decision_matrices:
        raise ModelError(f"duplicate declaration of {name!r}",
                         *(stmt.pos or (None, None)))


def _conform(v, kind, payload, name, stmt, reindex=False):
    pos = stmt.pos or (None, None)
    if kind == "bool":
        if not isinstance(v, bool):
            raise InstanceError(f"{name!r} must be boolean", *pos)
        return v
    if kind == "int":
        if isinstance(v, bool) or not isinstance(v, int):
            raise InstanceError(f"{name!r} must be an integer", *pos)
        if not payload.contains(v):
            raise InstanceError(
                f"value {v} of {name!r} is outside its domain {payload}",
                *pos)
        return v
    idx_doms, base, elem_bool = payload
    if not isinstance(v, Matrix):
        raise InstanceError(f"{name!r} must be a matrix", *pos)
    if not is_const(v):
        raise ModelError(f"{name!r} must be a constant matrix", *pos)
    want = tuple(d.size() for d in idx_doms)
    if v.extents != want:
        raise InstanceError(
            f"matrix {name!r} has extents {v.extents}, expected {want}",
            *pos)
    for x in v.elems:
        if elem_bool:
            if not isinstance(x, bool):
                raise InstanceError(f"elements of {name!r} must be boolean",
                                    *pos)
        else:
            if isinstance(x, bool) or not isinstance(x, int):
                raise InstanceError(f"elements of {name!r} must be integers",
                                    *pos)
            if not base.contains(x):
                raise InstanceError(
                    f"element {x} of {name!r} is outside {base}", *pos)
    # values are stored under the declared index domains
    return Matrix(tuple(idx_doms), v.elems, elem_bool)


def _register_find(gm: GroundModel, name, kind, payload, stmt):
    pos = stmt.pos or (None, None)
    env = gm.env
    if kind == "bool":
        env.decision[name] = VarInfo(name, IntDomain.of((0, 1)), True)
        gm.var_order.append(name)
        gm.finds.append(FindDecl(name, "scalar", True, IntDomain.of((0, 1))))
        return
    if kind == "int":
        if not payload.is_finite():
            raise ModelError(f"decision variable {name!r} needs a finite "
                             "domain", *pos)
        if payload.is_empty():
            gm.unsat = True
        env.decision[name] = VarInfo(name, payload, False)
        gm.var_order.append(name)
        gm.finds.append(FindDecl(name, "scalar", False, payload))
        return
    idx_doms, base, elem_bool = payload
    if not base.is_finite() or not all(d.is_finite() for d in idx_doms):
        raise ModelError(f"decision matrix {name!r} needs finite domains",
                         *pos)
    if base.is_empty():
        gm.unsat = True
    decl = FindDecl(name, "matrix", elem_bool, None, tuple(idx_doms), base)
    gm.finds.append(decl)
    refs = []
    for ename in element_names(decl):
        env.decision[ename] = VarInfo(ename, base, elem_bool)
        gm.var_order.append(ename)
        refs.append(VarRef(ename))
    env.decision_matrices[name] = Matrix(tuple(idx_doms), tuple(refs),
                                         elem_bool)


def _branching_vars(stmt: BranchingStmt, env: Env):
    names = []
    seen = set()

    def add(v):
        if isinstance(v, VarRef):
            if v.name not in seen:
                seen.add(v.name)
                names.append(v.name)
        elif isinstance(v, Matrix):
            for x in v.elems:
                add(x)
        elif isinstance(v, MatVal):
            add(v.m)
        elif isinstance(v, Expr):
            raise ModelError("branching on entries must be decision "
                             "variables or matrices",
                             *(stmt.pos or (None, None)))
        # constants contribute nothing to the distinctness scope

    e = stmt.expr
    items = e.items if isinstance(e, MatrixLit) else (e,)
    for it in items:
        add(partial_eval(it, env))
    return names
