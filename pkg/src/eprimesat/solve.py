"""Running the SAT backend: decoding, enumeration, and optimisation."""

from __future__ import annotations

import time

from .ast_nodes import Expr
from .errors import SolverOutputError
from .external import run_external
from .instantiate import element_names
from .solver import Solver


class SolveStats:
    def __init__(self):
        self.nodes = 0
        self.solver_time = 0.0
        self.sat_calls = 0
        self.solutions = 0
        self.satisfiable = None
        self.unknown = False
        self.diagnostics = ""


class Session:
    """One instance being solved, over the built-in solver or an
    external binary re-invoked on an amended CNF file."""

    def __init__(self, tailored, cfg, dimacs_path=None):
        self.t = tailored
        self.cfg = cfg
        self.dimacs_path = dimacs_path
        self.stats = SolveStats()
        self.extra = []  # clauses added after tailoring (blocking/bounds)
        self._dirty = False  # amended file needs rewriting
        self.external = cfg.satsolver_bin is not None
        if not self.external:
            s = Solver()
            s.ensure_vars(self.t.cnf.nvars)
            self._feed_ok = all(s.add_clause(list(cl))
                                for cl in self.t.cnf.clauses)
            self.solver = s

    # ---------------------------------------------------------- backends

    def add_clause(self, lits):
        self.extra.append(tuple(lits))
        if self.external:
            self._dirty = True
        else:
            if not self.solver.add_clause(list(lits)):
                self._feed_ok = False

    def solve(self, assumptions=()):
        """-> value callable (signed lit -> bool) when SAT, else None."""
        self.stats.sat_calls += 1
        if self.external:
            return self._solve_external(assumptions)
        t0 = time.monotonic()
        n0 = self.solver.decisions
        ok = self._feed_ok and self.solver.solve(tuple(assumptions))
        self.stats.solver_time += time.monotonic() - t0
        self.stats.nodes += self.solver.decisions - n0
        if not ok:
            return None
        # snapshot: the solver's model is overwritten by the next call
        s = self.solver
        snap = [False] + [s.model_value(v)
                          for v in range(1, self.t.cnf.nvars + 1)]
        return lambda lit: snap[abs(lit)] != (lit < 0)

    def _solve_external(self, assumptions):
        cnf = self.t.cnf
        path = self.dimacs_path
        if self._dirty or assumptions:
            extra = list(self.extra) + [(l,) for l in assumptions]
            with open(path, "w") as f:
                f.write(f"p cnf {cnf.nvars} "
                        f"{len(cnf.clauses) + len(extra)}\n")
                for cl in cnf.clauses:
                    f.write(" ".join(map(str, cl)) + " 0\n")
                for cl in extra:
                    f.write(" ".join(map(str, cl)) + " 0\n")
            self._dirty = bool(assumptions)  # restore before the next call
        status, model, elapsed, diag = run_external(
            self.cfg.satsolver_bin, path, self.cfg.solver_options)
        self.stats.solver_time += elapsed
        if status == "UNKNOWN":
            self.stats.unknown = True
            self.stats.diagnostics = diag
            raise SolverOutputError(
                f"external solver produced no recognisable result: {diag}")
        if status == "UNSAT":
            return None
        return lambda lit: model.get(abs(lit), abs(lit) == 1) != (lit < 0)

    # ---------------------------------------------------------- decoding

    def atom_value(self, name, val):
        gm = self.t.gm
        seen = set()
        while name in gm.deleted:
            if name in seen:
                raise SolverOutputError(f"cyclic unification on {name}")
            seen.add(name)
            kind, payload = gm.deleted[name]
            if kind == "const":
                return payload
            name = payload
        if name in gm.removed_redundant:
            return next(iter(gm.env.decision[name].domain.values()))
        return self.t.encoder.enc[name].decode(val)

    def decode(self, val):
        out = {}
        for f in self.t.gm.finds:
            for n in element_names(f):
                out[n] = self.atom_value(n, val)
        return out

    def objective_value(self, val):
        obj = self.t.gm.objective
        if obj is None:
            return None
        if not isinstance(obj[1], Expr):
            return obj[1]
        return self.t.encoder.obj_enc.decode(val)

    # ------------------------------------------------------- enumeration

    def _blocking_scope(self):
        gm = self.t.gm
        names = gm.branching if gm.branching is not None \
            else gm.live_find_vars()
        return [n for n in names if n in self.t.encoder.enc]

    def enumerate(self, limit=None):
        """Yield decoded solutions; blocks each one on the distinctness
        scope (branching-on variables when given, else the find
        variables)."""
        scope = self._blocking_scope()
        enc = self.t.encoder.enc
        while True:
            val = self.solve()
            if val is None:
                if self.stats.satisfiable is None:
                    self.stats.satisfiable = False
                return
            self.stats.satisfiable = True
            self.stats.solutions += 1
            yield self.decode(val)
            if limit is not None and self.stats.solutions >= limit:
                return
            block = []
            for n in scope:
                block.extend(enc[n].neq_lits(enc[n].decode(val)))
            if not block:
                return  # nothing can differ: the single scope assignment
            self.add_clause(block)

    # ------------------------------------------------------ optimisation

    def optimize(self):
        """-> (solution dict, objective value) or (None, None)."""
        minimise, obj = self.t.gm.objective
        val = self.solve()
        if val is None:
            self.stats.satisfiable = False
            return None, None
        self.stats.satisfiable = True
        if not isinstance(obj, Expr):
            self.stats.solutions += 1
            return self.decode(val), obj
        enc = self.t.encoder.obj_enc
        strategy = self.cfg.opt_strategy
        if strategy == "linear":
            val = self._opt_linear(enc, minimise, val)
        elif strategy == "unsat":
            val = self._opt_unsat(enc, minimise, val)
        else:
            val = self._opt_bisect(enc, minimise, val)
        self.stats.solutions += 1
        return self.decode(val), enc.decode(val)

    def _opt_bisect(self, enc, minimise, val):
        best = enc.decode(val)
        if minimise:
            lo, hi = enc.values[0], best
            while lo < hi:
                mid = (lo + hi) // 2
                v2 = self.solve((enc.le_lit(mid),))
                if v2 is None:
                    lo = mid + 1
                else:
                    val = v2
                    hi = enc.decode(v2)
        else:
            lo, hi = best, enc.values[-1]
            while lo < hi:
                mid = (lo + hi + 1) // 2
                v2 = self.solve((-enc.le_lit(mid - 1),))
                if v2 is None:
                    hi = mid - 1
                else:
                    val = v2
                    lo = enc.decode(v2)
        return val

    def _opt_linear(self, enc, minimise, val):
        FALSE = self.t.cnf.FALSE
        while True:
            best = enc.decode(val)
            lit = enc.le_lit(best - 1) if minimise else -enc.le_lit(best)
            if lit == FALSE:
                return val  # already at the end of the domain
            self.add_clause((lit,))
            v2 = self.solve()
            if v2 is None:
                return val
            val = v2

    def _opt_unsat(self, enc, minimise, val):
        best = enc.decode(val)
        order = [v for v in enc.values if (v < best if minimise
                                           else v > best)]
        if not minimise:
            order.reverse()
        for v in order:
            assume = [l for l in (enc.le_lit(v), -enc.le_lit(v - 1))
                      if l != self.t.cnf.TRUE]
            v2 = self.solve(tuple(assume))
            if v2 is not None:
                return v2
        return val


# ------------------------------------------------------- solution output

def format_value(v, is_bool):
    if is_bool:
        return "true" if v else "false"
    return str(v)


def format_solution(gm, values):
    lines = []
    for f in gm.finds:
        if f.kind == "scalar":
            body = format_value(values[f.name], f.is_bool)
        else:
            names = iter(element_names(f))
            body = _nest(f.index_doms, names, values, f.is_bool)
        lines.append(f"letting {f.name} = {body}")
    return "\n".join(lines) + "\n"


def _nest(index_doms, names, values, is_bool):
    if not index_doms:
        return format_value(values[next(names)], is_bool)
    parts = [_nest(index_doms[1:], names, values, is_bool)
             for _ in index_doms[0].values()]
    sep = "," if len(index_doms) == 1 else ", "
    return "[" + sep.join(parts) + "]"
