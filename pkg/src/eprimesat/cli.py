"""Command-line front end.

Flags are single-dash words in the tradition of the constraint-modelling
tools this interoperates with; the rightmost -O / -S level wins.
"""

from __future__ import annotations

import os
import sys

from .config import RunConfig
from .driver import tailor
from .errors import EPrimeError
from .instantiate import element_names
from .solve import Session, format_solution

USAGE = """\
usage: eprimesat [flags] <model.eprime> [<instance.param>]

inputs
  -in-eprime FILE       model file (extension .eprime may be omitted)
  -in-param FILE        parameter file (.param / .eprime-param)
  -params "TEXT"        parameter lettings given inline

outputs (defaults derive from the parameter file name, else the model)
  -out-sat FILE         DIMACS file            [<instance>.dimacs]
  -out-solution FILE    solution file          [<instance>.solution]
  -out-info FILE        statistics file        [<instance>.info]
  -out-aux FILE         symbol table           [<instance>.aux]
  -save-symbols         write the symbol table

tailoring
  -O0 .. -O3            optimisation preset (default -O1; rightmost wins)
  -S0 | -S1             -S0 preserves the number of solutions (default -S1)
  -no-cse -identical-cse -active-cse -ac-cse -active-ac-cse
  -deletevars -aggregate -reduce-domains -reduce-domains-extend
  -remove-redundant-vars -aux-non-functional
  -sat-amo-product | -sat-amo-commander | -sat-amo-ladder | -sat-amo-tree
  -cnflimit N           abort once the clause count reaches N
  -timelimit N          wall-clock seconds for tailoring

solving
  -sat                  select the SAT backend (the only backend; default)
  -run-solver           run the solver after writing the DIMACS file
  -all-solutions        enumerate all solutions (numbered solution files)
  -num-solutions N      stop after N solutions
  -solutions-to-stdout  print solutions instead of writing files
  -solutions-to-null    do not output solutions at all
  -opt-strategy S       bisect | linear | unsat   (default bisect)
  -satsolver-bin FILE   external solver binary (else built-in solver)
  -solver-options "S"   extra options for the external solver
  -sat-family NAME      output convention family; nbc_*/bc_* imply
                        -all-solutions
  -seed N               accepted for interface compatibility
  -mode Normal          the only supported mode
"""

_UNSUPPORTED = {
    "-minion": "the Minion backend is not part of this tool",
    "-gecode": "the Gecode backend is not part of this tool",
    "-chuffed": "the Chuffed backend is not part of this tool",
    "-flatzinc": "FlatZinc output is not part of this tool",
    "-minizinc": "MiniZinc output is not part of this tool",
    "-smt": "SMT output is not part of this tool",
    "-maxsat": "MaxSAT output is not part of this tool",
    "-dominion": "Dominion output is not part of this tool",
    "-boolector": "SMT backends are not part of this tool",
    "-z3": "SMT backends are not part of this tool",
    "-yices": "SMT backends are not part of this tool",
    "-S2": "-S2 is unsupported in this implementation",
    "-var-sym-breaking": "automatic symmetry breaking is unsupported in "
                         "this implementation",
    "-tabulate": "tabulation is unsupported in this implementation",
    "-factor-encoding": "the factor encoding is unsupported in this "
                        "implementation",
    "-interactive-sat": "interactive solving is unsupported in this "
                        "implementation",
    "-amo-detect": "AMO detection is unsupported in this implementation",
    "-sat-table-mdd": "MDD tables are unsupported in this implementation",
}
for _enc in ("mdd", "gpw", "swc", "ggt", "rggt", "ggth"):
    _UNSUPPORTED[f"-sat-pb-{_enc}"] = \
        f"the {_enc} PB encoding is unsupported in this implementation"
    _UNSUPPORTED[f"-sat-sum-{_enc}"] = \
        f"the {_enc} sum encoding is unsupported in this implementation"

_CSE_FLAGS = {
    "-no-cse": "none",
    "-identical-cse": "identical",
    "-active-cse": "active",
    "-ac-cse": "ac",
    "-active-ac-cse": "active-ac",
}

_TOGGLES = {
    "-deletevars": "deletevars",
    "-aggregate": "aggregate",
    "-reduce-domains": "reduce_domains",
    "-reduce-domains-extend": "reduce_domains_extend",
    "-remove-redundant-vars": "remove_redundant",
    "-aux-non-functional": "aux_non_functional",
}


class UsageError(EPrimeError):
    pass


def parse_args(argv):
    cfg = RunConfig()
    params = cfg.param_paths
    i = 0

    def arg_of(flag):
        nonlocal i
        i += 1
        if i >= len(argv):
            raise UsageError(f"{flag} needs an argument")
        return argv[i]

    def int_of(flag):
        raw = arg_of(flag)
        try:
            return int(raw)
        except ValueError:
            raise UsageError(f"{flag} needs an integer, got {raw!r}")

    while i < len(argv):
        a = argv[i]
        if a in ("-help", "--help", "-h"):
            raise _HelpRequested()
        if not a.startswith("-"):
            _classify_input(a, cfg, params)
        elif a in _UNSUPPORTED:
            raise UsageError(f"{a}: {_UNSUPPORTED[a]}")
        elif len(a) == 3 and a[1] == "O" and a[2].isdigit():
            lvl = int(a[2])
            if lvl > 3:
                raise UsageError(f"unknown optimisation level {a}")
            cfg.opt_level = lvl
        elif len(a) == 3 and a[1] == "S" and a[2].isdigit():
            lvl = int(a[2])
            if lvl > 1:
                raise UsageError(f"{a}: only -S0 and -S1 are supported")
            cfg.sat_level = lvl
        elif a in _CSE_FLAGS:
            cfg.cse_mode = _CSE_FLAGS[a]
        elif a in _TOGGLES:
            setattr(cfg, _TOGGLES[a], True)
        elif a.startswith("-sat-amo-"):
            scheme = a[len("-sat-amo-"):]
            if scheme not in ("product", "commander", "ladder", "tree"):
                raise UsageError(f"unknown at-most-one scheme {a}")
            cfg.amo_scheme = scheme
        elif a in ("-sat-pb-tree", "-sat-sum-tree"):
            pass  # the tree encoding is the one implemented
        elif a == "-sat":
            pass  # SAT is the only backend
        elif a == "-in-eprime":
            _set_model(arg_of(a), cfg)
        elif a == "-in-param":
            params.append(arg_of(a))
        elif a == "-params":
            cfg.inline_params = arg_of(a)
        elif a == "-out-sat":
            cfg.out_sat = arg_of(a)
        elif a == "-out-solution":
            cfg.out_solution = arg_of(a)
        elif a == "-out-info":
            cfg.out_info = arg_of(a)
        elif a == "-out-aux":
            cfg.out_aux = arg_of(a)
        elif a == "-save-symbols":
            cfg.save_symbols = True
        elif a == "-run-solver":
            cfg.run_solver = True
        elif a == "-all-solutions":
            cfg.all_solutions = True
        elif a == "-num-solutions":
            cfg.num_solutions = int_of(a)
            if cfg.num_solutions < 1:
                raise UsageError("-num-solutions needs a positive count")
        elif a == "-solutions-to-stdout":
            cfg.solutions_to_stdout = True
        elif a == "-solutions-to-null":
            cfg.solutions_to_null = True
        elif a == "-opt-strategy":
            s = arg_of(a)
            if s not in ("bisect", "linear", "unsat"):
                raise UsageError(f"unknown optimisation strategy {s!r}")
            cfg.opt_strategy = s
        elif a == "-timelimit":
            cfg.timelimit = float(int_of(a))
        elif a == "-cnflimit":
            cfg.cnflimit = int_of(a)
        elif a == "-seed":
            cfg.seed = int_of(a)
        elif a == "-satsolver-bin":
            cfg.satsolver_bin = arg_of(a)
        elif a == "-solver-options":
            cfg.solver_options = arg_of(a)
        elif a == "-sat-family":
            fam = arg_of(a)
            cfg.sat_family = fam
            if fam.startswith(("nbc_", "bc_")):
                cfg.all_solutions = True
        elif a == "-mode":
            mode = arg_of(a)
            if mode != "Normal":
                raise UsageError(f"-mode {mode} is unsupported in this "
                                 "implementation")
        else:
            raise UsageError(f"unknown flag {a} (see -help)")
        i += 1

    if cfg.model_path is None:
        raise UsageError("no model file given (see -help)")
    if cfg.all_solutions and cfg.num_solutions is not None:
        raise UsageError("-all-solutions and -num-solutions are mutually "
                         "exclusive")
    return cfg


class _HelpRequested(Exception):
    pass


def _set_model(path, cfg):
    if cfg.model_path is not None:
        raise UsageError(f"two model files given: {cfg.model_path} "
                         f"and {path}")
    cfg.model_path = path


def _classify_input(path, cfg, params):
    if path.endswith(".eprime"):
        _set_model(path, cfg)
    elif path.endswith((".param", ".eprime-param")):
        params.append(path)
    elif cfg.model_path is None:
        _set_model(path, cfg)
    else:
        params.append(path)


def derive_paths(cfg):
    base = cfg.param_paths[0] if cfg.param_paths else cfg.model_path
    return {
        "sat": cfg.out_sat or base + ".dimacs",
        "solution": cfg.out_solution or base + ".solution",
        "info": cfg.out_info or base + ".info",
        "aux": cfg.out_aux or base + ".aux",
    }


def write_aux(path, tl):
    gm = tl.gm
    find_atoms = set()
    for f in gm.finds:
        find_atoms.update(element_names(f))
    with open(path, "w") as f:
        f.write("eprimesat-aux 1\n")
        for name in gm.var_order:
            kind = "find" if name in find_atoms else "aux"
            if name in gm.deleted:
                what, payload = gm.deleted[name]
                f.write(f"{name} {kind} deleted {what}={payload}\n")
                continue
            if name in gm.removed_redundant:
                f.write(f"{name} {kind} removed\n")
                continue
            vi = gm.env.decision.get(name)
            if vi is None:
                continue
            enc = tl.encoder.enc.get(name)
            ids = "none"
            if enc is not None:
                parts = []
                if enc.two is not None:
                    parts.append(f"two={enc.two}")
                if enc.order is not None:
                    parts.append("order=" + ",".join(map(str, enc.order)))
                if enc.direct is not None:
                    parts.append("direct=" + ",".join(map(str, enc.direct)))
                ids = " ".join(parts) if parts else "const"
            f.write(f"{name} {kind} {vi.domain} {ids}\n")


def write_info(path, entries):
    with open(path, "w") as f:
        for k, v in entries.items():
            f.write(f"{k}:{v}\n")


class _SolutionSink:
    def __init__(self, cfg, paths, numbered):
        self.cfg = cfg
        self.paths = paths
        self.numbered = numbered
        self.count = 0

    def emit(self, gm, values):
        self.count += 1
        if self.cfg.solutions_to_null:
            return
        text = format_solution(gm, values)
        if self.cfg.solutions_to_stdout:
            if self.count > 1:
                sys.stdout.write("-" * 10 + "\n")
            sys.stdout.write(text)
            return
        path = self.paths["solution"]
        if self.numbered:
            path = f"{path}.{self.count:06d}"
        with open(path, "w") as f:
            f.write(text)


def main(argv=None):
    if argv is None:
        argv = sys.argv[1:]
    try:
        cfg = parse_args(argv)
    except _HelpRequested:
        sys.stdout.write(USAGE)
        return 0
    except EPrimeError as e:
        sys.stderr.write(f"ERROR: {e}\n")
        return 1
    try:
        return _run(cfg)
    except EPrimeError as e:
        sys.stderr.write(f"ERROR: {e}\n")
        return 1
    except OSError as e:
        sys.stderr.write(f"ERROR: {e}\n")
        return 1


def _run(cfg):
    paths = derive_paths(cfg)
    try:
        with open(cfg.model_path) as f:
            model_text = f.read()
    except OSError:
        raise EPrimeError(f"cannot read model file {cfg.model_path!r}")
    param_texts = []
    for p in cfg.param_paths:
        try:
            with open(p) as f:
                param_texts.append(f.read())
        except OSError:
            raise EPrimeError(f"cannot read parameter file {p!r}")
    if cfg.inline_params:
        param_texts.append(cfg.inline_params)

    tl = tailor(model_text, param_texts, cfg)
    gm = tl.gm
    for w in gm.warnings:
        sys.stderr.write(f"WARNING: {w}\n")
    tl.cnf.write_dimacs(paths["sat"])
    if cfg.save_symbols:
        write_aux(paths["aux"], tl)

    info = {}
    if cfg.run_solver:
        enumerating = cfg.all_solutions or cfg.num_solutions is not None
        if enumerating and gm.objective is not None:
            raise UsageError("solution enumeration cannot be combined "
                             "with an objective")
        sess = Session(tl, cfg, paths["sat"])
        sink = _SolutionSink(cfg, paths, numbered=enumerating)
        if enumerating:
            for values in sess.enumerate(cfg.num_solutions):
                sink.emit(gm, values)
        elif gm.objective is not None:
            values, best = sess.optimize()
            if values is not None:
                sink.emit(gm, values)
        else:
            val = sess.solve()
            sess.stats.satisfiable = val is not None
            if val is not None:
                sess.stats.solutions = 1
                sink.emit(gm, sess.decode(val))
        info["SolverNodes"] = sess.stats.nodes
        info["SolverSatisfiable"] = int(bool(sess.stats.satisfiable))
        info["SolverSolutionsFound"] = sess.stats.solutions
    info["TailorTime"] = f"{tl.tailor_time:.3f}"
    if cfg.run_solver:
        info["SolverTime"] = f"{sess.stats.solver_time:.3f}"
    if gm.removed_redundant:
        info["RemovedRedundantVars"] = len(gm.removed_redundant)
    write_info(paths["info"], info)
    return 0
