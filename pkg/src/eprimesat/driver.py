"""Tailoring pipeline: model + parameters -> ground model -> CNF."""

from __future__ import annotations

import time

from .ast_nodes import Expr
from .cnf import Cnf
from .cse import ac_cse, active_cse
from .encode import Encoder
from .errors import TailorTimeoutError
from .instantiate import ground_model
from .parser import parse_model_text, parse_param_text
from .simplify import simplify_model
from .transform import (aggregate, decompose_globals, decompose_lex,
                        delete_vars, filter_domains, remove_redundant_vars)
from .undef import apply_undef

_MAX_RESTARTS = 20


class Tailored:
    """Result of tailoring one instance."""

    def __init__(self, gm, cnf, encoder, tailor_time):
        self.gm = gm
        self.cnf = cnf
        self.encoder = encoder
        self.tailor_time = tailor_time

    @property
    def unsat_at_tailoring(self):
        return self.gm.unsat


def tailor(model_text, param_texts, cfg):
    """Run the full pipeline. param_texts is a sequence of parameter
    sources (files and/or a -params string), applied in order."""
    t0 = time.monotonic()
    deadline = None
    if cfg.timelimit is not None:
        deadline = t0 + cfg.timelimit

    def check_time():
        if deadline is not None and time.monotonic() > deadline:
            raise TailorTimeoutError(
                f"tailoring exceeded the time limit of {cfg.timelimit}s")

    model = parse_model_text(model_text)
    stmts = []
    for text in param_texts:
        stmts.extend(parse_param_text(text))
    gm = ground_model(model, stmts)
    check_time()

    apply_undef(gm)
    simplify_model(gm)
    check_time()

    for _ in range(_MAX_RESTARTS):
        if gm.unsat:
            break
        if cfg.eff_ac:
            ac_cse(gm, cfg.eff_ac_negated)
            check_time()
        if cfg.eff_active:
            active_cse(gm)
            simplify_model(gm)
        if cfg.eff_deletevars:
            delete_vars(gm)
        if cfg.eff_aggregate:
            aggregate(gm)
        check_time()
        if cfg.eff_filter and not gm.unsat and filter_domains(gm):
            simplify_model(gm)  # domains shrank: run the passes again
            continue
        break

    if not gm.unsat:
        if cfg.eff_remove_redundant:
            remove_redundant_vars(gm)
        decompose_lex(gm)
        decompose_globals(gm)
        simplify_model(gm)
        check_time()

    cnf = Cnf(clause_limit=cfg.cnflimit)
    encoder = Encoder(gm, cnf, cfg.amo_scheme, cfg.full_reify)
    if gm.unsat:
        cnf.comment("unsatisfiable at tailoring")
        cnf.add_clause(())
    else:
        obj = gm.objective[1] if gm.objective is not None else None
        encoder.allocate_vars(obj if isinstance(obj, Expr) else None)
        encoder.encode_model()
        check_time()
    return Tailored(gm, cnf, encoder, time.monotonic() - t0)
