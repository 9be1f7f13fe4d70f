"""Shared pipeline shorthands for the test suite."""
from eprimesat.config import RunConfig
from eprimesat.driver import tailor
from eprimesat.solve import Session

HDR = "language ESSENCE' 1.0\n"


def run(model, params=(), **kw):
    cfg = RunConfig(model_path="m.eprime", **kw)
    return tailor(model, list(params), cfg), cfg


def session(model, params=(), **kw):
    t, cfg = run(model, params, **kw)
    return Session(t, cfg)


def solutions(model, params=(), **kw):
    t, cfg = run(model, params, **kw)
    if t.unsat_at_tailoring:
        return []
    return list(Session(t, cfg).enumerate())


def count(model, params=(), **kw):
    return len(solutions(model, params, **kw))


def best(model, strategy="bisect", **kw):
    """-> optimal objective value, or None when unsatisfiable."""
    t, cfg = run(model, opt_strategy=strategy, **kw)
    if t.unsat_at_tailoring:
        return None
    sol, val = Session(t, cfg).optimize()
    return val if sol is not None else None
