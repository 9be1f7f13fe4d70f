"""Run options: optimisation/encoding presets and their per-flag overrides."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class RunConfig:
    model_path: str | None = None
    param_paths: list = field(default_factory=list)
    inline_params: str | None = None

    out_sat: str | None = None
    out_solution: str | None = None
    out_info: str | None = None
    out_aux: str | None = None

    opt_level: int = 1  # -O0..-O3, rightmost wins
    sat_level: int = 1  # -S0 count-preserving, -S1 default

    # pass toggles; None defers to the -O/-S preset
    cse_mode: str | None = None  # none|identical|active|ac|active-ac
    deletevars: bool | None = None
    aggregate: bool | None = None
    reduce_domains: bool | None = None
    reduce_domains_extend: bool | None = None
    remove_redundant: bool | None = None
    aux_non_functional: bool | None = None

    amo_scheme: str = "product"  # product|commander|ladder|tree

    run_solver: bool = False
    all_solutions: bool = False
    num_solutions: int | None = None
    solutions_to_stdout: bool = False
    solutions_to_null: bool = False
    opt_strategy: str = "bisect"  # bisect|linear|unsat
    save_symbols: bool = False

    timelimit: float | None = None  # wall-clock seconds, tailoring only
    cnflimit: int | None = None
    seed: int | None = None
    solver_options: str | None = None
    satsolver_bin: str | None = None
    sat_family: str | None = None

    warnings: list = field(default_factory=list)

    # -- effective pass switches

    @property
    def eff_active(self) -> bool:
        if self.cse_mode is not None:
            return self.cse_mode in ("active", "active-ac")
        return self.opt_level >= 1

    @property
    def eff_ac(self) -> bool:
        if self.cse_mode is not None:
            return self.cse_mode in ("ac", "active-ac")
        return self.opt_level >= 3

    @property
    def eff_ac_negated(self) -> bool:
        return self.cse_mode == "active-ac"

    @property
    def eff_deletevars(self) -> bool:
        if self.deletevars is not None:
            return self.deletevars
        return self.opt_level >= 1

    @property
    def eff_aggregate(self) -> bool:
        if self.aggregate is not None:
            return self.aggregate
        return self.opt_level >= 2

    @property
    def eff_filter(self) -> bool:
        if self.reduce_domains or self.reduce_domains_extend:
            return True
        if self.reduce_domains is not None:
            return self.reduce_domains
        return self.opt_level >= 2

    @property
    def eff_remove_redundant(self) -> bool:
        if self.remove_redundant is not None:
            return self.remove_redundant
        return self.sat_level >= 1

    @property
    def full_reify(self) -> bool:
        return self.sat_level == 0
