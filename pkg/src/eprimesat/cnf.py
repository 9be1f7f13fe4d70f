"""CNF container and DIMACS output."""

from __future__ import annotations

import os

from .errors import CnfLimitError


class Cnf:
    """Clause store. SAT variable 1 is reserved as constant true."""

    def __init__(self, clause_limit=None):
        self.nvars = 1
        self.clauses = []
        self.annotations = []
        self.clause_limit = clause_limit
        self.TRUE = 1
        self.FALSE = -1
        self.clauses.append((1,))  # pin the constant; add_clause drops it

    def new_var(self) -> int:
        self.nvars += 1
        return self.nvars

    def new_vars(self, n) -> list:
        return [self.new_var() for _ in range(n)]

    def add_clause(self, lits):
        seen = set()
        out = []
        for l in lits:
            assert l != 0 and abs(l) <= self.nvars
            if l == self.TRUE or -l in seen:
                return  # satisfied or tautological
            if l == self.FALSE or l in seen:
                continue
            seen.add(l)
            out.append(l)
        self.clauses.append(tuple(out))
        if self.clause_limit is not None \
                and len(self.clauses) > self.clause_limit:
            raise CnfLimitError(
                f"clause limit of {self.clause_limit} exceeded")

    def comment(self, text):
        self.annotations.append(text)

    def write_dimacs(self, path):
        try:
            with open(path, "w") as f:
                for a in self.annotations:
                    f.write(f"c {a}\n")
                f.write(f"p cnf {self.nvars} {len(self.clauses)}\n")
                for cl in self.clauses:
                    f.write(" ".join(map(str, cl)) + " 0\n")
        except BaseException:
            if os.path.exists(path):
                os.unlink(path)
            raise
