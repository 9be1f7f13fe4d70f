"""SAT encodings of integer (and boolean) decision variables.

A variable over k values gets, depending on which literal families the
constraints ask for:

  k == 1   no SAT variables (a constant)
  k == 2   one SAT variable b, with [x = hi] = b and [x = lo] = -b
  k >= 3   order literals o_j = [x <= v_j] (j < k-1) with monotone
           clauses, and/or direct literals d_j = [x = v_j] with
           exactly-one clauses; when both are present the boundary
           directs are the identities d_0 = o_0 and d_{k-1} = -o_{k-2},
           so both families cost exactly 2k-3 SAT variables.

[x <= v] for v between domain values maps down to the largest member
below v; [x = v] for a non-member is constant false.
"""

from __future__ import annotations

from .amo import encode_eo
from .errors import SolverOutputError


class ConstEnc:
    """A name fixed to one value."""

    def __init__(self, cnf, value):
        self.cnf = cnf
        self.value = value
        self.values = (value,)

    def eq_lit(self, v):
        return self.cnf.TRUE if v == self.value else self.cnf.FALSE

    def le_lit(self, v):
        return self.cnf.TRUE if v >= self.value else self.cnf.FALSE

    def decode(self, val):
        return self.value


class LitEnc:
    """A boolean expression used as the integer 0/1."""

    def __init__(self, cnf, lit):
        self.cnf = cnf
        self.lit = lit
        self.values = (0, 1)

    def eq_lit(self, v):
        if v == 1:
            return self.lit
        if v == 0:
            return -self.lit
        return self.cnf.FALSE

    def le_lit(self, v):
        if v >= 1:
            return self.cnf.TRUE
        if v == 0:
            return -self.lit
        return self.cnf.FALSE

    def decode(self, val):
        if self.lit == self.cnf.TRUE:
            return 1
        if self.lit == self.cnf.FALSE:
            return 0
        return int(val(self.lit))


class IntVarEnc:
    def __init__(self, cnf, name, domain, need_order, need_direct,
                 strict=True, amo_scheme="product"):
        self.cnf = cnf
        self.name = name
        self.values = tuple(domain.values())
        self.index = {v: i for i, v in enumerate(self.values)}
        self.strict = strict  # reject unplanned literal families
        self.order = None  # o_j = [x <= values[j]], j in 0..k-2
        self.direct = None  # d_j = [x = values[j]]
        k = len(self.values)
        assert k >= 1
        if k == 1:
            self.two = None
            return
        if k == 2:
            self.two = cnf.new_var()  # [x = values[1]]
            return
        self.two = None
        if need_order:
            self._alloc_order()
        if need_direct:
            self._alloc_direct()

    @property
    def k(self):
        return len(self.values)

    def _alloc_order(self):
        cnf = self.cnf
        self.order = cnf.new_vars(self.k - 1)
        for j in range(self.k - 2):
            cnf.add_clause((-self.order[j], self.order[j + 1]))

    def _alloc_direct(self):
        cnf = self.cnf
        k = self.k
        if self.order is not None:
            # interiors only; boundaries are order-literal identities
            interior = cnf.new_vars(k - 2)
            self.direct = [self.order[0]] + interior + [-self.order[k - 2]]
            for j in range(1, k - 1):
                d = self.direct[j]
                cnf.add_clause((-d, self.order[j]))
                cnf.add_clause((-d, -self.order[j - 1]))
                cnf.add_clause((d, -self.order[j], self.order[j - 1]))
        else:
            self.direct = cnf.new_vars(k)
            encode_eo(cnf, self.direct, "product")

    def _ensure(self, family):
        if self.k <= 2:
            return
        if family == "order" and self.order is None:
            if self.strict:
                raise AssertionError(
                    f"order literal on {self.name} was not planned")
            had_direct = self.direct
            self._alloc_order()
            if had_direct is not None:
                # channel the pre-existing full direct encoding
                for j, d in enumerate(self.direct):
                    if j < self.k - 1:
                        self.cnf.add_clause((-d, self.order[j]))
                    if j > 0:
                        self.cnf.add_clause((-d, -self.order[j - 1]))
        if family == "direct" and self.direct is None:
            if self.strict:
                raise AssertionError(
                    f"direct literal on {self.name} was not planned")
            self._alloc_direct()

    def eq_lit(self, v):
        cnf = self.cnf
        if v not in self.index:
            return cnf.FALSE
        if self.k == 1:
            return cnf.TRUE
        if self.k == 2:
            return self.two if v == self.values[1] else -self.two
        self._ensure("direct")
        return self.direct[self.index[v]]

    def le_lit(self, v):
        cnf = self.cnf
        if v < self.values[0]:
            return cnf.FALSE
        if v >= self.values[-1]:
            return cnf.TRUE
        if self.k == 2:
            return -self.two  # values[0] <= v < values[1]
        self._ensure("order")
        while v not in self.index:
            v -= 1  # map into the gap's floor member
        return self.order[self.index[v]]

    def ge_lit(self, v):
        """[x >= v] as a literal."""
        return -self.le_lit(v - 1)

    def decode(self, val):
        if self.k == 1:
            return self.values[0]
        if self.k == 2:
            return self.values[1] if val(self.two) else self.values[0]
        if self.order is not None:
            for j, o in enumerate(self.order):
                if val(o):
                    return self.values[j]
            return self.values[-1]
        hits = [j for j, d in enumerate(self.direct) if val(d)]
        if len(hits) != 1:
            raise SolverOutputError(
                f"model assigns {len(hits)} values to {self.name}")
        return self.values[hits[0]]

    def neq_lits(self, v):
        """Literals whose disjunction states x != v (for blocking)."""
        if self.k <= 2 or self.direct is not None:
            l = self.eq_lit(v)
            return [] if l == self.cnf.FALSE else [-l]
        i = self.index[v]
        out = [-self.le_lit(v)] if i < self.k - 1 else []
        if i > 0:
            out.append(self.le_lit(self.values[i - 1]))
        return out
