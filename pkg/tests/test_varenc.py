"""Order/direct literal encodings of integer variables."""
import itertools

import pytest

from eprimesat.cnf import Cnf
from eprimesat.domains import IntDomain
from eprimesat.solver import Solver
from eprimesat.varenc import ConstEnc, IntVarEnc, LitEnc


def enc_for(values, need_order=True, need_direct=True):
    cnf = Cnf()
    dom = IntDomain.values_of(sorted(values))
    e = IntVarEnc(cnf, "x", dom, need_order, need_direct)
    return cnf, e


def all_models(cnf):
    s = Solver()
    s.ensure_vars(cnf.nvars)
    for cl in cnf.clauses:
        s.add_clause(cl)
    free = cnf.nvars - 1  # var 1 is pinned true
    out = []
    for bits in itertools.product((False, True), repeat=free):
        asm = [v + 2 if b else -(v + 2) for v, b in enumerate(bits)]
        if s.solve(asm):
            out.append((True,) + bits)
    return out


def decoded_values(cnf, e):
    vals = []
    for m in all_models(cnf):
        st = (None,) + m

        def val(lit, st=st):
            return st[abs(lit)] != (lit < 0)

        vals.append(e.decode(val))
    return vals


# ----------------------------------------------------------- variable cost

@pytest.mark.parametrize("k", range(3, 13))
def test_both_families_cost_2k_minus_3(k):
    cnf, _ = enc_for(range(1, k + 1))
    assert cnf.nvars - 1 == 2 * k - 3


def test_gapped_domain_cost():
    cnf, _ = enc_for([1, 2, 3, 8, 9, 10])
    assert cnf.nvars - 1 == 9


def test_order_only_cost():
    cnf, _ = enc_for(range(1, 8), need_direct=False)
    assert cnf.nvars - 1 == 6


def test_two_value_domain_costs_one_var():
    cnf, _ = enc_for([4, 7])
    assert cnf.nvars - 1 == 1


def test_singleton_costs_nothing():
    cnf, e = enc_for([5])
    assert cnf.nvars == 1
    assert e.eq_lit(5) == cnf.TRUE and e.eq_lit(6) == cnf.FALSE
    assert e.le_lit(5) == cnf.TRUE and e.le_lit(4) == cnf.FALSE
    assert e.decode(None) == 5


# ------------------------------------------------------------ gap mapping

def test_le_in_gap_maps_to_floor_member():
    _, e = enc_for([1, 2, 3, 8, 9, 10])
    assert e.le_lit(5) == e.le_lit(3)
    assert e.le_lit(7) == e.le_lit(3)
    assert e.le_lit(8) != e.le_lit(3)


def test_le_outside_bounds():
    cnf, e = enc_for([1, 2, 3, 8, 9, 10])
    assert e.le_lit(0) == cnf.FALSE
    assert e.le_lit(10) == cnf.TRUE
    assert e.le_lit(99) == cnf.TRUE


def test_eq_of_non_member_is_false():
    cnf, e = enc_for([1, 2, 3, 8, 9, 10])
    assert e.eq_lit(5) == cnf.FALSE
    assert e.eq_lit(8) != cnf.FALSE


def test_ge_is_negated_le_of_predecessor():
    _, e = enc_for([1, 2, 3, 8, 9, 10])
    assert e.ge_lit(8) == -e.le_lit(7)
    assert e.ge_lit(2) == -e.le_lit(1)


def test_boundary_directs_are_order_identities():
    _, e = enc_for(range(1, 6))
    assert e.direct[0] == e.order[0]
    assert e.direct[-1] == -e.order[-1]


# --------------------------------------------------------------- semantics

@pytest.mark.parametrize("need_order,need_direct",
                         [(True, False), (False, True), (True, True)])
def test_models_biject_with_domain(need_order, need_direct):
    values = [2, 4, 5, 9]
    cnf, e = enc_for(values, need_order, need_direct)
    assert sorted(decoded_values(cnf, e)) == values


def test_eq_lits_select_single_value():
    values = [2, 4, 5, 9]
    cnf, e = enc_for(values)
    s = Solver()
    s.ensure_vars(cnf.nvars)
    for cl in cnf.clauses:
        s.add_clause(cl)
    for v in values:
        assert s.solve([1, e.eq_lit(v)])
        got = e.decode(lambda l: s.model_value(abs(l)) != (l < 0))
        assert got == v
        # eq and the order window agree
        assert s.solve([1, e.eq_lit(v), -e.le_lit(v)]) is False
        if v != values[0]:
            below = values[values.index(v) - 1]
            assert s.solve([1, e.eq_lit(v), e.le_lit(below)]) is False


def force_lits(e, values, w):
    """Assumptions pinning x = w without requesting new literal families."""
    if e.direct is not None or e.k <= 2:
        return [e.eq_lit(w)]
    i = values.index(w)
    out = [e.le_lit(w)] if i < len(values) - 1 else []
    if i > 0:
        out.append(-e.le_lit(values[i - 1]))
    return out


def test_neq_lits_block_exactly_one_value():
    values = [2, 4, 5, 9]
    for fams in ((True, False), (False, True), (True, True)):
        cnf, e = enc_for(values, *fams)
        s = Solver()
        s.ensure_vars(cnf.nvars)
        for cl in cnf.clauses:
            s.add_clause(cl)
        for v in values:
            lits = e.neq_lits(v)
            left = set()
            for w in values:
                asm = [1] + force_lits(e, values, w) + [-l for l in lits]
                if s.solve(asm):
                    left.add(w)
            # negating the disjunction forces x = v
            assert left == {v}, (fams, v)


def test_two_value_semantics():
    cnf, e = enc_for([4, 7])
    assert e.eq_lit(7) == -e.eq_lit(4)
    assert e.le_lit(4) == -e.eq_lit(7)
    assert e.le_lit(5) == e.le_lit(4)
    assert e.le_lit(7) == cnf.TRUE
    assert e.decode(lambda l: l > 0) == 7
    assert e.decode(lambda l: l < 0) == 4


# ------------------------------------------------------- wrapper encodings

def test_const_enc():
    cnf = Cnf()
    e = ConstEnc(cnf, 3)
    assert e.eq_lit(3) == cnf.TRUE and e.eq_lit(4) == cnf.FALSE
    assert e.le_lit(2) == cnf.FALSE and e.le_lit(3) == cnf.TRUE
    assert e.decode(None) == 3


def test_lit_enc_bridges_bool_to_int():
    cnf = Cnf()
    b = cnf.new_var()
    e = LitEnc(cnf, b)
    assert e.eq_lit(1) == b and e.eq_lit(0) == -b
    assert e.eq_lit(2) == cnf.FALSE
    assert e.le_lit(0) == -b and e.le_lit(1) == cnf.TRUE
    assert e.le_lit(-1) == cnf.FALSE
    assert e.decode(lambda l: l == b) == 1
