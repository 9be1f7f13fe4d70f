"""Clause-level encodings: AMO/EO schemes, adders, tables, element,
support clauses and scaled operands."""
import itertools

import pytest

from eprimesat.amo import AMO_SCHEMES, encode_amo, encode_eo
from eprimesat.cnf import Cnf
from eprimesat.domains import IntDomain
from eprimesat.encode import ScaledEnc, scaled
from eprimesat.varenc import IntVarEnc

from helpers import HDR, count

S0 = dict(sat_level=0)


def brute_models(cnf):
    """All satisfying assignments, as var -> bool tuples (index 0 unused)."""
    out = []
    for bits in itertools.product((False, True), repeat=cnf.nvars - 1):
        asg = (None, True) + bits
        if all(any(asg[l] if l > 0 else not asg[-l] for l in cl)
               for cl in cnf.clauses):
            out.append(asg)
    return out


# ------------------------------------------------------------ AMO schemes

@pytest.mark.parametrize("scheme", AMO_SCHEMES)
@pytest.mark.parametrize("n", range(2, 9))
def test_amo_models_biject_with_low_weight_patterns(scheme, n):
    cnf = Cnf()
    lits = cnf.new_vars(n)
    encode_amo(cnf, lits, scheme)
    models = brute_models(cnf)
    # aux vars are functionally determined: n+1 total models, all distinct
    assert len(models) == n + 1
    projs = {tuple(m[l] for l in lits) for m in models}
    assert len(projs) == n + 1
    assert all(sum(p) <= 1 for p in projs)


@pytest.mark.parametrize("scheme", AMO_SCHEMES)
@pytest.mark.parametrize("n", range(2, 9))
def test_eo_models_biject_with_one_hot_patterns(scheme, n):
    cnf = Cnf()
    lits = cnf.new_vars(n)
    encode_eo(cnf, lits, scheme)
    models = brute_models(cnf)
    assert len(models) == n
    projs = {tuple(m[l] for l in lits) for m in models}
    assert len(projs) == n
    assert all(sum(p) == 1 for p in projs)


def test_amo_with_constant_true_forces_rest_false():
    cnf = Cnf()
    a, b = cnf.new_vars(2)
    encode_amo(cnf, [cnf.TRUE, a, b], "product")
    assert {m[a] or m[b] for m in brute_models(cnf)} == {False}


def test_small_product_and_commander_add_no_aux_vars():
    for scheme, n in (("product", 4), ("commander", 3), ("ladder", 2)):
        cnf = Cnf()
        cnf.new_vars(n)
        encode_amo(cnf, list(range(2, n + 2)), scheme)
        assert cnf.nvars == n + 1, scheme


# ----------------------------------------------------------------- adders

def test_sum_equality_counts():
    m = (HDR + "find x, y : int(0..3)\nfind z : int(0..6)\n"
         "such that x + y = z\n")
    assert count(m, **S0) == 16


def test_weighted_sum_le_counts():
    m = (HDR + "find x, y, z : int(0..3)\n"
         "such that 2*x - 3*y + z <= 1\n")
    want = sum(1 for x, y, z in itertools.product(range(4), repeat=3)
               if 2 * x - 3 * y + z <= 1)
    assert count(m, **S0) == want


def test_sum_disequality_counts():
    m = HDR + "find x, y : int(0..3)\nsuch that x + y != 3\n"
    assert count(m, **S0) == 12


def test_long_sum_tree():
    m = (HDR + "find a, b, c, d, e : int(0..2)\n"
         "such that a + b + c + d + e = 5\n")
    want = sum(1 for t in itertools.product(range(3), repeat=5)
               if sum(t) == 5)
    assert count(m, **S0) == want


# ----------------------------------------------------------------- tables

def test_binary_table_uses_support_clauses():
    # arity 2: direct literals on the scope, no table-specific aux vars
    from eprimesat.config import RunConfig
    from eprimesat.driver import tailor

    t = tailor(HDR + "find x, y : int(0..2)\n"
               "such that table([x,y], [[0,1],[1,0]])\n", [],
               RunConfig(sat_level=0))
    assert t.cnf.nvars == 1 + 2 * 3  # constant + 2k-3 per variable
    assert not any(" for " in a for a in t.cnf.annotations)


def test_ternary_table_adds_one_var_per_row():
    from eprimesat.config import RunConfig
    from eprimesat.driver import tailor

    rows = [[0, 1, 2], [1, 1, 1], [2, 0, 2], [0, 0, 0]]
    txt = ",".join(str(r) for r in rows)
    t = tailor(HDR + "find x, y, z : int(0..2)\n"
               f"such that table([x,y,z], [{txt}])\n", [],
               RunConfig(sat_level=0))
    assert t.cnf.nvars == 1 + 3 * 3 + len(rows)


def test_binary_table_counts():
    m = (HDR + "find x, y : int(0..3)\n"
         "such that table([x,y], [[0,1],[2,3],[3,0],[1,1]])\n")
    assert count(m, **S0) == 4


def test_ternary_table_counts():
    rows = [[0, 1, 2], [1, 1, 1], [2, 0, 2], [0, 0, 0], [2, 2, 1]]
    txt = ",".join(str(r) for r in rows)
    m = (HDR + "find x, y, z : int(0..2)\n"
         f"such that table([x,y,z], [{txt}])\n")
    assert count(m, **S0) == len(rows)


def test_table_rows_outside_domains_are_dropped():
    m = (HDR + "find x, y, z : int(0..2)\n"
         "such that table([x,y,z], [[0,1,2],[5,0,0],[1,1,9]])\n")
    assert count(m, **S0) == 1


def test_reified_table_counts():
    rows = [[0, 1, 2], [1, 1, 1], [2, 0, 2]]
    txt = ",".join(str(r) for r in rows)
    m = (HDR + "find b : bool\nfind x, y, z : int(0..2)\n"
         f"such that b <-> table([x,y,z], [{txt}])\n")
    assert count(m, **S0) == 27  # each point sets b one way


# --------------------------------------------------------- support clauses

def test_product_equality_by_support():
    m = HDR + "find x, y : int(1..6)\nsuch that x * y = 6\n"
    assert count(m, **S0) == 4  # 1*6 2*3 3*2 6*1


def test_product_disequality_by_nogoods():
    m = HDR + "find x, y : int(1..6)\nsuch that x * y != 6\n"
    assert count(m, **S0) == 32


def test_abs_equality():
    m = HDR + "find x : int(-3..3)\nsuch that |x| = 2\n"
    assert count(m, **S0) == 2


def test_factorial_equality():
    m = HDR + "find x : int(0..5)\nsuch that factorial(x) = 6\n"
    assert count(m, **S0) == 1


def test_popcount_equality():
    m = HDR + "find x : int(0..7)\nsuch that popcount(x) = 2\n"
    assert count(m, **S0) == 3  # 3, 5, 6


# ------------------------------------------------------- element / minmax

def test_element_with_variable_index():
    m = (HDR + "find i : int(1..3)\n"
         "find M : matrix indexed by [int(1..3)] of int(1..5)\n"
         "such that M[i] = 4\n")
    assert count(m, **S0) == 3 * 25


def test_element_chained_into_arithmetic():
    m = (HDR + "find i : int(1..2)\n"
         "find M : matrix indexed by [int(1..2)] of int(0..3)\n"
         "such that M[i] + i = 3\n")
    want = sum(1 for i in (1, 2) for m1 in range(4) for m2 in range(4)
               if (m1, m2)[i - 1] + i == 3)
    assert count(m, **S0) == want


def test_min_of_list():
    m = (HDR + "find x, y, z : int(0..3)\n"
         "such that min([x,y,z]) = 2\n")
    want = sum(1 for t in itertools.product(range(4), repeat=3)
               if min(t) == 2)
    assert count(m, **S0) == want


def test_max_binary():
    m = HDR + "find x, y : int(0..3)\nsuch that max(x, y) = 3\n"
    want = sum(1 for t in itertools.product(range(4), repeat=2)
               if max(t) == 3)
    assert count(m, **S0) == want


# ---------------------------------------------------------- scaled operand

def test_scaled_positive_coefficient():
    cnf = Cnf()
    e = IntVarEnc(cnf, "x", IntDomain.of((1, 3)), True, True)
    s = ScaledEnc(cnf, e, 2)
    assert s.values == (2, 4, 6)
    assert s.le_lit(3) == e.le_lit(1)  # 2x <= 3  <=>  x <= 1
    assert s.le_lit(4) == e.le_lit(2)
    assert s.eq_lit(4) == e.eq_lit(2)
    assert s.eq_lit(3) == cnf.FALSE


def test_scaled_negative_coefficient():
    cnf = Cnf()
    e = IntVarEnc(cnf, "x", IntDomain.of((1, 3)), True, True)
    s = ScaledEnc(cnf, e, -2)
    assert s.values == (-6, -4, -2)
    assert s.le_lit(-4) == -e.le_lit(1)  # -2x <= -4  <=>  x >= 2
    assert s.le_lit(-5) == -e.le_lit(2)
    assert s.le_lit(-7) == cnf.FALSE
    assert s.le_lit(-2) == cnf.TRUE
    assert s.eq_lit(-6) == e.eq_lit(3)


def test_scaled_identity_shortcut():
    cnf = Cnf()
    e = IntVarEnc(cnf, "x", IntDomain.of((1, 3)), True, True)
    assert scaled(cnf, e, 1) is e
    assert isinstance(scaled(cnf, e, -1), ScaledEnc)
