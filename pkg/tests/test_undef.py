"""Relational semantics of partial functions through the full pipeline.

A partial-function application that is undefined makes the nearest
enclosing boolean expression false.  Counts use -S0 so no variables are
removed and every assignment is enumerated.
"""
import math

from helpers import HDR, count, solutions

S0 = dict(sat_level=0)


# ------------------------------------------------- the four truth values

def test_div_zero_eq_is_false():
    m = HDR + "find x, y : int(0..2)\nsuch that x/0 = y\n"
    assert count(m, **S0) == 0


def test_div_zero_neq_is_false():
    m = HDR + "find x, y : int(0..2)\nsuch that x/0 != y\n"
    assert count(m, **S0) == 0


def test_not_div_zero_eq_is_true():
    m = HDR + "find x, y : int(0..2)\nsuch that !(x/0 = y)\n"
    assert count(m, **S0) == 9


def test_not_div_zero_neq_is_true():
    m = HDR + "find x, y : int(0..2)\nsuch that !(x/0 != y)\n"
    assert count(m, **S0) == 9


# ------------------------------------------------- out-of-bounds indexing

def test_bool_matrix_oob_index_absorbs_at_the_element():
    # M[0] is itself boolean, so it alone becomes false: M[1] must be false
    m = (HDR + "find M : matrix indexed by [int(1)] of bool\n"
         "such that M[0] = M[1]\n")
    sols = solutions(m, **S0)
    assert len(sols) == 1
    assert sols[0]["M[1]"] == 0


def test_int_matrix_oob_index_absorbs_at_the_comparison():
    m = (HDR + "find M : matrix indexed by [int(1)] of int(0..1)\n"
         "such that M[0] = M[1]\n")
    assert count(m, **S0) == 0


def test_variable_index_guard():
    m = (HDR + "find i : int(0..3)\n"
         "find M : matrix indexed by [int(1..2)] of int(1..2)\n"
         "such that M[i] = 1\n")
    want = sum(1 for i in range(4) for m1 in (1, 2) for m2 in (1, 2)
               if i in (1, 2) and (m1, m2)[i - 1] == 1)
    assert count(m, **S0) == want


# ----------------------------------------------------- guard placement

def test_guard_attaches_below_disjunction():
    # (x/0 = y) is false by itself; the other disjunct still counts
    m = HDR + "find x, y : int(1..3)\nsuch that (x/0 = y) \\/ (x = y)\n"
    assert count(m, **S0) == 3


def test_guard_attaches_below_negation_of_conjunction():
    m = HDR + "find x, y : int(1..3)\nsuch that !((x/0 = y) /\\ (x = y))\n"
    assert count(m, **S0) == 9


def test_defined_division_unaffected():
    m = (HDR + "find x : int(0..3)\nfind y : int(0..3)\n"
         "such that (x != 0) /\\ (y % x = 0)\n")
    want = sum(1 for x in range(4) for y in range(4)
               if x != 0 and y % x == 0)
    assert count(m, **S0) == want


def test_division_guard_excludes_zero_divisor():
    m = (HDR + "find x : int(-3..3)\nfind y : int(-3..3)\n"
         "find z : int(-3..3)\nsuch that x / y = z\n")
    want = sum(1 for x in range(-4, 4) for y in range(-3, 4)
               if -3 <= x <= 3 and y != 0 and -3 <= x // y <= 3)
    assert count(m, **S0) == want


# ------------------------------------------------- power and factorial

def test_power_guard_excludes_zero_to_the_zero():
    m = (HDR + "find x : int(-2..2)\nfind y : int(0..3)\n"
         "find z : int(-8..8)\nsuch that x ** y = z\n")
    want = sum(1 for x in range(-2, 3) for y in range(4)
               if not (x == 0 and y == 0) and -8 <= x ** y <= 8)
    assert count(m, **S0) == want


def test_power_guard_excludes_negative_exponent():
    m = (HDR + "find y : int(-2..2)\nfind z : int(0..8)\n"
         "such that 2 ** y = z\n")
    want = sum(1 for y in range(-2, 3) if y >= 0 and 2 ** y <= 8)
    assert count(m, **S0) == want


def test_factorial_guard_excludes_negatives():
    m = (HDR + "find x : int(-2..3)\nfind y : int(0..6)\n"
         "such that factorial(x) = y\n")
    want = sum(1 for x in range(4) if math.factorial(x) <= 6)
    assert count(m, **S0) == want
