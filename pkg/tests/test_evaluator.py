"""Constant evaluation: arithmetic, matrix values, quantifier unrolling."""
import math
from fractions import Fraction

import pytest

from eprimesat.errors import InstanceError
from eprimesat.evaluator import Env, partial_eval
from eprimesat.parser import parse_expr_text
from eprimesat.values import UNDEF, Matrix, matrix_str


def ev(src):
    return partial_eval(parse_expr_text(src), Env())


# ------------------------------------------------- division and modulo

def test_division_examples():
    assert ev("3/2") == 1
    assert ev("(-3)/2") == -2
    assert ev("3/(-2)") == -2
    assert ev("(-3)/(-2)") == 1


def test_floor_division_exhaustive():
    # oracle: rational division rounded toward negative infinity
    for a in range(-20, 21):
        for b in range(-20, 21):
            if b == 0:
                continue
            q = math.floor(Fraction(a, b))
            assert ev(f"({a})/({b})") == q
            assert ev(f"({a})%({b})") == a - b * q


def test_mod_sign_follows_divisor():
    assert ev("7 % 3") == 1
    assert ev("(-7) % 3") == 2
    assert ev("7 % (-3)") == -2
    assert ev("(-7) % (-3)") == -1


# -------------------------------------------------------------- power

def test_power_values():
    assert ev("2**10") == 1024
    assert ev("(-2)**3") == -8
    assert ev("(-2)**2") == 4
    assert ev("5**0") == 1
    assert ev("0**3") == 0


def test_power_undefined_cases():
    assert ev("2**(-1)") is UNDEF
    assert ev("0**0") is UNDEF


def test_division_by_zero_undefined():
    assert ev("4/0") is UNDEF
    assert ev("4%0") is UNDEF


def test_factorial():
    for n in range(8):
        assert ev(f"factorial({n})") == math.factorial(n)
    assert ev("factorial(-1)") is UNDEF


def test_popcount_and_toint():
    for n in range(16):
        assert ev(f"popcount({n})") == bin(n).count("1")
    assert ev("toInt(true)") == 1
    assert ev("toInt(false)") == 0
    assert ev("toInt(3=3)") == 1


def test_abs():
    assert ev("|7|") == 7
    assert ev("|-7|") == 7
    assert ev("|3-5|") == 2


def test_overflow_guard():
    with pytest.raises(InstanceError):
        ev("2**3**4")  # 2**81 exceeds 64-bit arithmetic


# ---------------------------------------------------- comprehensions

def test_comprehension_squares():
    v = ev("[ num**2 | num : int(1..5) ]")
    assert matrix_str(v) == "[1,4,9,16,25]"


def test_comprehension_with_index_domain():
    v = ev("[ i+j | i: int(1..3), j : int(1..3), i<j ; int(7..) ]")
    assert matrix_str(v) == "[3,4,5;int(7..9)]"


def test_flatten_nested():
    v = ev("flatten([ [ [1,2], [3,4] ], [ [5,6], [7,8] ] ])")
    assert matrix_str(v) == "[1,2,3,4,5,6,7,8]"


def test_slice_reindexes_from_one():
    v = ev("[ [ 1,2,3 ; int(1,2,4) ], [ 1,3,2 ; int(1,2,4) ],"
           "  [ 3,2,1 ; int(1,2,4) ] ; int(-2..0) ][-2,..]")
    assert isinstance(v, Matrix)
    assert tuple(v.elems) == (1, 2, 3)
    assert str(v.index_doms[0]) == "int(1..3)"


def test_column_slice():
    v = ev("[ [ 1,2,3 ; int(1,2,4) ], [ 1,3,2 ; int(1,2,4) ],"
           "  [ 3,2,1 ; int(1,2,4) ] ; int(-2..0) ][..,1]")
    assert tuple(v.elems) == (1, 1, 3)


def test_comprehension_generator_order_is_lexicographic():
    v = ev("[ 10*i + j | i : int(1..2), j : int(1..3) ]")
    assert tuple(v.elems) == (11, 12, 13, 21, 22, 23)


def test_comprehension_over_bool_domain():
    v = ev("[ toInt(a) | a : bool ]")
    assert tuple(v.elems) == (0, 1)


# ------------------------------------------------------- quantifiers

def test_quantifiers_on_constants():
    assert ev("forAll i : int(1..4) . i < 5") is True
    assert ev("forAll i : int(1..4) . i < 4") is False
    assert ev("exists i : int(1..4) . i = 3") is True
    assert ev("exists i : int(1..4) . i = 9") is False
    assert ev("sum i : int(1..4) . i*i") == 30
    assert ev("sum i : int(1..3) . sum j : int(1..3) . i*j") == 36


def test_matrix_functions():
    assert ev("min([4, 2, 9])") == 2
    assert ev("max([4, 2, 9])") == 9
    assert ev("min(3, 7)") == 3
    assert ev("max(3, 7)") == 7
    assert ev("sum([1, 2, 3])") == 6
    assert ev("product([2, 3, 4])") == 24
    assert ev("and([true, true])") is True
    assert ev("and([true, false])") is False
    assert ev("or([false, true])") is True


def test_global_constraints_on_constants():
    assert ev("allDiff([1, 2, 3])") is True
    assert ev("allDiff([1, 2, 1])") is False
    assert ev("atleast([1, 1, 2], [2], [1])") is True
    assert ev("atmost([1, 1, 2], [1], [1])") is False
    assert ev("gcc([1, 1, 2], [1, 2], [2, 1])") is True
    assert ev("table([1, 2], [[1, 2], [2, 1]])") is True
    assert ev("table([2, 2], [[1, 2], [2, 1]])") is False


def test_matrix_comparisons():
    assert ev("[1, 2] <lex [1, 3]") is True
    assert ev("[1, 2] <lex [1, 2]") is False
    assert ev("[1, 2] <=lex [1, 2]") is True
    assert ev("[2, 1] >lex [1, 9]") is True
    assert ev("[1, 2] = [1, 2]") is True
    assert ev("[1, 2] != [1, 2]") is False


def test_indexing_out_of_bounds_is_undefined():
    # relational semantics: the enclosing comparison becomes false
    assert ev("[1, 2, 3][4] = 1") is False
    assert ev("!([1, 2, 3][4] = 1)") is True
    assert ev("[1, 2, 3][0] = [1, 2, 3][0]") is False


def test_in_operator():
    assert ev("2 in int(1..3)") is True
    assert ev("5 in int(1..3)") is False
    assert ev("5 in int(1..3) union int(5..6)") is True
    assert ev("2 in int(1..3) intersect int(2..9)") is True
    assert ev("3 in int(1..9) - int(3)") is False
