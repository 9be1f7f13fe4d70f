"""Lexing, parsing, operator precedence, and printing."""
import random

import pytest

from eprimesat.ast_nodes import BinOp, IntLit, UnOp, expr_key, expr_str
from eprimesat.errors import LexError, ParseError
from eprimesat.evaluator import Env, partial_eval
from eprimesat.parser import parse_expr_text, parse_model_text


def same_parse(a, b):
    return expr_key(parse_expr_text(a)) == expr_key(parse_expr_text(b))


# ----------------------------------------------------------- precedence

def test_power_is_right_associative():
    e = parse_expr_text("2**3**4")
    assert isinstance(e, BinOp) and e.op == "**"
    assert isinstance(e.a, IntLit) and e.a.value == 2
    assert isinstance(e.b, BinOp) and e.b.op == "**"


def test_power_binds_tighter_than_unary_minus():
    e = parse_expr_text("-2**2**3")
    assert isinstance(e, UnOp) and e.op == "-"
    assert partial_eval(e, Env()) == -256
    assert partial_eval(parse_expr_text("(-2)**(2**3)"), Env()) == 256


PRECEDENCE_CASES = [
    ("1+2*3", "1+(2*3)"),
    ("2*3+1", "(2*3)+1"),
    ("2/3/4", "(2/3)/4"),
    ("2-3-4", "(2-3)-4"),
    ("10%4%3", "(10%4)%3"),
    ("-x**2", "-(x**2)"),
    ("|x|+1", "(|x|)+1"),
    ("!a /\\ b", "(!a) /\\ b"),
    ("a \\/ b /\\ c", "a \\/ (b /\\ c)"),
    ("a -> b \\/ c", "a -> (b \\/ c)"),
    ("a -> b -> c", "(a -> b) -> c"),
    ("a <-> b -> c", "(a <-> b) -> c"),
    ("x + y = z", "(x + y) = z"),
    ("x = y /\\ a", "(x = y) /\\ a"),
    ("x in int(1..3) \\/ a", "(x in int(1..3)) \\/ a"),
    ("1 + 2 - 3 + 4", "((1 + 2) - 3) + 4"),
]


@pytest.mark.parametrize("loose,explicit", PRECEDENCE_CASES)
def test_precedence(loose, explicit):
    assert same_parse(loose, explicit)


def test_expr_str_round_trip():
    rng = random.Random(42)
    leaves = ["x", "y", "3", "-2", "|x|", "true", "b"]
    bin_ops = ["+", "-", "*", "/", "%", "**"]
    for _ in range(300):
        def build(depth):
            if depth == 0 or rng.random() < 0.3:
                return rng.choice(leaves)
            return f"({build(depth-1)} {rng.choice(bin_ops)} {build(depth-1)})"
        src = f"({build(3)} = {build(2)}) /\\ (b \\/ !(x < y))"
        e = parse_expr_text(src)
        assert expr_key(parse_expr_text(expr_str(e))) == expr_key(e)


# ---------------------------------------------------------------- lexer

def test_dollar_comments_ignored():
    assert same_parse("1 + $ comment to end of line\n 2", "1 + 2")


def test_reserved_words_rejected_as_identifiers():
    for word in ("such", "that", "letting", "given", "where", "find",
                 "language", "int", "bool", "union", "intersect", "in",
                 "forAll", "exists", "sum", "forall"):
        with pytest.raises((ParseError, LexError)):
            parse_expr_text(f"{word} + 1")


def test_error_positions():
    with pytest.raises(ParseError) as ei:
        parse_expr_text("1 + ")
    assert ei.value.line == 1
    with pytest.raises(ParseError) as ei:
        parse_model_text("language ESSENCE' 1.0\nfind x : int(1..3)\nboom\n")
    assert ei.value.line == 3


# ---------------------------------------------------------------- model

def test_model_requires_header():
    with pytest.raises(ParseError):
        parse_model_text("find x : int(1..3)\n")


def test_model_statements_parse():
    m = parse_model_text(
        "language ESSENCE' 1.0\n"
        "given n : int\n"
        "letting c = 2\n"
        "letting D be domain int(1..c)\n"
        "where n > 0\n"
        "find x, y : D\n"
        "find M : matrix indexed by [int(1..2), D] of bool\n"
        "such that x < y, M[1, 1]\n"
        "minimising x\n"
        "branching on [x, y]\n")
    kinds = [type(s).__name__ for s in m.statements]
    assert "GivenStmt" in kinds and "FindStmt" in kinds
    assert any(k.startswith("Objective") for k in kinds)


def test_multi_name_find():
    m = parse_model_text("language ESSENCE' 1.0\nfind x, y, z : bool\n")
    find = [s for s in m.statements if type(s).__name__ == "FindStmt"][0]
    assert tuple(find.names) == ("x", "y", "z")


def test_quantifier_and_comprehension_parse():
    for src in (
        "forAll i : int(1..3) . x[i] < x[i+1]",
        "exists i, j : int(1..3) . x[i] = j",
        "sum i : int(1..3) . x[i]",
        "[ i + j | i : int(1..3), j : int(1..3), i < j ]",
        "[ i | i : int(1..9) ; int(7..) ]",
        "allDiff([x, y, 2])",
        "table([x, y], [[1, 2], [2, 1]])",
        "[x, y] <lex [y, x]",
        "M[1, ..]",
        "M[.., 2]",
    ):
        parse_expr_text(src)


def test_slice_and_index_mix():
    e = parse_expr_text("M[i, .., 3]")
    assert type(e).__name__ in ("Slice", "Subscript")
