"""Parser for Essence Prime models, parameter files, and expressions.

Precedence climbing over the published operator table; parsing is untyped
(`1 + 2 /\\ 3` parses; typing is enforced during instantiation). Quantifier
bodies extend maximally to the right but never across a comma; commas are
conjunctions at the top level of constraint lists and inside parentheses.
"""

from __future__ import annotations

import re

from .ast_nodes import (BinOp, BoolDom, BoolLit, BranchingStmt, Call, Compr,
                        DomBinOp, DomIdent, FindStmt, GivenStmt, HeuristicStmt,
                        Ident, IntLit, IntParseDom, LettingDomStmt, LettingStmt,
                        MatrixDom, MatrixLit, Model, ObjectiveStmt, Quant,
                        Subscript, SuchThatStmt, UnOp, WhereStmt)
from .errors import ParseError
from .lexer import Token, TokenType, tokenize

# op -> (precedence, associativity)
BIN_OPS = {
    "<->": (-4, "L"), "->": (-4, "L"),
    "\\/": (-2, "L"), "/\\": (-1, "L"),
    "=": (0, "L"), "!=": (0, "L"), "<": (0, "L"), "<=": (0, "L"),
    ">": (0, "L"), ">=": (0, "L"),
    "<lex": (0, "L"), "<=lex": (0, "L"), ">lex": (0, "L"), ">=lex": (0, "L"),
    "in": (0, "L"),
    "union": (1, "L"), "+": (1, "L"), "-": (1, "L"),
    "intersect": (2, "L"),
    "*": (10, "L"), "/": (10, "L"), "%": (10, "L"),
    "**": (18, "R"),
}

COMMA_PREC = -20
QUANT_BODY_PREC = -10
# Lowest level that still excludes the comma, used for list elements.
EXPR_PREC = COMMA_PREC + 1

HEURISTIC_NAMES = ("static", "sdf", "conflict", "srf")

_HEADER_RE = re.compile(r"^[ \t]*language\s+ESSENCE'?\s+\d+(\.\d+)?\s*$",
                        re.IGNORECASE)


def _strip_header(text: str, required: bool):
    lines = text.split("\n")
    for i, ln in enumerate(lines):
        bare = ln.split("$", 1)[0].strip()
        if not bare:
            continue
        if _HEADER_RE.match(ln.split("$", 1)[0]):
            lines[i] = ""
            return "\n".join(lines)
        break
    if required:
        raise ParseError("model must begin with a `language ESSENCE' 1.0` "
                         "header line")
    return text


class Parser:
    def __init__(self, toks: list[Token]):
        self.toks = toks
        self.i = 0

    # ------------------------------------------------------- token helpers

    def peek(self, ahead=0) -> Token:
        j = min(self.i + ahead, len(self.toks) - 1)
        return self.toks[j]

    def next(self) -> Token:
        t = self.toks[self.i]
        if t.type != TokenType.EOF:
            self.i += 1
        return t

    def at_op(self, *ops) -> bool:
        t = self.peek()
        return t.type == TokenType.OP and t.value in ops

    def at_kw(self, *kws) -> bool:
        t = self.peek()
        return t.type == TokenType.KEYWORD and t.value in kws

    def at_ident(self, *names) -> bool:
        t = self.peek()
        return t.type == TokenType.IDENT and (not names or t.value in names)

    def expect_op(self, op) -> Token:
        t = self.peek()
        if not self.at_op(op):
            raise ParseError(f"expected {op!r}, found {t.value!r}",
                             t.line, t.col)
        return self.next()

    def expect_kw(self, kw) -> Token:
        t = self.peek()
        if not self.at_kw(kw):
            raise ParseError(f"expected {kw!r}, found {t.value!r}",
                             t.line, t.col)
        return self.next()

    def expect_ident(self) -> Token:
        t = self.peek()
        if t.type != TokenType.IDENT:
            if t.type == TokenType.KEYWORD:
                raise ParseError(f"reserved word {t.value!r} cannot be used "
                                 "as an identifier", t.line, t.col)
            raise ParseError(f"expected identifier, found {t.value!r}",
                             t.line, t.col)
        return self.next()

    def _pos(self, t: Token):
        return (t.line, t.col)

    # --------------------------------------------------------- expressions

    def parse_expr(self, min_prec=EXPR_PREC):
        lhs = self.parse_unary()
        while True:
            t = self.peek()
            if t.type == TokenType.OP and t.value in BIN_OPS:
                op = t.value
            elif t.type == TokenType.KEYWORD and t.value in ("in", "union",
                                                             "intersect"):
                op = t.value
            else:
                break
            prec, assoc = BIN_OPS[op]
            if prec < min_prec:
                break
            self.next()
            if op == "in":
                rhs = self.parse_set_rhs()
            else:
                rhs = self.parse_expr(prec + 1 if assoc == "L" else prec)
            lhs = BinOp(op, lhs, rhs, pos=self._pos(t))
        return lhs

    def parse_unary(self):
        t = self.peek()
        if self.at_op("-"):
            self.next()
            return UnOp("-", self.parse_expr(15), pos=self._pos(t))
        if self.at_op("!"):
            self.next()
            return UnOp("!", self.parse_expr(20), pos=self._pos(t))
        if self.at_op("|"):
            self.next()
            inner = self.parse_expr(EXPR_PREC)
            self.expect_op("|")
            return UnOp("abs", inner, pos=self._pos(t))
        return self.parse_postfix()

    def parse_postfix(self):
        e = self.parse_atom()
        while self.at_op("["):
            t = self.next()
            subs = []
            while True:
                if self.at_op(".."):
                    self.next()
                    subs.append(None)
                else:
                    subs.append(self.parse_expr(EXPR_PREC))
                if self.at_op(","):
                    self.next()
                    continue
                break
            self.expect_op("]")
            e = Subscript(e, tuple(subs), pos=self._pos(t))
        return e

    def parse_atom(self):
        t = self.peek()
        if t.type == TokenType.INT:
            self.next()
            return IntLit(t.value, pos=self._pos(t))
        if self.at_kw("true", "false"):
            self.next()
            return BoolLit(t.value == "true", pos=self._pos(t))
        if self.at_kw("forAll", "exists", "sum"):
            if t.value == "sum" and self.peek(1).type == TokenType.OP \
                    and self.peek(1).value == "(":
                self.next()
                return self.parse_call("sum", t)
            return self.parse_quantifier()
        if t.type == TokenType.IDENT:
            self.next()
            if self.at_op("("):
                return self.parse_call(t.value, t)
            return Ident(t.value, pos=self._pos(t))
        if self.at_op("("):
            self.next()
            parts = [self.parse_expr(EXPR_PREC)]
            while self.at_op(","):
                self.next()
                parts.append(self.parse_expr(EXPR_PREC))
            self.expect_op(")")
            e = parts[0]
            for p in parts[1:]:
                e = BinOp("/\\", e, p, pos=self._pos(t))
            return e
        if self.at_op("["):
            return self.parse_matrix_or_compr()
        raise ParseError(f"unexpected {t.value!r} in expression",
                         t.line, t.col)

    def parse_call(self, name, t):
        self.expect_op("(")
        args = []
        if not self.at_op(")"):
            args.append(self.parse_expr(EXPR_PREC))
            while self.at_op(","):
                self.next()
                args.append(self.parse_expr(EXPR_PREC))
        self.expect_op(")")
        return Call(name, tuple(args), pos=self._pos(t))

    def parse_quantifier(self):
        t = self.next()
        names = [self.expect_ident().value]
        while self.at_op(","):
            self.next()
            names.append(self.expect_ident().value)
        self.expect_op(":")
        dom = self.parse_domain()
        self.expect_op(".")
        body = self.parse_expr(QUANT_BODY_PREC)
        return Quant(t.value, tuple(names), dom, body, pos=self._pos(t))

    def parse_matrix_or_compr(self):
        t = self.expect_op("[")
        if self.at_op("]"):
            self.next()
            return MatrixLit((), None, pos=self._pos(t))
        first = self.parse_expr(EXPR_PREC)
        if self.at_op("|"):
            self.next()
            return self.parse_comprehension(first, t)
        items = [first]
        while self.at_op(","):
            self.next()
            items.append(self.parse_expr(EXPR_PREC))
        dom = None
        if self.at_op(";"):
            self.next()
            dom = self.parse_domain()
        self.expect_op("]")
        return MatrixLit(tuple(items), dom, pos=self._pos(t))

    def parse_comprehension(self, head, t):
        gens, conds = [], []
        while True:
            if self._generator_ahead():
                names = [self.expect_ident().value]
                while self.at_op(","):
                    self.next()
                    names.append(self.expect_ident().value)
                self.expect_op(":")
                dom = self.parse_domain()
                gens.extend((n, dom) for n in names)
            else:
                conds.append(self.parse_expr(EXPR_PREC))
            if self.at_op(","):
                self.next()
                continue
            break
        dom = None
        if self.at_op(";"):
            self.next()
            dom = self.parse_domain()
        self.expect_op("]")
        return Compr(head, tuple(gens), tuple(conds), dom, pos=self._pos(t))

    def _generator_ahead(self) -> bool:
        j = 0
        if self.peek(j).type != TokenType.IDENT:
            return False
        j += 1
        while (self.peek(j).type == TokenType.OP and self.peek(j).value == ","
               and self.peek(j + 1).type == TokenType.IDENT):
            j += 2
        return self.peek(j).type == TokenType.OP and self.peek(j).value == ":"

    def parse_set_rhs(self):
        if self.at_kw("int", "bool") or self._matrix_dom_ahead() or (
                self.at_op("(") and self.peek(1).type == TokenType.KEYWORD
                and self.peek(1).value in ("int", "bool")):
            return self.parse_domain()
        return self.parse_expr(BIN_OPS["in"][0] + 1)

    # ------------------------------------------------------------- domains

    def _matrix_dom_ahead(self) -> bool:
        return self.at_ident("matrix") and self.peek(1).type == TokenType.IDENT \
            and self.peek(1).value == "indexed"

    def parse_domain(self, min_prec=0):
        d = self.parse_domain_atom()
        while True:
            t = self.peek()
            if self.at_kw("union") and min_prec <= 1:
                self.next()
                d = DomBinOp("union", d, self.parse_domain(2),
                             pos=self._pos(t))
            elif self.at_kw("intersect") and min_prec <= 2:
                self.next()
                d = DomBinOp("intersect", d, self.parse_domain(3),
                             pos=self._pos(t))
            elif self.at_op("-") and min_prec <= 1:
                self.next()
                d = DomBinOp("-", d, self.parse_domain(2), pos=self._pos(t))
            else:
                break
        return d

    def parse_domain_atom(self):
        t = self.peek()
        if self.at_kw("bool"):
            self.next()
            return BoolDom(pos=self._pos(t))
        if self.at_kw("int"):
            self.next()
            if not self.at_op("("):
                return IntParseDom(((None, None),), pos=self._pos(t))
            self.next()
            items = []
            if not self.at_op(")"):
                while True:
                    items.append(self.parse_range_item())
                    if self.at_op(","):
                        self.next()
                        continue
                    break
            self.expect_op(")")
            return IntParseDom(tuple(items), pos=self._pos(t))
        if self._matrix_dom_ahead():
            self.next()  # matrix
            self.next()  # indexed
            by = self.expect_ident()
            if by.value != "by":
                raise ParseError("expected 'by' after 'matrix indexed'",
                                 by.line, by.col)
            self.expect_op("[")
            idx = [self.parse_domain()]
            while self.at_op(","):
                self.next()
                idx.append(self.parse_domain())
            self.expect_op("]")
            of = self.expect_ident()
            if of.value != "of":
                raise ParseError("expected 'of' in matrix domain",
                                 of.line, of.col)
            base = self.parse_domain()
            return MatrixDom(tuple(idx), base, pos=self._pos(t))
        if self.at_op("("):
            self.next()
            d = self.parse_domain()
            self.expect_op(")")
            return d
        if t.type == TokenType.IDENT:
            self.next()
            return DomIdent(t.value, pos=self._pos(t))
        raise ParseError(f"expected domain, found {t.value!r}", t.line, t.col)

    def parse_range_item(self):
        if self.at_op(".."):
            self.next()
            if self.at_op(",", ")"):
                return (None, None)
            return (None, self.parse_expr(0))
        lo = self.parse_expr(0)
        if self.at_op(".."):
            self.next()
            if self.at_op(",", ")"):
                return (lo, None)
            return (lo, self.parse_expr(0))
        return (lo, lo)

    # ---------------------------------------------------------- statements

    def parse_statements(self, param_mode=False):
        stmts = []
        while True:
            t = self.peek()
            if t.type == TokenType.EOF:
                break
            if self.at_kw("language"):
                raise ParseError("language header must be the first line",
                                 t.line, t.col)
            if self.at_kw("letting"):
                stmts.append(self.parse_letting())
                continue
            if param_mode:
                raise ParseError(
                    f"only letting statements are allowed in parameter "
                    f"files, found {t.value!r}", t.line, t.col)
            if self.at_kw("given"):
                stmts.append(self.parse_given())
                continue
            if self.at_kw("where"):
                self.next()
                e = self.parse_expr(EXPR_PREC)
                while self.at_op(","):
                    self.next()
                    e = BinOp("/\\", e, self.parse_expr(EXPR_PREC))
                stmts.append(WhereStmt(e, pos=self._pos(t)))
                continue
            if self.at_kw("find"):
                self.next()
                names = [self.expect_ident().value]
                while self.at_op(","):
                    self.next()
                    names.append(self.expect_ident().value)
                self.expect_op(":")
                dom = self.parse_domain()
                stmts.append(FindStmt(tuple(names), dom, pos=self._pos(t)))
                continue
            if self.at_kw("such"):
                self.next()
                self.expect_kw("that")
                stmts.append(SuchThatStmt(tuple(self.parse_constraint_list()),
                                          pos=self._pos(t)))
                continue
            if self.at_ident("minimising", "maximising"):
                self.next()
                e = self.parse_expr(EXPR_PREC)
                stmts.append(ObjectiveStmt(t.value == "minimising", e,
                                           pos=self._pos(t)))
                continue
            if self.at_ident("branching") and self.peek(1).type == \
                    TokenType.IDENT and self.peek(1).value == "on":
                self.next()
                self.next()
                e = self.parse_expr(EXPR_PREC)
                stmts.append(BranchingStmt(e, pos=self._pos(t)))
                continue
            if self.at_ident("heuristic"):
                self.next()
                name = self.expect_ident().value
                if name not in HEURISTIC_NAMES:
                    raise ParseError(f"unknown heuristic {name!r} (expected "
                                     f"one of {', '.join(HEURISTIC_NAMES)})",
                                     t.line, t.col)
                stmts.append(HeuristicStmt(name, pos=self._pos(t)))
                continue
            raise ParseError(f"unexpected {t.value!r}; expected a statement",
                             t.line, t.col)
        return stmts

    def _at_statement_start(self) -> bool:
        if self.peek().type == TokenType.EOF:
            return True
        if self.at_kw("given", "where", "letting", "find", "such"):
            return True
        if self.at_ident("minimising", "maximising", "heuristic"):
            return True
        return (self.at_ident("branching")
                and self.peek(1).type == TokenType.IDENT
                and self.peek(1).value == "on")

    def parse_constraint_list(self):
        cons = []
        if self._at_statement_start():
            return cons  # empty such-that section
        cons.append(self.parse_expr(EXPR_PREC))
        while self.at_op(","):
            self.next()
            if self._at_statement_start():
                break  # tolerate a trailing comma before the next section
            cons.append(self.parse_expr(EXPR_PREC))
        return cons

    def parse_given(self):
        t = self.expect_kw("given")
        names = [self.expect_ident().value]
        while self.at_op(","):
            self.next()
            names.append(self.expect_ident().value)
        self.expect_op(":")
        dom = self.parse_domain()
        return GivenStmt(tuple(names), dom, pos=self._pos(t))

    def parse_letting(self):
        t = self.expect_kw("letting")
        name = self.expect_ident().value
        if self.at_ident("be"):
            self.next()
            kw = self.expect_ident()
            if kw.value != "domain":
                raise ParseError("expected 'domain' after 'be'",
                                 kw.line, kw.col)
            return LettingDomStmt(name, self.parse_domain(), pos=self._pos(t))
        dom = None
        if self.at_op(":"):
            self.next()
            dom = self.parse_domain()
        self.expect_op("=")
        return LettingStmt(name, self.parse_expr(EXPR_PREC), dom,
                           pos=self._pos(t))

    def expect_eof(self):
        t = self.peek()
        if t.type != TokenType.EOF:
            raise ParseError(f"unexpected {t.value!r} after end of input",
                             t.line, t.col)


def parse_expr_text(text: str):
    p = Parser(tokenize(text))
    e = p.parse_expr(COMMA_PREC)
    while p.at_op(","):
        p.next()
        e = BinOp("/\\", e, p.parse_expr(COMMA_PREC))
    p.expect_eof()
    return e


def parse_model_text(text: str) -> Model:
    text = _strip_header(text, required=True)
    p = Parser(tokenize(text))
    stmts = p.parse_statements()
    p.expect_eof()
    return Model(tuple(stmts))


def parse_param_text(text: str):
    """Parameter files and -params strings: value lettings only."""
    text = _strip_header(text, required=False)
    p = Parser(tokenize(text))
    stmts = p.parse_statements(param_mode=True)
    p.expect_eof()
    for s in stmts:
        if isinstance(s, LettingDomStmt):
            raise ParseError(f"domain letting {s.name!r} is not allowed in a "
                             "parameter file", *(s.pos or (None, None)))
    return stmts
