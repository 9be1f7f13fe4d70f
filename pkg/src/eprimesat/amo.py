"""At-most-one and exactly-one clause schemes.

All schemes define their auxiliary variables in both directions so the
CNF keeps a one-to-one correspondence with assignments of the original
variables (counting stays exact).
"""

from __future__ import annotations

import math

AMO_SCHEMES = ("product", "commander", "ladder", "tree")


def encode_amo(cnf, lits, scheme="product"):
    lits = [l for l in lits if l != cnf.FALSE]
    if cnf.TRUE in lits:
        for l in lits:
            if l != cnf.TRUE:
                cnf.add_clause((-l,))
        return
    if len(lits) <= 1:
        return
    if scheme == "product":
        _amo_product(cnf, lits)
    elif scheme == "commander":
        _amo_commander(cnf, lits)
    elif scheme == "ladder":
        _amo_ladder(cnf, lits)
    elif scheme == "tree":
        _amo_tree(cnf, lits)
    else:
        raise ValueError(f"unknown AMO scheme {scheme!r}")


def encode_eo(cnf, lits, scheme="product"):
    cnf.add_clause(tuple(lits))
    encode_amo(cnf, lits, scheme)


def _amo_pairwise(cnf, lits):
    for i in range(len(lits)):
        for j in range(i + 1, len(lits)):
            cnf.add_clause((-lits[i], -lits[j]))


def _amo_product(cnf, lits):
    n = len(lits)
    if n <= 4:
        _amo_pairwise(cnf, lits)
        return
    p = math.isqrt(n - 1) + 1
    q = (n + p - 1) // p
    rows = cnf.new_vars(p)
    cols = cnf.new_vars(q)
    row_members = [[] for _ in range(p)]
    col_members = [[] for _ in range(q)]
    for k, l in enumerate(lits):
        i, j = divmod(k, q)
        cnf.add_clause((-l, rows[i]))
        cnf.add_clause((-l, cols[j]))
        row_members[i].append(l)
        col_members[j].append(l)
    for i in range(p):
        cnf.add_clause((-rows[i],) + tuple(row_members[i]))
    for j in range(q):
        cnf.add_clause((-cols[j],) + tuple(col_members[j]))
    _amo_product(cnf, rows)
    _amo_product(cnf, cols)


def _amo_commander(cnf, lits, group=3):
    while len(lits) > group:
        commanders = []
        for i in range(0, len(lits), group):
            chunk = lits[i:i + group]
            if len(chunk) == 1:
                commanders.append(chunk[0])
                continue
            c = cnf.new_var()
            _amo_pairwise(cnf, chunk)
            for l in chunk:
                cnf.add_clause((-l, c))
            cnf.add_clause((-c,) + tuple(chunk))
            commanders.append(c)
        lits = commanders
    _amo_pairwise(cnf, lits)


def _amo_ladder(cnf, lits):
    n = len(lits)
    if n <= 2:
        _amo_pairwise(cnf, lits)
        return
    # s[i] <-> (lits[0] \/ ... \/ lits[i])
    s = cnf.new_vars(n - 1)
    for i in range(n - 1):
        cnf.add_clause((-lits[i], s[i]))
        if i > 0:
            cnf.add_clause((-s[i - 1], s[i]))
            cnf.add_clause((-s[i], lits[i], s[i - 1]))
        else:
            cnf.add_clause((-s[0], lits[0]))
    for i in range(1, n):
        cnf.add_clause((-lits[i], -s[i - 1]))


def _amo_tree(cnf, lits):
    # t <-> (a \/ b) at each internal node, plus (-a, -b)
    level = list(lits)
    while len(level) > 1:
        nxt = []
        for i in range(0, len(level) - 1, 2):
            a, b = level[i], level[i + 1]
            t = cnf.new_var()
            cnf.add_clause((-a, -b))
            cnf.add_clause((-a, t))
            cnf.add_clause((-b, t))
            cnf.add_clause((-t, a, b))
            nxt.append(t)
        if len(level) % 2:
            nxt.append(level[-1])
        level = nxt
