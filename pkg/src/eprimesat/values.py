"""Runtime values: integers, booleans, UNDEF, and shaped matrices.

Matrix elements are stored flat in row-major order and may be constants or
residual expressions (decision atoms survive instantiation). Slicing
re-indexes the result contiguously from 1; full indexing out of bounds
yields UNDEF, which the evaluation rules absorb at boolean contexts.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .domains import IntDomain


class _Undef:
    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "undefined"


UNDEF = _Undef()


@dataclass(frozen=True)
class Matrix:
    index_doms: tuple  # tuple[IntDomain, ...], each finite
    elems: tuple  # flat row-major; int/bool/Expr entries
    elem_bool: bool

    @property
    def ndim(self):
        return len(self.index_doms)

    @property
    def extents(self):
        return tuple(d.size() for d in self.index_doms)

    def index_values(self):
        """Index tuples in row-major (lexicographic) order."""
        return itertools.product(*(tuple(d.values()) for d in self.index_doms))

    def offset_of(self, idxs):
        """Flat offset of a full index tuple, or None if out of bounds."""
        off = 0
        for d, i in zip(self.index_doms, idxs):
            vals = tuple(d.values())
            try:
                k = vals.index(i)
            except ValueError:
                return None
            off = off * len(vals) + k
        return off

    def rows(self):
        """Split the leading dimension into submatrices."""
        sub_doms = self.index_doms[1:]
        stride = 1
        for d in sub_doms:
            stride *= d.size()
        return [
            Matrix(sub_doms, self.elems[i * stride:(i + 1) * stride],
                   self.elem_bool)
            for i in range(self.index_doms[0].size())
        ]


def matrix_1d(elems, elem_bool, index_dom=None) -> Matrix:
    if index_dom is None:
        index_dom = IntDomain.of((1, len(elems))) if elems else IntDomain.empty()
    return Matrix((index_dom,), tuple(elems), elem_bool)


def matrix_from_rows(rows, outer_dom=None) -> Matrix:
    """Stack same-shaped submatrices along a new leading dimension."""
    first = rows[0]
    if outer_dom is None:
        outer_dom = IntDomain.of((1, len(rows)))
    elems = tuple(x for r in rows for x in r.elems)
    return Matrix((outer_dom,) + first.index_doms, elems, first.elem_bool)


def subscript_matrix(m: Matrix, subs):
    """Apply a full subscript list (value per dim, None = keep dimension).

    Returns an element (possibly symbolic), a re-indexed Matrix for slices,
    or UNDEF when any given index is outside its index domain.
    """
    keep = []
    picks = []
    for d, s in zip(m.index_doms, subs):
        vals = tuple(d.values())
        if s is None:
            keep.append(range(len(vals)))
            picks.append(None)
        else:
            if not d.contains(s):
                return UNDEF
            keep.append((vals.index(s),))
            picks.append(s)
    strides = []
    acc = 1
    for d in reversed(m.index_doms):
        strides.append(acc)
        acc *= d.size()
    strides.reverse()
    chosen = [
        m.elems[sum(i * st for i, st in zip(combo, strides))]
        for combo in itertools.product(*keep)
    ]
    open_dims = [i for i, p in enumerate(picks) if p is None]
    if not open_dims:
        return chosen[0]
    doms = tuple(IntDomain.of((1, m.index_doms[i].size())) for i in open_dims)
    return Matrix(doms, tuple(chosen), m.elem_bool)


def flatten_matrix(m: Matrix, depth=None) -> Matrix:
    """flatten(M) -> 1-d; flatten(n, M) flattens the first n+1 dimensions."""
    if depth is None or depth >= m.ndim - 1:
        return matrix_1d(m.elems, m.elem_bool)
    merged = 1
    for d in m.index_doms[:depth + 1]:
        merged *= d.size()
    doms = (IntDomain.of((1, merged)),) + tuple(
        IntDomain.of((1, d.size())) for d in m.index_doms[depth + 1:])
    return Matrix(doms, m.elems, m.elem_bool)


def matrix_str(m: Matrix, elem=None, with_doms=True, nest_sep=",") -> str:
    """Canonical rendering: `[a,b,c]` with `;domain` when not indexed 1..n."""
    if elem is None:
        elem = _const_str
    if m.ndim <= 1:
        inner = ",".join(elem(x) for x in m.elems)
    else:
        inner = nest_sep.join(
            matrix_str(r, elem, with_doms, nest_sep) for r in m.rows())
    if with_doms and m.index_doms:
        d = m.index_doms[0]
        n = m.extents[0]
        default = (n == 0 and d.is_empty()) or \
            (n > 0 and d.ranges == ((1, n),))
        if not default:
            inner += f";{d}"
    return f"[{inner}]"


def _const_str(v):
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, int):
        return str(v)
    from .ast_nodes import expr_str

    return expr_str(v)


def is_const(v) -> bool:
    return isinstance(v, (int, bool)) or (
        isinstance(v, Matrix) and all(isinstance(x, (int, bool))
                                      for x in v.elems))
