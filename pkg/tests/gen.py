"""Seeded random Essence Prime instances paired with their oracle AST.

Every instance carries both the rendered model text (fed to the package)
and the tuple AST evaluated by oracle.py.  The two representations are
built together, so a disagreement implicates the pipeline, not the tests.
"""
import random
from dataclasses import dataclass

CMP_OPS = ("=", "!=", "<", "<=")
LOGIC_OPS = ("/\\", "\\/", "->", "<->")
LEX_OPS = ("<lex", "<=lex", ">lex", ">=lex")


@dataclass
class Instance:
    variables: list          # (name, tuple of values); bools use (False, True)
    bools: set
    constraints: list
    objective: tuple = None  # (minimise, var name)

    @property
    def model_text(self):
        lines = ["language ESSENCE' 1.0"]
        for name, vals in self.variables:
            if name in self.bools:
                lines.append(f"find {name}: bool")
            else:
                lines.append(f"find {name}: int({_runs(vals)})")
        lines.append("such that")
        lines.append(",\n".join(render_bool(c) for c in self.constraints))
        if self.objective:
            minimise, name = self.objective
            lines.append(("minimising " if minimise else "maximising ") + name)
        return "\n".join(lines) + "\n"


def _runs(vals):
    out, i = [], 0
    while i < len(vals):
        j = i
        while j + 1 < len(vals) and vals[j + 1] == vals[j] + 1:
            j += 1
        out.append(str(vals[i]) if i == j else f"{vals[i]}..{vals[j]}")
        i = j + 1
    return ", ".join(out)


# ------------------------------------------------------------- rendering

def render_int(n):
    tag = n[0]
    if tag == "const":
        return str(n[1]) if n[1] >= 0 else f"({n[1]})"
    if tag == "var":
        return n[1]
    if tag == "un":
        return f"(-{render_int(n[2])})" if n[1] == "-" else f"|{render_int(n[2])}|"
    _, op, a, b = n
    return f"({render_int(a)} {op} {render_int(b)})"


def _rlist(items):
    return "[" + ", ".join(render_int(it) for it in items) + "]"


def render_bool(n):
    tag = n[0]
    if tag == "bvar":
        return n[1]
    if tag == "bconst":
        return "true" if n[1] else "false"
    if tag == "not":
        return f"(!{render_bool(n[1])})"
    if tag == "logic":
        _, op, a, b = n
        return f"({render_bool(a)} {op} {render_bool(b)})"
    if tag == "cmp":
        _, op, a, b = n
        return f"({render_int(a)} {op} {render_int(b)})"
    if tag == "sum":
        _, terms, op, k = n
        parts = " + ".join(f"(({c})*{v})" if c < 0 else f"({c}*{v})"
                           for c, v in terms)
        return f"(({parts}) {op} {k if k >= 0 else f'({k})'})"
    if tag == "alldiff":
        return f"allDiff({_rlist(n[1])})"
    if tag == "count":
        _, which, items, vals, occs = n
        return (f"{which}({_rlist(items)}, "
                f"[{', '.join(map(str, occs))}], "
                f"[{', '.join(map(str, vals))}])")
    if tag == "table":
        _, items, rows = n
        rows_s = ", ".join("[" + ", ".join(map(str, r)) + "]" for r in rows)
        return f"table({_rlist(items)}, [{rows_s}])"
    if tag == "lex":
        _, op, xs, ys = n
        return f"({_rlist(xs)} {op} {_rlist(ys)})"
    if tag == "elemcmp":
        _, items, idx, rhs = n
        return f"({_rlist(items)}[{idx}] = {render_int(rhs)})"
    if tag == "minmax":
        _, which, items, op, rhs = n
        return f"({which}({_rlist(items)}) {op} {render_int(rhs)})"
    raise ValueError(f"cannot render {n!r}")


# ------------------------------------------------------------ generation

class Gen:
    def __init__(self, seed):
        self.rng = random.Random(seed)

    def instance(self, want_objective=False):
        rng = self.rng
        n_int = rng.randint(1, 3)
        n_bool = rng.randint(0, 4 - n_int) if rng.random() < 0.3 else 0
        variables, bools = [], set()
        for i in range(n_int):
            size = rng.choice((1, 2, 3, 4)) if rng.random() < 0.15 \
                else rng.randint(2, 4)
            vals = tuple(sorted(rng.sample(range(-5, 7), size)))
            variables.append((f"x{i + 1}", vals))
        for i in range(n_bool):
            name = f"b{i + 1}"
            variables.append((name, (False, True)))
            bools.add(name)
        self.ints = [v for v in variables if v[0] not in bools]
        self.bools = sorted(bools)
        cons = [self.constraint() for _ in range(rng.randint(1, 4))]
        objective = None
        if want_objective:
            objective = (rng.random() < 0.5, rng.choice(self.ints)[0])
        return Instance(variables, bools, cons, objective)

    # ---- leaves

    def ivar(self):
        return ("var", self.rng.choice(self.ints)[0])

    def leaf(self):
        if self.rng.random() < 0.3:
            return ("const", self.rng.randint(-4, 5))
        return self.ivar()

    def item(self):
        """Global-constraint argument: a variable or small constant."""
        if self.rng.random() < 0.25:
            return ("const", self.rng.randint(-3, 4))
        return self.ivar()

    def domain_union(self):
        vals = set()
        for _, vs in self.ints:
            vals.update(vs)
        return sorted(vals)

    # ---- integer expressions

    def int_expr(self, depth=2):
        rng = self.rng
        if depth == 0 or rng.random() < 0.35:
            return self.leaf()
        op = rng.choice(("+", "-", "*", "/", "%", "abs"))
        if op == "abs":
            return ("un", "abs", self.int_expr(depth - 1))
        a = self.int_expr(depth - 1)
        # keep divisors flat so magnitudes stay small
        b = self.leaf() if op in ("/", "%") else self.int_expr(depth - 1)
        return ("arith", op, a, b)

    # ---- constraints

    def constraint(self, depth=1):
        rng = self.rng
        builders = [self.c_cmp, self.c_cmp, self.c_sum, self.c_alldiff,
                    self.c_count, self.c_table, self.c_lex, self.c_elem,
                    self.c_minmax]
        if self.bools:
            builders += [self.c_blit, self.c_blit]
        if depth > 0:
            builders += [lambda: self.c_logic(depth), lambda: self.c_not(depth)]
        return rng.choice(builders)()

    def c_cmp(self):
        op = self.rng.choice(CMP_OPS)
        return ("cmp", op, self.int_expr(), self.int_expr(1))

    def c_sum(self):
        rng = self.rng
        n = rng.randint(1, min(3, len(self.ints)))
        names = rng.sample([v[0] for v in self.ints], n)
        terms = [(rng.choice((1, 2, 3)) * rng.choice((1, -1)), nm)
                 for nm in names]
        k = rng.randint(-8, 8)
        return ("sum", terms, rng.choice(CMP_OPS), k)

    def c_alldiff(self):
        n = self.rng.randint(2, 4)
        return ("alldiff", [self.item() for _ in range(n)])

    def c_count(self):
        rng = self.rng
        which = rng.choice(("atmost", "atleast"))
        items = [self.item() for _ in range(rng.randint(2, 4))]
        pool = self.domain_union() or [0]
        k = rng.randint(1, min(2, len(pool)))
        vals = rng.sample(pool, k)
        occs = [rng.randint(0, 3) for _ in vals]
        return ("count", which, items, vals, occs)

    def c_table(self):
        rng = self.rng
        arity = rng.randint(1, min(3, len(self.ints)))
        names = rng.sample([v[0] for v in self.ints], arity)
        doms = {n: vs for n, vs in self.ints}
        rows = []
        for _ in range(rng.randint(1, 6)):
            row = [rng.choice(doms[nm]) if rng.random() < 0.9
                   else rng.randint(-5, 6) for nm in names]
            rows.append(row)
        return ("table", [("var", nm) for nm in names], rows)

    def c_lex(self):
        rng = self.rng
        n = rng.randint(1, 3)
        return ("lex", rng.choice(LEX_OPS),
                [self.item() for _ in range(n)],
                [self.item() for _ in range(n)])

    def c_elem(self):
        rng = self.rng
        items = [self.item() for _ in range(rng.randint(2, 3))]
        idx = rng.choice(self.ints)[0]
        return ("elemcmp", items, idx, self.item())

    def c_minmax(self):
        rng = self.rng
        items = [self.item() for _ in range(rng.randint(2, 3))]
        return ("minmax", rng.choice(("min", "max")), items,
                rng.choice(CMP_OPS), self.item())

    def c_blit(self):
        b = ("bvar", self.rng.choice(self.bools))
        return b if self.rng.random() < 0.5 else ("not", b)

    def c_logic(self, depth):
        op = self.rng.choice(LOGIC_OPS)
        return ("logic", op, self.constraint(depth - 1),
                self.constraint(depth - 1))

    def c_not(self, depth):
        return ("not", self.constraint(depth - 1))
