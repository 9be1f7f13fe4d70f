"""Model-level rewriting passes: unification, aggregation, domain
filtering, CSE, redundant-variable removal and lex decomposition."""
import itertools

from eprimesat.ast_nodes import BinOp, Call, LinCmp, VarRef, expr_str
from eprimesat.cse import ac_cse, active_cse
from eprimesat.instantiate import ground_model
from eprimesat.parser import parse_model_text
from eprimesat.simplify import simplify_model
from eprimesat.transform import (aggregate, decompose_lex, delete_vars,
                                 filter_domains, remove_redundant_vars)
from eprimesat.undef import apply_undef

from helpers import HDR, count, solutions


def prep(model):
    gm = ground_model(parse_model_text(model), [])
    apply_undef(gm)
    simplify_model(gm)
    return gm


# ------------------------------------------------------------ delete_vars

def test_alias_unifies_with_domain_intersection():
    gm = prep(HDR + "find x : int(1..5)\nfind y : int(3..8)\n"
              "such that x = y\n")
    delete_vars(gm)
    assert list(gm.env.decision) == ["x"]
    assert str(gm.env.decision["x"].domain) == "int(3..5)"
    assert gm.deleted == {"y": ("alias", "x")}
    assert gm.constraints == []


def test_alias_restored_in_solutions():
    m = HDR + "find x : int(1..5)\nfind y : int(3..8)\nsuch that x = y\n"
    sols = solutions(m, sat_level=0)
    assert sorted(s["x"] for s in sols) == [3, 4, 5]
    assert all(s["x"] == s["y"] for s in sols)


def test_constant_assignment_deletes_var():
    gm = prep(HDR + "find x : int(1..5)\nsuch that x = 3\n")
    delete_vars(gm)
    assert gm.deleted == {"x": ("const", 3)}
    assert "x" not in gm.env.decision


def test_contradictory_constants_unsat():
    gm = prep(HDR + "find x : int(1..5)\nsuch that x = 3, x = 4\n")
    delete_vars(gm)
    assert gm.unsat


def test_alias_with_empty_intersection_unsat():
    gm = prep(HDR + "find x : int(1..2)\nfind y : int(4..5)\n"
              "such that x = y\n")
    delete_vars(gm)
    assert gm.unsat


def test_bool_iff_alias():
    m = HDR + "find a, b : bool\nsuch that a <-> b\n"
    gm = prep(m)
    delete_vars(gm)
    assert len(gm.env.decision) == 1
    sols = solutions(m, sat_level=0)
    assert len(sols) == 2
    assert all(s["a"] == s["b"] for s in sols)


# -------------------------------------------------------------- aggregate

def test_disequality_triangle_becomes_alldiff():
    gm = prep(HDR + "find x, y, z : int(1..3)\n"
              "such that x != y, y != z, x != z\n")
    aggregate(gm)
    assert [expr_str(c) for c in gm.constraints] == ["allDiff([x,y,z])"]


def test_less_than_edges_grow_the_clique():
    m = (HDR + "find x, y, z : int(1..3)\n"
         "such that x != y, x < z, y < z\n")
    gm = prep(m)
    aggregate(gm)
    ads = [c for c in gm.constraints
           if isinstance(c, Call) and c.func == "allDiff"]
    assert len(ads) == 1 and len(ads[0].args[0].m.elems) == 3
    # the orderings stay; only the disequality is subsumed
    assert sum(isinstance(c, LinCmp) for c in gm.constraints) == 2
    assert count(m, opt_level=2, sat_level=0) == 2  # z=3, {x,y}={1,2}


def test_alldiff_absorbs_covered_disequalities():
    gm = prep(HDR + "find w, x, y, z : int(1..4)\n"
              "such that allDiff([x,y,z]), x != w, y != w, z != w\n")
    aggregate(gm)
    assert [expr_str(c) for c in gm.constraints] == ["allDiff([w,x,y,z])"]


def test_atmost_atleast_merge_into_gcc():
    gm = prep(HDR + "find M : matrix indexed by [int(1..4)] of int(1..2)\n"
              "such that atmost(M, [2,3], [1,2]), "
              "atleast(M, [2,3], [1,2])\n")
    aggregate(gm)
    assert [expr_str(c) for c in gm.constraints] == \
        ["gcc([M[1],M[2],M[3],M[4]],[1,2],[2,3])"]


def test_aggregation_preserves_counts():
    m = (HDR + "find x, y, z : int(1..3)\n"
         "such that x != y, y != z, x != z\n")
    assert count(m, opt_level=2, sat_level=0) == 6
    assert count(m, opt_level=0, sat_level=0) == 6


# ---------------------------------------------------------- filter_domains

def test_unary_bound_shrinks_domain_and_drops_constraint():
    gm = prep(HDR + "find x : int(0..9)\nsuch that x <= 2\n")
    assert filter_domains(gm)
    assert str(gm.env.decision["x"].domain) == "int(0..2)"
    assert gm.constraints == []


def test_linear_equation_prunes_both_sides():
    gm = prep(HDR + "find x : int(0..9)\nfind y : int(0..3)\n"
              "such that x + y = 10\n")
    filter_domains(gm)
    assert str(gm.env.decision["x"].domain) == "int(7..9)"
    assert str(gm.env.decision["y"].domain) == "int(1..3)"


def test_alldiff_propagates_fixed_values():
    gm = prep(HDR + "find x : int(5)\nfind y : int(4..6)\n"
              "such that allDiff([x,y])\n")
    filter_domains(gm)
    assert str(gm.env.decision["y"].domain) == "int(4,6)"
    assert not any(isinstance(c, Call) for c in gm.constraints)


def test_table_drops_unsupported_rows_and_values():
    gm = prep(HDR + "find x, y : int(0..5)\n"
              "such that table([x,y], [[0,1],[2,9],[4,5]])\n")
    filter_domains(gm)
    assert str(gm.env.decision["x"].domain) == "int(0,4)"
    assert str(gm.env.decision["y"].domain) == "int(1,5)"
    tabs = [c for c in gm.constraints
            if isinstance(c, Call) and c.func == "table"]
    assert len(tabs[0].args[1].m.rows()) == 2


def test_membership_constraint_restricts_domain():
    gm = prep(HDR + "find x : int(0..9)\nsuch that x in int(2,4)\n")
    filter_domains(gm)
    assert str(gm.env.decision["x"].domain) == "int(2,4)"
    assert gm.constraints == []


def test_infeasible_filtering_flags_unsat():
    gm = prep(HDR + "find x : int(0..3)\nsuch that x >= 7\n")
    filter_domains(gm)
    assert gm.unsat


# -------------------------------------------------------------------- CSE

def test_active_cse_shares_complementary_comparisons():
    gm = prep(HDR + "find x, y, b, c : int(0..3)\n"
              "such that (b=1) -> (x < y), (c=1) -> (x >= y)\n")
    active_cse(gm)
    txt = [expr_str(c) for c in gm.constraints]
    assert any("!(" in t for t in txt)
    # both constraints now mention the same comparison
    kept = [t.split("\\/ ")[1] for t in txt]
    assert kept[0].strip("!()") == kept[1].strip("!()")


def test_ac_cse_extracts_common_sum():
    gm = prep(HDR + "find x, y, z, w : int(0..3)\n"
              "such that x + y + z = 5, x + y + w = 4\n")
    ac_cse(gm, False)
    txt = [expr_str(c) for c in gm.constraints]
    assert txt == ["aux0 + z = 5", "aux0 + w = 4", "aux0 - x - y = 0"]
    assert str(gm.env.decision["aux0"].domain) == "int(0..6)"


def test_ac_cse_negated_matching_shares_one_aux():
    gm = prep(HDR + "find x, y, z, w : int(0..3)\n"
              "such that x + y + z = 5, w - x - y = 0\n")
    ac_cse(gm, True)
    aux = [n for n in gm.env.decision if n.startswith("aux")]
    assert len(aux) == 1
    # without negated matching there is nothing to extract
    gm = prep(HDR + "find x, y, z, w : int(0..3)\n"
              "such that x + y + z = 5, w - x - y = 0\n")
    ac_cse(gm, False)
    assert not any(n.startswith("aux") for n in gm.env.decision)


def test_cse_modes_preserve_counts():
    m = (HDR + "find x, y, z, w : int(0..3)\n"
         "such that x + y + z = 5, x + y + w = 4, "
         "((x < y) /\\ (z < w)) \\/ ((x >= y) /\\ (z >= w))\n")
    want = sum(1 for x, y, z, w in itertools.product(range(4), repeat=4)
               if x + y + z == 5 and x + y + w == 4
               and ((x < y and z < w) or (x >= y and z >= w)))
    for mode in ("none", "identical", "active", "ac", "active-ac"):
        assert count(m, cse_mode=mode, sat_level=0) == want, mode


# --------------------------------------------------- remove_redundant_vars

def test_unmentioned_var_is_removed():
    gm = prep(HDR + "find x : int(1..2)\nfind y : int(5..7)\n"
              "such that x = 1\n")
    remove_redundant_vars(gm)
    assert gm.removed_redundant == {"y"}


def test_branching_on_protects_vars():
    gm = prep(HDR + "find x : int(1..2)\nfind y : int(5..7)\n"
              "branching on [y]\nsuch that x = 1\n")
    remove_redundant_vars(gm)
    assert gm.removed_redundant == set()


def test_removed_var_restored_with_domain_minimum():
    m = HDR + "find x : int(1..2)\nfind y : int(5..7)\nsuch that x = 1\n"
    assert solutions(m) == [{"x": 1, "y": 5}]
    assert count(m, sat_level=0) == 3


# ----------------------------------------------------------- lex rewriting

def test_lex_decomposition_removes_lex_nodes():
    gm = prep(HDR + "find x, y, z : int(0..2)\n"
              "such that [x,y,z] <lex [z,y,x]\n")
    decompose_lex(gm)

    def no_lex(e):
        if isinstance(e, BinOp) and e.op in ("<lex", "<=lex"):
            return False
        from eprimesat.cse import _sub_exprs
        return all(no_lex(s) for s in _sub_exprs(e))

    assert all(no_lex(c) for c in gm.constraints)


def test_nested_ladder_defs_are_hoisted():
    gm = prep(HDR + "find w : bool\nfind x, y, z : int(0..2)\n"
              "such that w <-> ([x,y,z] <=lex [z,y,x])\n")
    before = len(gm.constraints)
    decompose_lex(gm)
    hoisted = gm.constraints[before:]
    assert hoisted  # ladder definitions moved to the top level
    assert all(isinstance(d, BinOp) and d.op == "<->"
               and any(isinstance(s, VarRef) and s.name.startswith("aux")
                       for s in (d.a, d.b)) for d in hoisted)


def test_lex_counts_match_list_comparison():
    for n in (2, 3, 4):
        vs = ",".join(f"x{i}" for i in range(n))
        ws = ",".join(f"y{i}" for i in range(n))
        finds = (f"find {vs} : int(0..2)\nfind {ws} : int(0..2)\n")
        for op, cmp in (("<lex", list.__lt__), ("<=lex", list.__le__),
                        (">lex", list.__gt__), (">=lex", list.__ge__)):
            m = HDR + finds + f"such that [{vs}] {op} [{ws}]\n"
            want = sum(1 for t in itertools.product(range(3), repeat=2 * n)
                       if cmp(list(t[:n]), list(t[n:])))
            assert count(m, sat_level=0) == want, (n, op)


def test_unequal_length_vectors():
    m = (HDR + "find x, y, z : int(0..2)\n"
         "such that [x] <lex [y,z]\n")
    assert count(m, sat_level=0) == 18  # x <= y, z free
    m = (HDR + "find x, y, z : int(0..2)\n"
         "such that [x,y] <=lex [z]\n")
    assert count(m, sat_level=0) == 9  # x < z, y free


def test_negated_lex():
    m = (HDR + "find x, y : int(0..2)\n"
         "such that !([x,y] <lex [y,x])\n")
    want = sum(1 for x, y in itertools.product(range(3), repeat=2)
               if not [x, y] < [y, x])
    assert count(m, sat_level=0) == want


def test_lex_under_iff_regression():
    # the ladder's aux definitions must hold outside the <-> scope
    m = (HDR + "find x1 : int(0,6)\nfind x2 : int(-5,-1,1,5)\n"
         "such that (x2 < x1) <-> ([x2,x2,x1] <=lex [4,3,x1])\n")
    for o in range(4):
        assert count(m, opt_level=o, sat_level=0) == 6, o
