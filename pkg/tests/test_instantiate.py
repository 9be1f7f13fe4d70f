"""Parameter binding, find grounding, where checks, branching-on."""
import pytest

from eprimesat.errors import InstanceError, ModelError
from eprimesat.instantiate import element_names, ground_model
from eprimesat.parser import parse_model_text, parse_param_text

H = "language ESSENCE' 1.0\n"


def ground(model, param=None):
    stmts = parse_param_text(param) if param else []
    return ground_model(parse_model_text(model), stmts)


def test_scalar_given():
    gm = ground(H + "given n : int\nfind x : int(1..n)\n",
                H + "letting n = 4\n")
    assert gm.env.decision["x"].domain.size() == 4


def test_missing_parameter():
    with pytest.raises(InstanceError):
        ground(H + "given n : int\nfind x : int(1..n)\n")


def test_given_domain_check():
    with pytest.raises(InstanceError):
        ground(H + "given n : int(1..5)\nfind x : int(1..n)\n",
               H + "letting n = 9\n")


def test_where_clause_rejects_instance():
    model = H + "given n : int\nwhere n > 3\nfind x : int(1..n)\n"
    with pytest.raises(InstanceError):
        ground(model, H + "letting n = 2\n")
    ground(model, H + "letting n = 4\n")


def test_matrix_given_shape_check():
    model = (H + "given v : matrix indexed by [int(1..3)] of int(0..9)\n"
             "find x : int(1..3)\nsuch that x = v[2]\n")
    with pytest.raises(InstanceError):
        ground(model, H + "letting v = [1, 2]\n")
    ground(model, H + "letting v = [1, 2, 3]\n")


def test_matrix_elements_row_major():
    gm = ground(H + "find M : matrix indexed by "
                "[int(0..1), int(5..6)] of int(1..2)\n")
    assert gm.var_order == ["M[0,5]", "M[0,6]", "M[1,5]", "M[1,6]"]
    assert [n for f in gm.finds for n in element_names(f)] == gm.var_order


def test_letting_chains_and_domain_letting():
    gm = ground(H + "given n : int\nletting c = 2\nletting d = c*n\n"
                "letting D be domain int(1..d)\nfind x : D\n",
                H + "letting n = 3\n")
    assert gm.env.decision["x"].domain.size() == 6


def test_letting_in_param_file_may_use_model_lettings():
    gm = ground(H + "letting base = 10\ngiven n : int\n"
                "find x : int(1..n)\n",
                H + "letting n = 5\n")
    assert gm.env.decision["x"].domain.size() == 5


def test_branching_on():
    gm = ground(H + "find x : int(1..3)\nfind y : int(1..3)\n"
                "branching on [y]\n")
    assert gm.branching == ["y"]


def test_objective_recorded():
    gm = ground(H + "find x : int(1..3)\nminimising x\n")
    minimise, obj = gm.objective
    assert minimise is True


def test_bool_find():
    gm = ground(H + "find a : bool\n")
    assert gm.finds[0].is_bool


def test_empty_domain_find_is_unsat():
    gm = ground(H + "find x : int(1..0)\nsuch that x = x\n")
    assert gm.unsat or gm.env.decision["x"].domain.is_empty()


def test_duplicate_names_rejected():
    with pytest.raises(ModelError):
        ground(H + "find x : int(1..3)\nfind x : int(1..4)\n")


def test_extra_param_lettings_are_plain_constants():
    gm = ground(H + "find x : int(1..3)\n", H + "letting n = 2\n")
    assert gm.env.decision["x"].domain.size() == 3
