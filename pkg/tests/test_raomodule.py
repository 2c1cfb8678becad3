import random

import pytest
from hypothesis import given, settings, strategies as st

from conftest import make_e1
from doubleplane.instances import DegreeProfile, random_bmatrix
from doubleplane.normalform import HilbertBurchMatrix, build_curve_ideal, is_curve, maximal_minors_of_M
from doubleplane.polycore import Ideal, ring_R, ring_S
from doubleplane.raomodule import (NotACurveError, RaoPresentation, annihilator_check, check_self_duality,
                                   construct_curve_from_module, presentation_shape_check, duality_bridge,
                                   lci_randomized_check, minimal_generator_count, minimal_relation_count,
                                   rao_function, rao_presentation)
from doubleplane.resolution import build_resolution, dual_cokernel


def P(text):
    return ring_S().parse(text)


@pytest.fixture(scope="module")
def e1_rao():
    return rao_presentation(make_e1())


def test_e1_presentation(e1_rao, R):
    assert e1_rao.gen_degrees == (1,)
    assert e1_rao.matrix_R() == [[R.parse(v) for v in "xyzt"]]


def test_non_curve_rejected():
    with pytest.raises(NotACurveError):
        rao_presentation(make_e1(f_col=("y", "y")))


def test_s2_presentation_shape():
    b = random_bmatrix(DegreeProfile.uniform(2), random.Random(1))
    r = rao_presentation(b)
    m = r.matrix_R()
    assert len(m) == 2 and all(len(row) == 6 for row in m)
    R = ring_R()
    x, zero = R.var("x"), R.zero()
    assert [m[0][0], m[0][1], m[1][0], m[1][1]] == [x, zero, zero, x]


def test_zero_row_rejected():
    with pytest.raises(ValueError):
        RaoPresentation.create([[P("0"), P("0"), P("0")]], [1], ring_S())


def test_e1_rao_function(e1_rao):
    rho = rao_function(e1_rao)
    assert rho.as_dict() == {1: 1}
    assert rho.finite and rho.total == 1
    assert rao_function(e1_rao, over="R").as_dict() == {1: 1}


def test_infinite_length_flag():
    r = rao_presentation(make_e1(f_col=("y", "y")), allow_infinite=True)
    rho = rao_function(r)
    assert not rho.finite
    assert all(rho[j] == 1 for j in range(1, rho.bound + 1))


def test_self_duality_examples(e1_rao):
    assert check_self_duality(rao_function(e1_rao), 4)
    assert check_self_duality({0: 2, 1: 2}, 3)
    assert not check_self_duality({0: 1, 1: 2}, 3)


def test_duality_bridge_e1(e1_curve):
    rho = rao_function(rao_presentation(e1_curve))
    bridge = duality_bridge(rho, dual_cokernel(build_resolution(e1_curve)))
    assert all(a == b for a, b in bridge.values())
    assert bridge[1] == (1, 1)


def test_generators_and_relations(e1_rao):
    assert minimal_generator_count(e1_rao) == 1
    assert minimal_relation_count(e1_rao) == 4
    r2 = rao_presentation(random_bmatrix(DegreeProfile.uniform(2), random.Random(4)))
    assert minimal_generator_count(r2) == 2


def test_annihilator_e1(e1_rao):
    rep = annihilator_check(e1_rao)
    assert rep.passed and rep.ann_S_ok and rep.ann_R_ok


def test_annihilator_needs_finite_length():
    r = rao_presentation(make_e1(f_col=("y", "y")), allow_infinite=True)
    with pytest.raises(NotACurveError):
        annihilator_check(r)


# -- shape check and construction --------------------------------------------------
def test_shape_check_examples(R):
    assert presentation_shape_check([["x", "y", "z", "t"]], ring=R)
    rep = presentation_shape_check([["x", "y", "z", "1"]], ring=R)
    assert not rep and rep.reasons == ["entry (1,4) = 1 is a unit, not in (y,z,t)"]
    rep = presentation_shape_check([["x", "0", "y", "z", "0", "y"], ["0", "x", "0", "y", "z", "z"]], ring=R)
    assert not rep and "I_s(M) is not irrelevant" in rep.reasons


def test_shape_check_malformed_twists(R):
    with pytest.raises(ValueError):
        presentation_shape_check([["x", "y", "z", "t"]], gen_degrees=[1, 2], ring=R)


def test_construct_linear_row():
    b = construct_curve_from_module([[P("y"), P("z"), P("t")]])
    assert b.A == ((P("y"), P("z")),)
    assert b.f_col[0] == P("t")
    assert rao_function(rao_presentation(b)).as_dict() == {1: 1}


def test_construct_with_quadratic_column():
    b = construct_curve_from_module([[P("y"), P("z"), P("t^2")]])
    assert b.h == P("t") and b.d == 5
    assert check_self_duality(rao_function(rao_presentation(b)), b.d)


def test_construct_rejects_units():
    with pytest.raises(ValueError, match="unit"):
        construct_curve_from_module([[P("y"), P("z"), P("1")]])


def test_construct_is_seeded():
    M = [[P("y"), P("z"), P("t")]]
    assert construct_curve_from_module(M, seed=3) == construct_curve_from_module(M, seed=3)


@settings(max_examples=8, deadline=None)
@given(st.integers(0, 10**6))
def test_round_trip_s2(seed):
    rng = random.Random(seed)
    b = random_bmatrix(DegreeProfile((1, 1, 1), (0, 0), 1, 0), rng)
    if not is_curve(b):
        return
    b2 = construct_curve_from_module(b.M, seed=seed)
    assert maximal_minors_of_M(b2) == maximal_minors_of_M(b)
    rho = rao_function(rao_presentation(b2))
    assert check_self_duality(rho, b2.d)


# -- locally complete intersection ----------------------------------------------------
def test_lci_examples():
    assert lci_randomized_check(HilbertBurchMatrix.create([[P("y"), P("z")]]), 3).certified
    non_lci = HilbertBurchMatrix.create([[P("y"), P("0"), P("z")], [P("0"), P("z"), P("-y")]])
    assert Ideal(ring_S(), non_lci.minors) == Ideal(ring_S(), [P("y^2"), P("y*z"), P("z^2")])
    assert not lci_randomized_check(non_lci, 10).certified
    with pytest.raises(ValueError):
        lci_randomized_check(non_lci, 0)


def test_e1_curve_is_curve(e1):
    assert is_curve(build_curve_ideal(e1))
