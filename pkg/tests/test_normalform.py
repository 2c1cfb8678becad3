import random

import pytest
from hypothesis import given, settings, strategies as st

from conftest import make_e1
from doubleplane.instances import DegreeProfile, ProfileError, random_bmatrix, random_form
from doubleplane.normalform import (AddMultiple, BMatrix, HilbertBurchMatrix, InvariantError,
                                    PreconditionError, Scale, build_curve_ideal,
                                    check_good_residual_equivalences, check_hp2, compute_p,
                                    curve_ideal_from_G, extract_triple, genus_formula, is_curve,
                                    maximal_minors_of_M, preserves_J, row_equivalence_test,
                                    stable_hilbert_value, verify_expected_residual)
from doubleplane.polycore import Ideal, hilbert_function, ring_S, saturation_check


def P(text):
    return ring_S().parse(text)


def _s2_instance():
    # row weights (0, -1): the second row of A is quadratic
    return BMatrix.create([[P("y"), P("z"), P("t")], [P("z^2"), P("t^2"), P("y^2")]],
                          [P("t"), P("y"), P("z")], [P("t^3"), P("y^4"), P("z^3")], P("1"))


# -- construction and invariants ----------------------------------------------
def test_hilbert_burch_requires_codim_two():
    HilbertBurchMatrix.create([[P("y"), P("z")]])
    with pytest.raises(InvariantError) as err:
        HilbertBurchMatrix.create([[P("y"), P("y")]])
    assert err.value.rule == "Hilbert-Burch codimension"


def test_e1_weights_and_invariants(e1):
    assert e1.row_weights == (0, 0)
    assert e1.col_weights == (1, 1, 1)
    assert (e1.delta, e1.deg_h, e1.d) == (2, 0, 4)
    assert e1.minor_degrees == (1, 1)
    assert e1.syzygy_degrees == (2,)
    assert compute_p(e1) == P("y^2 + z*t")


def test_compute_p_small_delta():
    b = BMatrix.create([[P("y"), P("z")]], [P("0"), P("1")], [P("t^2"), P("y")], P("t"))
    # p is y up to the sign fixed by p = (-1)^s B_{s+2}
    assert compute_p(b) == -P("y")
    assert b.delta == 1
    assert b.d == 3


def test_degenerate_p_is_rejected():
    with pytest.raises(InvariantError) as err:
        BMatrix.create([[P("y"), P("z"), P("0")], [P("0"), P("y"), P("z")]], [P("y"), P("z"), P("0")],
                       [P("t^2"), P("t^2"), P("t^2")], P("1"))
    assert err.value.rule == "degenerate p"


def test_condition_iii_violation_is_named():
    with pytest.raises(InvariantError) as err:
        BMatrix.create([[P("y"), P("z")]], [P("t"), P("-y")], [P("1"), P("0")], P("1"))
    assert err.value.rule == "condition (iii)"


def test_inhomogeneous_b_rejected():
    with pytest.raises(InvariantError):
        BMatrix.create([[P("y"), P("z")]], [P("t"), P("-y^2")], [P("t"), P("y")], P("1"))


def test_e1_curve_ideal_generators(e1_curve):
    R = e1_curve.ring
    gens = {R.parse(g) for g in ["x^2", "x*y^2 + x*z*t", "x*y*z + y^2*z + x*y*t + z^2*t",
                                 "x*y^2 + y^3 + y*z*t - x*t^2"]}
    assert set(e1_curve.J.gens) == gens


def test_s0_degenerate_case():
    b = BMatrix.create([], [P("y^2 + z*t")], [P("t")], P("1"))
    c = build_curve_ideal(b)
    R = c.ring
    assert c.J == Ideal(R, [R.parse(g) for g in ["x^2", "x*y^2 + x*z*t", "y^2 + z*t + x*t"]])
    assert check_hp2(c)
    tri = extract_triple(c)
    assert tri.deg_Z == 0
    with pytest.raises(ValueError):
        is_curve(b)


# -- the expected residual sequence ---------------------------------------------
def test_e1_expected_residual(e1_curve):
    assert verify_expected_residual(e1_curve)
    assert saturation_check(e1_curve.J)
    rep = check_good_residual_equivalences(e1_curve)
    assert rep.as_dict() == {"quotient": True, "syzygy": True, "minors": True, "consistent": True}
    assert rep.f_from_syzygy == (P("t"),)


@pytest.mark.parametrize("extra,expected", [("y^2 + z*t", True), ("z^2", False)])
def test_tampered_first_generator(e1, extra, expected):
    G = [e1.B_minors[0] + P(extra), -e1.B_minors[1]]
    c = curve_ideal_from_G(e1, G)
    assert verify_expected_residual(c) is expected
    rep = check_good_residual_equivalences(c)
    assert rep.consistent
    assert rep.quotient is expected and rep.syzygy is expected and rep.minors is expected


def test_zero_G_list(e1):
    c = curve_ideal_from_G(e1, [P("0"), P("0")])
    assert check_good_residual_equivalences(c).as_dict()["consistent"]
    assert all(check_good_residual_equivalences(c).as_dict().values())


def test_hp2(e1_curve, e1):
    assert check_hp2(e1_curve)
    bad = curve_ideal_from_G(e1, [e1.B_minors[0] + P("z^2"), -e1.B_minors[1]])
    with pytest.raises(PreconditionError):
        check_hp2(bad)


# -- triple, genus, curve criterion ---------------------------------------------
def test_e1_triple(e1_curve):
    tri = extract_triple(e1_curve)
    assert (tri.delta, tri.deg_h, tri.d, tri.deg_Z, tri.genus) == (2, 0, 4, 1, 0)
    # Z lies on C': p vanishes on Z
    assert e1_curve.source.p in tri.I_Z
    assert tri.I_Z == Ideal(ring_S(), [P("y"), P("z")])


def test_genus_formula_examples():
    assert genus_formula(4, 2, 1) == 0
    assert genus_formula(6, 3, 1) == 3
    for deg_Z in range(4):
        assert genus_formula(2, 1, deg_Z) == -deg_Z
    with pytest.raises(ValueError):
        genus_formula(3, 2, 0)


def test_stable_hilbert_value():
    S = ring_S()
    assert stable_hilbert_value(Ideal(S, [P("y"), P("z")])) == 1


def test_is_curve_examples(e1):
    assert is_curve(e1)
    assert not is_curve(make_e1(f_col=("y", "y")))
    # the builder itself accepts the non-curve
    assert verify_expected_residual(build_curve_ideal(make_e1(f_col=("y", "y"))))
    assert maximal_minors_of_M(make_e1(f_col=("y", "y"))) == Ideal(ring_S(), [P("y"), P("z")])


def test_is_curve_random_s2():
    rng = random.Random(5)
    hits = sum(is_curve(random_bmatrix(DegreeProfile.uniform(2), rng)) for _ in range(5))
    assert hits >= 4


# -- row operations -------------------------------------------------------------
def test_scaling_row_of_A(e1):
    res = row_equivalence_test(e1, Scale(0, 2))
    assert res.same_ideal and res.expected_same
    # without the compensating change of h the ideal moves
    assert not row_equivalence_test(e1, Scale(0, 2), compensate=False).same_ideal


def test_scaling_p_row(e1):
    assert row_equivalence_test(e1, Scale(1, 5)).same_ideal


def test_adding_p_row_to_A_changes_J(e1):
    assert not preserves_J(e1, AddMultiple(1, 0, P("3")))
    res = row_equivalence_test(e1, AddMultiple(1, 0, P("3")))
    assert res.expected_same is False
    assert res.same_ideal is False


def test_adding_A_row_to_p_row(e1):
    assert row_equivalence_test(e1, AddMultiple(0, 1, P("2"))).same_ideal


def test_inhomogeneous_row_op_rejected(e1):
    with pytest.raises(InvariantError):
        row_equivalence_test(e1, AddMultiple(1, 0, P("t")))


def test_s2_polynomial_row_op():
    b = _s2_instance()
    assert b.row_weights == (0, -1, 0)
    assert row_equivalence_test(b, AddMultiple(0, 1, P("y"))).same_ideal


# -- random instances -------------------------------------------------------------
def test_profile_parse():
    prof = DegreeProfile.parse("cols=1:1:2,rows=0:0,p=1,f=3", 2)
    assert prof.cols == (1, 1, 2) and prof.deg_f1 == 3
    with pytest.raises(ProfileError, match="condition \\(iii\\)"):
        DegreeProfile.parse("a=1,f=0", 1).weights()
    with pytest.raises(ProfileError):
        DegreeProfile.parse("q=1", 1)


def test_random_form_is_homogeneous():
    rng = random.Random(0)
    f = random_form(ring_S(), 3, rng)
    assert f.is_homogeneous() and f.degree() == 3


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10**6), st.integers(1, 2), st.integers(0, 1))
def test_random_instances_have_expected_residual(seed, s, h):
    b = random_bmatrix(DegreeProfile.uniform(s, 1, 1, h), random.Random(seed))
    assert b.d == 2 * b.delta + b.deg_h
    c = build_curve_ideal(b)
    assert verify_expected_residual(c)
    assert check_good_residual_equivalences(c).consistent
    assert check_hp2(c, verified=True)


def test_stable_value_matches_degree_of_Z():
    b = random_bmatrix(DegreeProfile.uniform(2), random.Random(3))
    tri = extract_triple(build_curve_ideal(b))
    # two general linear rows: Z is 3 points
    assert tri.deg_Z == 3
    assert hilbert_function(b.hb.ideal, 10) == 3
