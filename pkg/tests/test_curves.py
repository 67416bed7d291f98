from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from arcfloer import (
    CurveError,
    CurveSyntaxError,
    NonReducedError,
    PuiseuxBranch,
    TruncationError,
    characteristic_data,
    contact_order,
    contact_profile,
    intersection_multiplicity,
    parse_curve,
)


def test_parse_single_cusp():
    curve = parse_curve("branch { x = t^2; y = t^3 }")
    assert curve.num_branches == 1
    branch = curve.branches[0]
    assert branch.axis == "x" and branch.r1 == 2
    assert branch.terms == ((3, Fraction(1)),)


def test_parse_tacnode_contact():
    curve = parse_curve("branch { x = t; y = t^2 } branch { x = t; y = -t^2 }")
    assert curve.num_branches == 2
    assert curve.contact[0][1] == 2


def test_parse_duplicate_branch_rejected():
    with pytest.raises(NonReducedError):
        parse_curve("branch { x = t^2; y = t^3 } branch { x = t^2; y = t^3 }")


def test_parse_conjugate_branch_rejected():
    # (t^2, -t^3) is the conjugate parametrization of the same cusp
    with pytest.raises(NonReducedError):
        parse_curve("branch { x = t^2; y = t^3 } branch { x = t^2; y = -t^3 }")


def test_parse_smooth_germ_rejected():
    with pytest.raises(CurveError, match="smooth"):
        parse_curve("branch { x = t; y = t^2 }")


def test_parse_nonprimitive_rejected():
    with pytest.raises(CurveError, match="primitive"):
        parse_curve("branch { x = t^4; y = t^6 }")


def test_parse_syntax_error_reports_line():
    with pytest.raises(CurveSyntaxError, match="line 3"):
        parse_curve('curve "x"\n\nbranch { x = q; y = t }')


def test_parse_name_comments_and_rationals():
    curve = parse_curve(
        '# a comment\ncurve "weird"\n'
        "branch { x = t^2; y = -1*t^3 + 3/4*t^5 }  # trailing\n"
    )
    assert curve.name == "weird"
    assert curve.branches[0].terms == (
        (3, Fraction(-1)),
        (5, Fraction(3, 4)),
    )


def test_parse_vertical_branch_axis():
    curve = parse_curve("branch { x = t; y = 0 } branch { x = t^2; y = t }")
    assert curve.branches[1].axis == "y"
    assert curve.branches[1].terms == ((2, Fraction(1)),)


def test_parse_unrepresentable_leading_coefficient():
    # y has smaller order than the parameter power but is not a bare power,
    # so the branch cannot be rewritten with rational coefficients
    with pytest.raises(CurveSyntaxError):
        parse_curve("branch { x = t^3; y = 2*t^2 } branch { x = t; y = 0 }")


def test_characteristic_data_cusp():
    inv = characteristic_data(PuiseuxBranch("x", 2, ((3, Fraction(1)),)))
    assert inv.g == 1
    assert inv.k == (3,) and inv.r == (2, 1)
    assert inv.newton_pairs == ((3, 2),)


def test_characteristic_data_smooth():
    inv = characteristic_data(PuiseuxBranch("x", 1, ((2, Fraction(1)),)))
    assert inv.g == 0 and inv.r == (1,)


def test_characteristic_data_two_pairs():
    inv = characteristic_data(
        PuiseuxBranch("x", 4, ((6, Fraction(1)), (7, Fraction(1))))
    )
    assert inv.g == 2
    assert inv.k == (6, 7)
    assert inv.r == (4, 2, 1)
    assert inv.kappa == (6, 1)
    assert inv.newton_pairs == ((3, 2), (1, 2))


def test_characteristic_data_conjugation_invariant():
    # replacing t by -t flips odd coefficients only; invariants agree
    plain = PuiseuxBranch("x", 2, ((3, Fraction(2)), (5, Fraction(1, 3))))
    conj = PuiseuxBranch("x", 2, ((3, Fraction(-2)), (5, Fraction(-1, 3))))
    assert characteristic_data(plain) == characteristic_data(conj)


def test_contact_order_tacnode():
    a = PuiseuxBranch("x", 1, ((2, Fraction(1)),))
    b = PuiseuxBranch("x", 1, ((2, Fraction(-1)),))
    assert contact_order(a, b) == 2


def test_contact_order_distinct_tangents():
    cusp = PuiseuxBranch("x", 2, ((3, Fraction(1)),))
    line = PuiseuxBranch("x", 1, ((1, Fraction(1)),))
    assert contact_order(cusp, line) == 1


def test_contact_profile_conjugate_divergence():
    # against a deeper copy of itself the first conjugate-divergent
    # exponent is k1/r1 = 6/4
    b1 = PuiseuxBranch("x", 4, ((6, Fraction(1)), (7, Fraction(1))))
    b2 = PuiseuxBranch(
        "x", 4, ((6, Fraction(1)), (7, Fraction(1)), (9, Fraction(1)))
    )
    profile = dict((q, c) for q, c in contact_profile(b1, b2))
    assert profile[Fraction(3, 2)] == 2  # the two conjugates outside mu_2
    assert contact_order(b1, b2) == Fraction(9, 4)


def test_contact_order_symmetric():
    b1 = PuiseuxBranch("x", 2, ((3, Fraction(1)), (4, Fraction(2))))
    b2 = PuiseuxBranch("x", 4, ((6, Fraction(1)), (7, Fraction(1))))
    assert contact_order(b1, b2) == contact_order(b2, b1)


def test_contact_indistinguishable_at_truncation():
    a = PuiseuxBranch("x", 1, ((2, Fraction(1)),), truncation=3)
    b = PuiseuxBranch("x", 1, ((2, Fraction(1)), (9, Fraction(1))))
    with pytest.raises(TruncationError):
        contact_order(a, b)


def test_truncation_must_clear_characteristic_exponents():
    with pytest.raises(TruncationError):
        parse_curve("branch { x = t^4; y = t^6 + t^7 } truncated at 7")
    curve = parse_curve("branch { x = t^4; y = t^6 + t^7 } truncated at 8")
    assert curve.branches[0].truncation == 8


def test_intersection_multiplicity_examples():
    cusp = PuiseuxBranch("x", 2, ((3, Fraction(1)),))
    line = PuiseuxBranch("x", 1, ())
    assert intersection_multiplicity(cusp, line) == 3
    a = PuiseuxBranch("x", 1, ((2, Fraction(1)),))
    b = PuiseuxBranch("x", 1, ((2, Fraction(-1)),))
    assert intersection_multiplicity(a, b) == 2
    vert = PuiseuxBranch("y", 1, ())
    assert intersection_multiplicity(cusp, vert) == 2


def test_contact_table_ultrametric(corpus):
    for curve in corpus.values():
        n = curve.num_branches
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    if len({i, j, k}) == 3:
                        assert curve.contact[i][k] >= min(
                            curve.contact[i][j], curve.contact[j][k]
                        )


@given(
    c3=st.fractions(min_value=Fraction(-5), max_value=Fraction(5)).filter(bool),
    c5=st.fractions(min_value=Fraction(-5), max_value=Fraction(5)).filter(bool),
)
def test_newton_pair_product_is_multiplicity(c3, c5):
    branch = PuiseuxBranch("x", 4, ((6, c3), (7, c5)))
    inv = characteristic_data(branch)
    product = 1
    for kappa_hat, r_hat in inv.newton_pairs:
        from math import gcd

        assert gcd(kappa_hat, r_hat) == 1
        product *= r_hat
    assert product == branch.r1
