"""Binary forms: evaluation, products, exact gcd and division."""

import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from rncurves.binforms import (
    BinaryForm,
    ParamPoint,
    distinct_parameters,
    divide_exact,
    gcd,
    gcd_many,
    product,
)
from rncurves.errors import DuplicateParameters

F = Fraction

coeff = st.integers(-6, 6).map(F)


def forms(min_degree=0, max_degree=4, allow_zero=False):
    def build(degree, cs):
        return BinaryForm(degree, tuple(cs[: degree + 1]))

    base = st.integers(min_degree, max_degree).flatmap(
        lambda d: st.tuples(st.just(d), st.lists(coeff, min_size=d + 1, max_size=d + 1))
    ).map(lambda t: build(*t))
    if allow_zero:
        return base
    return base.filter(lambda f: not f.is_zero())


def to_sympy(f, s, t):
    return sum(
        sympy.Rational(c.numerator, c.denominator) * s ** (f.degree - i) * t**i
        for i, c in enumerate(f.coeffs)
    )


def test_param_point_projective_equality():
    assert ParamPoint(2, 4) == ParamPoint(1, 2)
    assert ParamPoint(0, 5) == ParamPoint(0, 1)
    assert ParamPoint(1, 0) != ParamPoint(0, 1)
    with pytest.raises(ValueError):
        ParamPoint(0, 0)


def test_vanishing_at_vanishes_there_and_nowhere_else_frozen():
    p = ParamPoint(2, 3)
    lin = BinaryForm.vanishing_at(p)
    assert lin.degree == 1
    assert lin.evaluate_at(p) == 0
    assert lin.evaluate(1, 0) != 0
    assert lin.evaluate(0, 1) != 0


def test_evaluate_frozen():
    # s^2 + 2 s t + 3 t^2 at (2, 1) -> 4 + 4 + 3
    f = BinaryForm(2, (F(1), F(2), F(3)))
    assert f.evaluate(2, 1) == 11
    assert f.evaluate_at(ParamPoint(2, 1)) == 11


@given(forms(), forms())
@settings(max_examples=40, deadline=None)
def test_mul_degree_and_evaluation_homomorphism(f, g):
    h = f.mul(g)
    assert h.degree == f.degree + g.degree
    for u, v in [(1, 0), (0, 1), (1, 1), (2, -3)]:
        assert h.evaluate(u, v) == f.evaluate(u, v) * g.evaluate(u, v)


def test_product_of_linear_factors_vanishes_at_each():
    pts = [ParamPoint(1, k) for k in range(4)]
    f = product([BinaryForm.vanishing_at(p) for p in pts])
    assert f.degree == 4
    for p in pts:
        assert f.evaluate_at(p) == 0
    assert f.evaluate(0, 1) != 0


@given(forms(max_degree=3), forms(max_degree=3), forms(max_degree=2))
@settings(max_examples=50, deadline=None)
def test_gcd_degree_matches_sympy(f0, g0, h):
    f = f0.mul(h)
    g = g0.mul(h)
    ours = gcd(f, g)
    s, t = sympy.symbols("s t")
    theirs = sympy.gcd(
        sympy.Poly(to_sympy(f, s, t), s, t), sympy.Poly(to_sympy(g, s, t), s, t)
    )
    assert ours.degree == sympy.total_degree(theirs.as_expr())
    # the gcd divides both inputs exactly
    divide_exact(f, ours)
    divide_exact(g, ours)


def test_gcd_handles_powers_of_both_variables_frozen():
    s2t = BinaryForm(3, (F(0), F(1), F(0), F(0)))  # s^2 t
    st2 = BinaryForm(3, (F(0), F(0), F(1), F(0)))  # s t^2
    g = gcd(s2t, st2)
    assert g.degree == 2  # s t
    assert g.evaluate(1, 0) == 0 and g.evaluate(0, 1) == 0
    assert g.evaluate(1, 1) != 0


def test_gcd_with_zero_and_constants():
    f = BinaryForm(2, (F(1), F(0), F(-1)))
    assert gcd(f, BinaryForm.zero(5)).monic().coeffs == f.monic().coeffs
    c = BinaryForm.constant(7)
    assert gcd(f, c).degree == 0


def test_gcd_many_accumulates():
    p, q, r = ParamPoint(1, 1), ParamPoint(1, 2), ParamPoint(1, 3)
    lp, lq, lr = (BinaryForm.vanishing_at(x) for x in (p, q, r))
    f1 = lp.mul(lq)
    f2 = lp.mul(lr)
    f3 = lp.mul(lp)
    g = gcd_many([f1, f2, f3])
    assert g.degree == 1
    assert g.evaluate_at(p) == 0


@given(forms(max_degree=3), forms(min_degree=1, max_degree=3))
@settings(max_examples=40, deadline=None)
def test_divide_exact_round_trip(q, d):
    f = q.mul(d)
    back = divide_exact(f, d)
    assert back.degree == q.degree
    for u, v in [(1, 0), (0, 1), (1, 2), (3, -1)]:
        assert back.evaluate(u, v) == q.evaluate(u, v)


def test_divide_exact_rejects_non_divisor():
    f = BinaryForm(2, (F(1), F(0), F(1)))  # s^2 + t^2
    d = BinaryForm(1, (F(1), F(0)))  # s
    with pytest.raises(ValueError):
        divide_exact(f, d)


def test_effective_degree_counts_the_surviving_s_power():
    f = BinaryForm(3, (F(0), F(0), F(1), F(2)))  # s t^2 + 2 t^3
    assert f.effective_degree() == 1
    g = BinaryForm(3, (F(1), F(2), F(0), F(0)))  # s^3 + 2 s^2 t
    assert g.effective_degree() == 3
    assert BinaryForm.zero(3).effective_degree() == -1


def test_monic_normalizes_leading_coefficient():
    f = BinaryForm(2, (F(0), F(3), F(6)))
    m = f.monic()
    assert m.coeffs == (F(0), F(1), F(2))
    assert BinaryForm.zero(2).monic().is_zero()


def test_distinct_parameters_guard():
    distinct_parameters([ParamPoint(1, 0), ParamPoint(0, 1), ParamPoint(1, 1)])
    with pytest.raises(DuplicateParameters):
        distinct_parameters([ParamPoint(1, 2), ParamPoint(2, 4)])
