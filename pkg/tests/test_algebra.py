"""Coefficient field and sparse polynomial layer."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

from qtmac.algebra import (
    GENERIC,
    AlgebraError,
    ZPolynomial,
    divided_difference,
    elementary_symmetric,
    elementary_symmetric_at,
    poly_arith,
    scalar_canonicalize,
    scalar_eval,
    specialized,
    substitute,
    subst_t_power,
)

G = GENERIC
Q, T = G.q, G.t


# ---------------------------------------------------------------------------
# scalar canonical form
# ---------------------------------------------------------------------------

def test_canonicalize_cancels_common_factor():
    # (qt - q)/(t - 1) reduces to q
    assert scalar_canonicalize({(1, 1): 1, (1, 0): -1}, {(0, 1): 1, (0, 0): -1}) == Q


def test_canonicalize_zero_numerator():
    assert scalar_canonicalize(0, {(0, 1): -1, (0, 0): 1}) == G.zero


def test_canonicalize_sign_rule():
    # (1 - q)/(q - 1) is -1 after gcd and sign normalization
    assert scalar_canonicalize({(0, 0): 1, (1, 0): -1},
                               {(1, 0): 1, (0, 0): -1}) == -G.one


def test_canonicalize_rejects_zero_denominator():
    with pytest.raises(AlgebraError):
        scalar_canonicalize({(0, 0): 1}, 0)


def test_denominator_leading_coefficient_positive():
    x = scalar_canonicalize({(1, 0): 1}, {(0, 1): -1, (0, 0): 1})  # q/(1-t)
    assert x.denom.LC > 0
    assert G.text(x) == "-q/(t - 1)"


def test_canonical_text_form():
    x = scalar_canonicalize({(2, 1): 1, (1, 0): -3, (0, 0): 1},
                            {(0, 1): 1, (0, 0): -1})
    num, den = G.num_den_text(x)
    assert num == "q^2*t - 3*q + 1"
    assert den == "t - 1"


def test_common_content_removed():
    x = scalar_canonicalize({(0, 0): 6}, {(0, 0): 4})
    assert G.num_den_text(x) == ("3", "2")


# ---------------------------------------------------------------------------
# random scalars: field axioms, involution, evaluation
# ---------------------------------------------------------------------------

small_polys = st.dictionaries(
    st.tuples(st.integers(0, 2), st.integers(0, 2)),
    st.integers(-4, 4), min_size=1, max_size=3)


@st.composite
def scalars(draw):
    num = draw(small_polys)
    den = draw(small_polys.filter(lambda d: any(d.values())))
    return scalar_canonicalize(num, den)


@settings(max_examples=40, deadline=None)
@given(scalars(), scalars(), scalars())
def test_field_axioms_spot_checks(a, b, c):
    assert a * (b + c) == a * b + a * c
    if b:
        assert (a / b) * b == a


@settings(max_examples=40, deadline=None)
@given(scalars())
def test_invert_params_is_involution(a):
    assert G.invert_params(G.invert_params(a)) == a


@settings(max_examples=25, deadline=None)
@given(scalars(), scalars())
def test_eval_commutes_with_arithmetic(a, b):
    qv, tv = Fraction(2, 5), Fraction(7, 3)
    assert scalar_eval(a * b, qv, tv) == scalar_eval(a, qv, tv) * scalar_eval(b, qv, tv)
    assert scalar_eval(a + b, qv, tv) == scalar_eval(a, qv, tv) + scalar_eval(b, qv, tv)


def test_invert_params_example():
    # q(1-t)/(1-qt) inverts to (t-1)/(qt-1)
    x = Q * (1 - T) / (1 - Q * T)
    assert G.invert_params(x) == (T - 1) / (Q * T - 1)


def test_subst_t_power():
    x = (1 - Q * T) / (1 - T ** 2)
    y = subst_t_power(x, 2)  # (1-q^3)/(1-q^4)
    assert y == (1 - Q ** 3) / (1 - Q ** 4)
    with pytest.raises(AlgebraError):
        subst_t_power(G.one / (T - Q), 1)


def test_scalar_eval_names_vanishing_factor():
    x = G.one / (T - Q)
    with pytest.raises(AlgebraError, match="q - t"):
        scalar_eval(x, Fraction(1, 2), Fraction(1, 2))


def test_specialized_context():
    ctx = specialized(Fraction(2, 5), Fraction(7, 3))
    assert ctx.monomial(1, -1) == Fraction(2, 5) * Fraction(3, 7)
    assert ctx.num_den_text(Fraction(-3, 7)) == ("-3", "7")
    with pytest.raises(AlgebraError):
        specialized(0, 1)
    with pytest.raises(AlgebraError):
        ctx.invert_params(Fraction(1, 2))
    inv = ctx.inverted()
    assert inv.qval == Fraction(5, 2) and inv.tval == Fraction(3, 7)


# ---------------------------------------------------------------------------
# polynomials
# ---------------------------------------------------------------------------

def z(i, n=2):
    return ZPolynomial.variable(n, i)


def test_poly_arith_examples():
    p = poly_arith(z(1) + z(2), z(1) - z(2), "mul")
    assert p == ZPolynomial(2, {(2, 0): G.one, (0, 2): -G.one})
    some = ZPolynomial(2, {(1, 0): G.one, (0, 1): T})
    assert poly_arith(some, some.scale(-G.one), "add").is_zero
    one = ZPolynomial.constant(2, G.one)
    assert poly_arith(some, one, "mul") == some


def test_poly_arith_rejects_mismatched_arity():
    with pytest.raises(AlgebraError):
        poly_arith(ZPolynomial.constant(2, G.one), ZPolynomial.constant(3, G.one),
                   "add")


def test_non_laurent_rejects_negative_exponents():
    with pytest.raises(AlgebraError):
        ZPolynomial(2, {(-1, 0): G.one})
    ZPolynomial(2, {(-1, 0): G.one}, laurent=True)


def test_elementary_symmetric():
    assert elementary_symmetric(2, 1) == z(1) + z(2)
    assert elementary_symmetric(2, 2) == ZPolynomial(2, {(1, 1): G.one})
    assert elementary_symmetric(3, 0) == ZPolynomial.constant(3, G.one)
    assert len(elementary_symmetric(4, 2).terms) == 6
    with pytest.raises(AlgebraError):
        elementary_symmetric(2, 3)


def test_substitute_modes():
    p = ZPolynomial(2, {(0, 1): Q * (1 - T) / (1 - Q * T)})
    inv = substitute(p, "invert-params")
    assert inv == ZPolynomial(2, {(0, 1): (T - 1) / (Q * T - 1)})

    lp = ZPolynomial(2, {(1, -1): G.one}, laurent=True)
    assert substitute(lp, "invert-vars") == ZPolynomial(
        2, {(-1, 1): G.one}, laurent=True)

    # z2 - 1/t at (1, 1/t) vanishes
    p2 = ZPolynomial(2, {(0, 1): G.one, (0, 0): -G.monomial(0, -1)})
    val = substitute(p2, "at-point", point=(G.one, G.monomial(0, -1)))
    assert val == G.zero
    with pytest.raises(AlgebraError):
        substitute(p2, "at-point", point=(G.one,))


def test_top_homogeneous():
    p = ZPolynomial(2, {(0, 1): G.one, (0, 0): -G.monomial(0, -1)})
    assert p.top_homogeneous() == ZPolynomial(2, {(0, 1): G.one})
    one = ZPolynomial.constant(2, G.one)
    assert one.top_homogeneous() == one
    with pytest.raises(AlgebraError):
        ZPolynomial.zero(2).top_homogeneous()


def test_constant_term():
    # 1 - z1/z2 - q z2/z1 + q
    p = ZPolynomial(2, {
        (0, 0): G.one + Q,
        (1, -1): -G.one,
        (-1, 1): -Q,
    }, laurent=True)
    assert p.constant_term() == 1 + Q
    assert ZPolynomial(2, {(1, 0): G.one}).constant_term() == 0
    assert ZPolynomial.constant(2, G.from_int(5)).constant_term() == G.from_int(5)


def test_poly_text():
    p = ZPolynomial(2, {(0, 1): G.one, (0, 0): -G.monomial(0, -1)})
    assert p.text(G) == "z2 - 1/t"
    p2 = ZPolynomial(2, {(1, 0): G.one, (0, 1): (T - 1) / (Q * T - 1)})
    assert p2.text(G) == "z1 + ((t - 1)/(q*t - 1))*z2"


small_zpolys = st.dictionaries(
    st.tuples(st.integers(0, 2), st.integers(0, 2)),
    st.sampled_from([1, -1, 2]),
    min_size=1, max_size=3,
).map(lambda d: ZPolynomial(2, {e: G.from_int(c) for e, c in d.items()}))


@settings(max_examples=30, deadline=None)
@given(small_zpolys, small_zpolys)
def test_top_homogeneous_multiplicative(p, q_poly):
    prod = p * q_poly
    if prod.is_zero:
        return
    assert prod.top_homogeneous() == p.top_homogeneous() * q_poly.top_homogeneous()


@settings(max_examples=30, deadline=None)
@given(small_zpolys, st.integers(1, 1))
def test_divided_difference_is_exact_division(p, i):
    # (z_i - z_{i+1}) * DD(p) reconstructs s_i p - p
    diff = p.swap_vars(i) - p
    mult = ZPolynomial(2, {(1, 0): G.one, (0, 1): -G.one})
    assert mult * divided_difference(p, i) == diff


def test_elementary_symmetric_at_matches_polynomial():
    pts = (Q, T, Q * T)
    for r in range(4):
        direct = elementary_symmetric_at(pts, r)
        via_poly = elementary_symmetric(3, r).at_point(pts)
        assert direct == via_poly
