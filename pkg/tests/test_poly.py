"""Polynomial arithmetic, parsing, printing, derivatives, evaluation."""

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conormal import ParseError
from conormal.poly import (
    GREVLEX,
    LEX,
    PolynomialRing,
    block_order,
    evaluate,
    parse_polynomial,
    partial_derivative,
)

from strategies import polynomials

R = PolynomialRing(["x", "y", "z"])
X, Y, Z = R.gens()


class TestParse:
    def test_two_term_surface_equation(self):
        p = parse_polynomial("z^2 - x*y^2", R)
        assert p == Z**2 - X * Y**2
        assert len(p.terms) == 2

    def test_zero(self):
        p = parse_polynomial("0", R)
        assert not p
        assert p.total_degree() == -1

    def test_square_expansion(self):
        # hand oracle: (x+y)^2 = x^2 + 2xy + y^2
        assert parse_polynomial("(x+y)^2", R) == X**2 + 2 * X * Y + Y**2

    def test_rational_literal(self):
        assert parse_polynomial("3/4*x", R) == X.scale(Fraction(3, 4))

    def test_unknown_variable_reports_position(self):
        with pytest.raises(ParseError) as err:
            parse_polynomial("x + w", R)
        assert err.value.position == 4

    def test_syntax_error(self):
        with pytest.raises(ParseError):
            parse_polynomial("x + * y", R)
        with pytest.raises(ParseError):
            parse_polynomial("x ^ y", R)
        with pytest.raises(ParseError):
            parse_polynomial("(x + y", R)

    def test_differential_rejected_in_polynomial_context(self):
        with pytest.raises(ParseError):
            parse_polynomial("x*dy", R)

    def test_roundtrip_canonical(self):
        for text in ["z^2 - x*y^2", "x^3 - y*z", "1/2*x - 7", "0", "-x + y - 1"]:
            p = parse_polynomial(text, R)
            assert parse_polynomial(str(p), R) == p
            assert str(parse_polynomial(str(p), R)) == str(p)


class TestDerivative:
    def test_power_rule(self):
        assert partial_derivative(X**3 - Y * Z, 0) == 3 * X**2
        assert partial_derivative(Z**2 - X * Y**2, 2) == 2 * Z

    def test_constant(self):
        assert not partial_derivative(R.const(7), 0)

    def test_index_out_of_range(self):
        with pytest.raises(ValueError):
            partial_derivative(X, 3)


class TestEvaluate:
    def test_point_on_surface(self):
        assert evaluate(Z**2 - X * Y**2, [1, 1, 1]) == 0

    def test_origin(self):
        assert evaluate(X**3 - Y * Z, [0, 0, 0]) == 0

    def test_generic_point(self):
        assert evaluate(X**3 - Y * Z, (1, 1, 2)) == -1

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            evaluate(X, [1, 2])


class TestRingAxioms:
    @given(polynomials(R), polynomials(R), polynomials(R))
    def test_add_mul_axioms(self, p, q, r):
        assert p + q == q + p
        assert (p + q) + r == p + (q + r)
        assert p * q == q * p
        assert (p * q) * r == p * (q * r)
        assert p * (q + r) == p * q + p * r
        assert not (p - p)

    @given(polynomials(R), polynomials(R))
    def test_evaluate_is_ring_homomorphism(self, p, q):
        point = [Fraction(1, 2), Fraction(-2), Fraction(3)]
        assert evaluate(p * q, point) == evaluate(p, point) * evaluate(q, point)
        assert evaluate(p + q, point) == evaluate(p, point) + evaluate(q, point)

    @given(polynomials(R))
    def test_partials_commute(self, p):
        for i in range(3):
            for j in range(i):
                assert partial_derivative(partial_derivative(p, i), j) == partial_derivative(
                    partial_derivative(p, j), i
                )

    @given(polynomials(R), polynomials(R), st.integers(0, 2))
    def test_leibniz(self, p, q, i):
        assert partial_derivative(p * q, i) == partial_derivative(p, i) * q + p * partial_derivative(q, i)

    @given(polynomials(R))
    def test_print_parse_stability(self, p):
        assert str(parse_polynomial(str(p), R)) == str(p)


class TestOrders:
    def test_grevlex_examples(self):
        # x > y > z, and degree dominates
        assert GREVLEX.key((1, 0, 0)) > GREVLEX.key((0, 1, 0)) > GREVLEX.key((0, 0, 1))
        assert GREVLEX.key((0, 3, 0)) > GREVLEX.key((2, 0, 0))
        # classic grevlex tie-break: x*y^3 > x^2*y*z
        assert GREVLEX.key((1, 3, 0)) > GREVLEX.key((2, 1, 1))

    def test_lex_examples(self):
        assert LEX.key((1, 0, 0)) > LEX.key((0, 9, 9))

    def test_block_order_elimination_property(self):
        order = block_order(1)
        # any monomial containing the first variable beats any without it
        assert order.key((1, 0, 0)) > order.key((0, 9, 9))
        assert order.key((0, 1, 0)) > order.key((0, 0, 1))

    def test_one_is_minimal(self):
        one = (0, 0, 0)
        for order in (LEX, GREVLEX, block_order(1)):
            for m in [(1, 0, 0), (0, 1, 0), (2, 1, 3)]:
                assert order.key(m) > order.key(one)


class TestRing:
    def test_duplicate_names_rejected(self):
        with pytest.raises(ValueError):
            PolynomialRing(["x", "x"])

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            PolynomialRing([])

    def test_ring_mismatch_raises(self):
        other = PolynomialRing(["a", "b"])
        with pytest.raises(ValueError):
            X + other.var(0)

    def test_degree_of_zero_is_minus_one(self):
        assert R.zero.total_degree() == -1
        assert R.one.total_degree() == 0
