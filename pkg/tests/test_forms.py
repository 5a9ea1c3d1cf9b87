"""Exterior algebra: parsing, wedge, d, evaluation, the vector-field map,
and the radial potential."""

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conormal.forms import (
    DifferentialForm,
    Hyperplane,
    NotClosedError,
    evaluate_form,
    exterior_derivative,
    form_to_vector_field,
    format_form,
    parse_form,
    radial_potential,
    vector_field_to_form,
    volume_coefficient,
    wedge,
)
from conormal.poly import PolynomialRing

from strategies import forms, polynomials, random_form, random_polynomial

R = PolynomialRing(["x", "y", "z"])
X, Y, Z = R.gens()
R4 = PolynomialRing(["x", "y", "z", "t"])


def form(text, ring=R):
    parts = parse_form(text, ring)
    assert len(parts) == 1
    return parts[0]


class TestParseForm:
    def test_two_form_coefficients(self):
        w = form("x*dy*dz + 3*z*dx*dy")
        assert w.degree == 2
        assert w.coefficient((1, 2)) == X
        assert w.coefficient((0, 1)) == 3 * Z

    def test_sign_normalization(self):
        assert form("y*dz*dx").coefficient((0, 2)) == -Y

    def test_repeated_differential_is_zero(self):
        assert parse_form("x*dx*dx", R) == []

    def test_mixed_degrees_split(self):
        parts = parse_form("x + y*dx + z*dx*dy", R)
        assert [0, 1, 2] == [
            0 if not isinstance(p, DifferentialForm) else p.degree for p in parts
        ]

    def test_power_of_differential_rejected(self):
        from conormal import ParseError

        with pytest.raises(ParseError):
            parse_form("dx^2", R)

    def test_print_parse_roundtrip(self):
        for text in [
            "y*z*dx + 2*x*z*dy - 2*x*y*dz",
            "y*dx*dz - z*dx*dy",
            "(x*dy - y*dx)*dz*dt",
        ]:
            ring = R4 if "dt" in text else R
            parts = parse_form(text, ring)
            printed = format_form(parts[0])
            assert parse_form(printed, ring) == parts


class TestWedge:
    def test_conormality_witness_of_isolated_singularity(self):
        # by hand: (x dy^dz + 3z dx^dy) ^ d(x^3 - yz) = 3(x^3 - yz) dx^dy^dz
        f = X**3 - Y * Z
        eta = wedge(form("x*dy*dz + 3*z*dx*dy"), exterior_derivative(f))
        assert volume_coefficient(eta) == 3 * f

    def test_square_of_one_form_vanishes(self):
        dx = form("dx")
        assert not wedge(dx, dx)

    def test_degree_zero_acts_by_multiplication(self):
        w = form("x*dy*dz + 3*z*dx*dy")
        assert wedge(X, w) == w.scale(X)
        assert wedge(X, Y) == X * Y

    def test_overfull_degree_is_zero_form(self):
        w = form("x*dy*dz + 3*z*dx*dy")
        top = wedge(w, w)
        assert top.degree == 4 and not top

    @given(forms(R, 1), forms(R, 1))
    def test_anticommutativity_degree_one(self, a, b):
        assert wedge(a, b) == -wedge(b, a)

    @given(forms(R, 1), forms(R, 2))
    def test_commutativity_odd_even(self, a, b):
        assert wedge(a, b) == wedge(b, a)

    @given(forms(R, 1), forms(R, 1), forms(R, 1))
    @settings(max_examples=20)
    def test_associativity(self, a, b, c):
        assert wedge(wedge(a, b), c) == wedge(a, wedge(b, c))


class TestExteriorDerivative:
    def test_derivative_of_function(self):
        f = X**3 - Y * Z
        assert exterior_derivative(f) == form("3*x^2*dx - z*dy - y*dz")

    def test_derivative_of_constant(self):
        assert not exterior_derivative(R.const(5))

    def test_single_term(self):
        assert exterior_derivative(form("x*dy")) == form("dx*dy")

    @given(forms(R, 1))
    def test_dd_zero_degree_one(self, w):
        assert not exterior_derivative(exterior_derivative(w))

    @given(polynomials(R))
    def test_dd_zero_degree_zero(self, p):
        assert not exterior_derivative(exterior_derivative(p))

    @given(polynomials(R, max_terms=3), forms(R, 1))
    @settings(max_examples=20)
    def test_graded_leibniz(self, p, w):
        # degree 0 against degree 1
        assert exterior_derivative(wedge(p, w)) == wedge(exterior_derivative(p), w) + wedge(
            p, exterior_derivative(w)
        )

    @given(forms(R, 1), forms(R, 1))
    @settings(max_examples=20)
    def test_graded_leibniz_one_one(self, a, b):
        lhs = exterior_derivative(wedge(a, b))
        rhs = wedge(exterior_derivative(a), b) - wedge(a, exterior_derivative(b))
        assert lhs == rhs


class TestEvaluateForm:
    def test_vanishes_along_singular_axis(self):
        w = form("y*z*dx + 2*x*z*dy - 2*x*y*dz")
        assert not evaluate_form(w, [5, 0, 0])

    def test_constant_coefficients(self):
        dx = form("dx")
        assert evaluate_form(dx, [9, 9, 9]) == dx

    def test_at_origin(self):
        assert not evaluate_form(form("x*dy"), [0, 0, 0])

    @given(forms(R, 1), forms(R, 1))
    @settings(max_examples=20)
    def test_evaluation_is_multiplicative(self, a, b):
        point = [Fraction(1, 2), Fraction(-1), Fraction(2)]
        assert evaluate_form(wedge(a, b), point) == wedge(
            evaluate_form(a, point), evaluate_form(b, point)
        )


class TestVectorFieldMap:
    def test_sign_rule(self):
        w = form("y*dx*dz - z*dx*dy")
        v = form_to_vector_field(w)
        assert v.components == (R.zero, -Y, -Z)
        f = Z**2 - X * Y**2
        assert v.apply(f) == -2 * f

    def test_unit_case(self):
        w = DifferentialForm(R4, 3, {(0, 1, 2): R4.one})
        v = form_to_vector_field(w)
        assert v.components == (R4.zero, R4.zero, R4.zero, R4.one)

    def test_roundtrip(self):
        rng = random.Random(7)
        for _ in range(20):
            w = random_form(rng, R, 2)
            assert vector_field_to_form(form_to_vector_field(w)) == w

    def test_defining_identity(self):
        rng = random.Random(11)
        for ring in (R, R4):
            for _ in range(25):
                w = random_form(rng, ring, ring.nvars - 1)
                g = random_polynomial(rng, ring, max_terms=3, max_degree=3)
                v = form_to_vector_field(w)
                assert volume_coefficient(wedge(w, exterior_derivative(g))) == v.apply(g)

    def test_wrong_degree(self):
        with pytest.raises(ValueError):
            form_to_vector_field(form("dx"))


class TestRadialPotential:
    def test_recovers_polynomial(self):
        h = X**4 - X * Y * Z
        assert radial_potential(exterior_derivative(h)) == h

    def test_dx_integrates_to_x(self):
        assert radial_potential(form("dx")) == X

    def test_not_closed(self):
        with pytest.raises(NotClosedError):
            radial_potential(form("y*dx - x*dy"))

    @given(polynomials(R, max_terms=4, max_degree=4))
    def test_potential_inverts_d_on_functions_vanishing_at_zero(self, h):
        h = h - h.constant_coefficient()
        assert radial_potential(exterior_derivative(h)) == h


class TestHyperplane:
    def test_canonicalization(self):
        h = Hyperplane(R, [Fraction(-1, 2), 1, 0])
        assert h.normal == (1, -2, 0)
        assert h.linear_form() == X - 2 * Y

    def test_zero_normal_rejected(self):
        with pytest.raises(ValueError):
            Hyperplane(R, [0, 0, 0])
