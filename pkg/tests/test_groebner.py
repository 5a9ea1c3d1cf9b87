"""Groebner engine: division, bases, membership, elimination, radical, dimension."""

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conormal.groebner import (
    Ideal,
    ModuleElement,
    buchberger,
    eliminate,
    ideal_membership,
    krull_dimension,
    module_membership,
    radical_membership,
    reduce,
    s_polynomial,
)
from conormal.poly import GREVLEX, LEX, PolynomialRing, monomial_divides

from strategies import nonzero_polynomials, polynomials, random_polynomial

R = PolynomialRing(["x", "y", "z"])
X, Y, Z = R.gens()
F_UMBRELLA = Z**2 - X * Y**2


class TestReduce:
    def test_multiple_of_generator(self):
        assert not reduce(X * F_UMBRELLA, [F_UMBRELLA], GREVLEX)

    def test_no_leading_term_division(self):
        R2 = PolynomialRing(["x", "y"])
        x, y = R2.gens()
        assert reduce(x, [y], GREVLEX) == x

    def test_one_division_step(self):
        R2 = PolynomialRing(["x", "y"])
        x, y = R2.gens()
        # by hand: x^2*y + 1 = y*(x^2 - 1) + (y + 1)
        assert reduce(x**2 * y + 1, [x**2 - 1], LEX) == y + 1

    def test_empty_basis_is_identity(self):
        assert reduce(X + Y, [], GREVLEX) == X + Y

    @given(polynomials(R), nonzero_polynomials(R))
    def test_remainder_terms_not_divisible(self, f, g):
        r = reduce(f, [g], GREVLEX)
        lm = g.leading(GREVLEX)[0]
        assert all(not monomial_divides(lm, m) for m in r.terms)


class TestBuchberger:
    def test_single_generator_is_its_own_basis(self):
        R4 = PolynomialRing(["x", "y", "z", "t"])
        x, y, z, t = R4.gens()
        basis = buchberger([x * z - y * t], GREVLEX)
        assert basis == [x * z - y * t]

    def test_lex_elimination_of_parameter(self):
        # t > x > y: eliminating t from {x - t^2, y - t^3} exposes y^2 - x^3
        Rt = PolynomialRing(["t", "x", "y"])
        t, x, y = Rt.gens()
        basis = buchberger([x - t**2, y - t**3], LEX)
        assert x**3 - y**2 in basis

    def test_idempotent_on_reduced_basis(self):
        basis = buchberger([X**2 - Y, X * Y - Z], GREVLEX)
        assert buchberger(basis, GREVLEX) == basis

    def test_generators_dropping_would_be_wrong(self):
        # (x, x + y) = (x, y); a naive interreduction that drops by leading
        # terms would lose y.
        basis = buchberger([X, X + Y], GREVLEX)
        assert ideal_membership(Y, Ideal([X, X + Y]))
        assert sorted(str(g) for g in basis) == ["x", "y"]

    @given(st.lists(nonzero_polynomials(R, max_terms=3, max_degree=2), min_size=1, max_size=3))
    @settings(max_examples=15)
    def test_basis_properties(self, gens):
        basis = buchberger(gens, GREVLEX)
        for g in gens:
            assert not reduce(g, basis, GREVLEX)
        for i in range(len(basis)):
            for j in range(i):
                s = s_polynomial(basis[i], basis[j], GREVLEX)
                assert not reduce(s, basis, GREVLEX)


class TestIdealMembership:
    def test_scalar_multiple(self, cusp):
        f = cusp.generators[0]
        assert ideal_membership(3 * f, cusp.ideal)

    def test_variable_not_in_principal_ideal(self, cusp):
        # independent oracle: x does not vanish at (1, 1, 1) although f does
        assert not ideal_membership(X, cusp.ideal)

    def test_zero_in_every_ideal(self, cusp):
        assert ideal_membership(R.zero, cusp.ideal)

    def test_ring_mismatch(self):
        other = PolynomialRing(["a"])
        with pytest.raises(ValueError):
            ideal_membership(other.var(0), Ideal([X]))

    @given(polynomials(R, max_terms=2, max_degree=2), polynomials(R, max_terms=2, max_degree=2))
    @settings(max_examples=15)
    def test_membership_closed_under_combinations(self, p, q):
        ideal = Ideal([X**2 - Y, Y * Z])
        f = X**2 - Y
        assert ideal_membership(p * f + q * (Y * Z), ideal)


class TestEliminate:
    def test_parametrized_cusp(self):
        Rc = PolynomialRing(["x", "y", "t"])
        x, y, t = Rc.gens()
        result = eliminate(Ideal([x - t**2, y - t**3]), [2])
        target = PolynomialRing(["x", "y"])
        tx, ty = target.gens()
        assert result.ring == target
        assert result.same_ideal(Ideal([ty**2 - tx**3]))

    def test_variable_independent_of_dropped(self):
        R2 = PolynomialRing(["x", "y"])
        x, _ = R2.gens()
        result = eliminate(Ideal([x]), [1])
        assert result.ring.variables == ("x",)
        single = PolynomialRing(["x"])
        assert result.same_ideal(Ideal([single.var(0)]))

    def test_rabinowitsch_style_intersection(self):
        Rt = PolynomialRing(["t", "x", "y"])
        t, x, y = Rt.gens()
        result = eliminate(Ideal([t * x - 1, t * y]), [0])
        target = PolynomialRing(["x", "y"])
        assert result.same_ideal(Ideal([target.var(1)]))

    def test_output_lies_in_ideal_and_avoids_dropped_vars(self):
        Rc = PolynomialRing(["x", "y", "t"])
        x, y, t = Rc.gens()
        ideal = Ideal([x - t**2, y - t**3])
        result = eliminate(ideal, [2])
        back = [g.substitute(Rc, [x, y]) for g in result.generators]
        for g, b in zip(result.generators, back):
            assert all(m[-1] == 0 for m in b.terms)  # mapped back without t
            assert ideal_membership(b, ideal)

    def test_cannot_drop_everything(self):
        with pytest.raises(ValueError):
            eliminate(Ideal([X]), [0, 1, 2])


class TestRadicalMembership:
    def test_square_among_generators(self):
        ideal = Ideal([F_UMBRELLA, Y**2, 2 * X * Y, 2 * Z])
        assert radical_membership(Y, ideal)

    def test_square_root(self):
        assert radical_membership(X, Ideal([X**2]))

    def test_not_vanishing_on_plane(self):
        assert not radical_membership(X, Ideal([Y]))

    @given(polynomials(R, max_terms=2, max_degree=2))
    @settings(max_examples=15)
    def test_consistency_with_membership_and_squares(self, f):
        ideal = Ideal([X * Y, Z**2])
        if ideal_membership(f, ideal):
            assert radical_membership(f, ideal)
        assert radical_membership(f, ideal) == radical_membership(f * f, ideal)


class TestKrullDimension:
    def test_hypersurface(self):
        assert krull_dimension(Ideal([F_UMBRELLA])) == 2

    def test_singular_locus_of_umbrella_is_a_line(self):
        assert krull_dimension(Ideal([F_UMBRELLA, Y**2, 2 * X * Y, 2 * Z])) == 1

    def test_unit_ideal_is_empty(self):
        assert krull_dimension(Ideal([R.one])) == -1
        assert krull_dimension(Ideal([R.const(5)])) == -1

    def test_zero_ideal_is_everything(self):
        assert krull_dimension(Ideal([R.zero])) == 3

    @given(nonzero_polynomials(R, max_terms=3, max_degree=3))
    @settings(max_examples=15)
    def test_principal_nonconstant_has_dimension_n_minus_one(self, f):
        if f.is_constant():
            return
        assert krull_dimension(Ideal([f])) == 2


class TestModuleMembership:
    def test_component_multiple(self):
        f = F_UMBRELLA
        e1 = ModuleElement([f, R.zero])
        e2 = ModuleElement([R.zero, f])
        assert module_membership(e1, [e1, e2])

    def test_unit_component_cannot_appear(self):
        f = F_UMBRELLA
        assert not module_membership(ModuleElement([R.one]), [ModuleElement([f])])

    def test_rank_mismatch(self):
        with pytest.raises(ValueError):
            module_membership(ModuleElement([X]), [ModuleElement([X, Y])])

    def test_rank_one_agrees_with_ideal_membership(self):
        rng = random.Random(20240)
        hits = 0
        for _ in range(50):
            gens = [
                random_polynomial(rng, R, max_terms=2, max_degree=2, nonzero=True)
                for _ in range(rng.randint(1, 2))
            ]
            f = random_polynomial(rng, R, max_terms=2, max_degree=2)
            if rng.random() < 0.5:  # force plenty of positive instances
                f = sum(
                    (random_polynomial(rng, R, max_terms=2, max_degree=1) * g for g in gens),
                    R.zero,
                )
            expected = ideal_membership(f, Ideal(gens))
            got = module_membership(ModuleElement([f]), [ModuleElement([g]) for g in gens])
            assert got == expected
            hits += expected
        assert 0 < hits < 50  # both outcomes exercised


class TestIdealCache:
    def test_concurrent_fill_returns_one_basis(self, umbrella):
        import threading

        ideal = Ideal(list(umbrella.generators))
        results = []

        def worker():
            results.append(ideal.groebner_basis())

        threads = [threading.Thread(target=worker) for _ in range(8)]
        for t in threads:
            t.start()
        for t in threads:
            t.join()
        assert all(r is results[0] for r in results)
