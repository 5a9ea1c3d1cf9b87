"""Hypothesis strategies and seeded random generators for algebra objects."""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations

from hypothesis import strategies as st

from conormal.forms import DifferentialForm
from conormal.poly import Polynomial, PolynomialRing


def coefficients():
    return st.fractions(min_value=-5, max_value=5, max_denominator=4).filter(bool)


def monomials(nvars: int, max_degree: int = 3):
    return st.tuples(*[st.integers(0, max_degree) for _ in range(nvars)])


@st.composite
def polynomials(draw, ring: PolynomialRing, max_terms: int = 4, max_degree: int = 3):
    terms = draw(
        st.dictionaries(monomials(ring.nvars, max_degree), coefficients(), max_size=max_terms)
    )
    return Polynomial(ring, terms)


def nonzero_polynomials(ring: PolynomialRing, max_terms: int = 4, max_degree: int = 3):
    return polynomials(ring, max_terms, max_degree).filter(bool)


@st.composite
def forms(draw, ring: PolynomialRing, degree: int, max_terms: int = 3, max_degree: int = 2):
    tuples = list(combinations(range(ring.nvars), degree))
    coeffs = draw(
        st.dictionaries(
            st.sampled_from(tuples),
            polynomials(ring, max_terms=2, max_degree=max_degree),
            max_size=max_terms,
        )
    )
    return DifferentialForm(ring, degree, coeffs)


def random_polynomial(
    rng: random.Random,
    ring: PolynomialRing,
    max_terms: int = 3,
    max_degree: int = 3,
    nonzero: bool = False,
) -> Polynomial:
    """Seeded random polynomial for deterministic 'N randomized cases' loops."""
    while True:
        terms = {}
        for _ in range(rng.randint(0 if not nonzero else 1, max_terms)):
            exps = [0] * ring.nvars
            for _ in range(rng.randint(0, max_degree)):
                exps[rng.randrange(ring.nvars)] += 1
            c = rng.randint(-4, 4)
            if c:
                terms[tuple(exps)] = terms.get(tuple(exps), 0) + c
        p = Polynomial(ring, {m: Fraction(c) for m, c in terms.items() if c})
        if p or not nonzero:
            return p


def random_form(
    rng: random.Random,
    ring: PolynomialRing,
    degree: int,
    max_terms: int = 2,
    max_coeff_degree: int = 2,
) -> DifferentialForm:
    tuples = list(combinations(range(ring.nvars), degree))
    coeffs = {}
    for _ in range(rng.randint(0, max_terms)):
        idx = tuples[rng.randrange(len(tuples))]
        p = random_polynomial(rng, ring, max_terms=2, max_degree=max_coeff_degree)
        if p:
            coeffs[idx] = coeffs.get(idx, ring.zero) + p
    return DifferentialForm(ring, degree, {i: c for i, c in coeffs.items() if c})
