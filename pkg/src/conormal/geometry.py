"""Singular loci, regularity in codimension k, hyperplane sections, and the
randomized hyperplane-section harness.

The harness cuts a hypersurface germ with hyperplanes through the origin
and compares the singular locus of the section with the sliced singular
locus.  Generic sections confirm the expected behaviour (section reduced,
loci equal as point sets); degenerate hyperplanes are classified after the
fact by diagnostics instead of deciding transversality up front:

* the section is non-reduced,
* the hyperplane contains (a component of) the singular locus,
* the hyperplane is tangent to the hypersurface at a regular point of the
  intersection (decided exactly via 2x2 minors of gradient and normal),
* tangency witnessed at sampled points of a supplied parametrization.

The tangency locus of a hyperplane section is exactly the singular locus of
the section minus the sliced singular locus, so on valid inputs a report can
never end up in the ``Violation`` state: the diagnostics are complete.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from itertools import combinations, product
from typing import Optional

from .forms import Hyperplane
from .germs import Germ, Parametrization
from .groebner import GREVLEX, Ideal, krull_dimension, radical_membership
from .poly import Polynomial, PolynomialRing, evaluate, partial_derivative


class BertiniVerdict(Enum):
    CONFIRMS_THEOREM = "ConfirmsTheorem"
    TRANSVERSALITY_FAILS = "TransversalityFails"
    VIOLATION = "Violation"


@dataclass(frozen=True)
class BertiniReport:
    """Outcome of one hyperplane-section check.

    ``Violation`` would mean: section reduced, loci different, and no
    transversality diagnostic fired -- this must never happen on valid
    inputs.
    """

    hyperplane: Hyperplane
    section: Optional[Germ]
    section_reduced: bool
    singular_loci_equal: bool
    diagnostics: tuple
    verdict: BertiniVerdict

    def summary(self) -> str:
        notes = f" [{'; '.join(self.diagnostics)}]" if self.diagnostics else ""
        return (
            f"H: {self.hyperplane} | section reduced: {_yn(self.section_reduced)} | "
            f"loci equal: {_yn(self.singular_loci_equal)} | {self.verdict.value}{notes}"
        )


def _yn(flag: bool) -> str:
    return "yes" if flag else "no"


def _det(matrix) -> Polynomial:
    if len(matrix) == 1:
        return matrix[0][0]
    out = None
    for j, top in enumerate(matrix[0]):
        if not top:
            continue
        minor = [row[:j] + row[j + 1 :] for row in matrix[1:]]
        term = top * _det(minor)
        if j % 2:
            term = -term
        out = term if out is None else out + term
    return out if out is not None else matrix[0][0].ring.zero


def jacobian_ideal(germ: Germ) -> Ideal:
    """Ideal whose zero set is the singular locus.

    Hypersurface: the generator and all its partials.  Complete intersection
    with m generators: the generators plus all m x m minors of the Jacobian
    matrix.
    """
    ring = germ.ring
    n = ring.nvars
    if germ.hypersurface:
        f = germ.generators[0]
        return Ideal([f] + [partial_derivative(f, i) for i in range(n)], GREVLEX)
    if not germ.complete_intersection:
        raise ValueError("jacobian ideal needs the hypersurface or complete-intersection flag")
    m = len(germ.generators)
    rows = [[partial_derivative(f, i) for i in range(n)] for f in germ.generators]
    minors = []
    for cols in combinations(range(n), m):
        minors.append(_det([[row[c] for c in cols] for row in rows]))
    gens = list(germ.generators) + [p for p in minors if p]
    return Ideal(gens, GREVLEX)


def regular_in_codimension(germ: Germ, k: int) -> bool:
    """Whether the singular locus has codimension greater than k inside the
    germ: dim Sing X < dim X - k."""
    dim = germ.dimension()
    if not 0 <= k <= dim:
        raise ValueError(f"codimension must be between 0 and dim X = {dim}")
    return krull_dimension(jacobian_ideal(germ)) < dim - k


def _section_substitution(ring: PolynomialRing, hyperplane: Hyperplane):
    """Solve the hyperplane for its first nonzero-normal variable.

    Returns (section ring, images) where images realize the substitution
    from the ambient ring into the section ring.
    """
    normal = hyperplane.normal
    pivot = next(i for i, h in enumerate(normal) if h)
    keep = [i for i in range(ring.nvars) if i != pivot]
    section_ring = PolynomialRing([ring.variables[i] for i in keep])
    images = []
    solved = section_ring.zero
    for new_pos, old in enumerate(keep):
        if normal[old]:
            solved = solved - section_ring.var(new_pos).scale(
                Fraction(normal[old], normal[pivot])
            )
    for old in range(ring.nvars):
        if old == pivot:
            images.append(solved)
        else:
            images.append(section_ring.var(keep.index(old)))
    return section_ring, images


def hyperplane_section(germ: Germ, hyperplane: Hyperplane) -> Germ:
    """Cut a hypersurface germ (n >= 3) with a hyperplane through 0.

    The hyperplane is solved for its pivot variable and substituted into the
    defining equation; the remaining variables keep their names and order.
    Raises if the hyperplane is contained in the germ (zero section).
    """
    if germ.ring.nvars < 3:
        raise ValueError("hyperplane sections need an ambient dimension of at least 3")
    if not germ.hypersurface:
        raise ValueError("hyperplane sections are defined for hypersurface germs")
    if hyperplane.ring != germ.ring:
        raise ValueError("hyperplane ring mismatch")
    section_ring, images = _section_substitution(germ.ring, hyperplane)
    g = germ.generators[0].substitute(section_ring, images)
    if not g:
        raise ValueError("the hyperplane is contained in the germ")
    return Germ(section_ring, [g], hypersurface=True, complete_intersection=True)


def section_is_reduced(section: Germ) -> bool:
    """Whether a hypersurface germ is reduced: the singular locus of g has
    codimension >= 2 in the ambient space, which for a principal ideal
    characterizes squarefreeness."""
    if not section.hypersurface:
        raise ValueError("reducedness test is defined for hypersurface germs")
    return krull_dimension(jacobian_ideal(section)) <= section.ring.nvars - 2


def _sampled_tangency_notes(
    germ: Germ, hyperplane: Hyperplane, par: Parametrization, jac: Ideal
) -> list:
    """Point witnesses: sampled parametrized points of the germ lying on the
    hyperplane where every tangent direction of the parametrization stays
    inside the hyperplane."""
    d = par.ring.nvars
    samples = [Fraction(0), Fraction(1), Fraction(-1), Fraction(1, 2), Fraction(-1, 2), Fraction(2)]
    normal = hyperplane.normal
    partials = [
        [partial_derivative(p, l) for p in par.components] for l in range(d)
    ]
    notes = []
    for values in product(samples, repeat=d):
        point = [evaluate(p, values) for p in par.components]
        if sum(h * x for h, x in zip(normal, point)) != 0:
            continue
        if all(evaluate(g, point) == 0 for g in jac.generators):
            continue  # singular point of the germ
        tangents = [[evaluate(q, values) for q in row] for row in partials]
        if all(sum(h * t for h, t in zip(normal, tang)) == 0 for tang in tangents):
            shown = "(" + ", ".join(str(x) for x in point) + ")"
            notes.append(f"H is tangent to X at the parametrized point {shown}")
            break
    return notes


def bertini_check(
    germ: Germ, hyperplane: Hyperplane, parametrization: Optional[Parametrization] = None
) -> BertiniReport:
    """Compare the singular locus of the hyperplane section with the sliced
    singular locus, classifying any disagreement with diagnostics.

    Locus equality is equality of radicals (the claim is about point sets),
    checked by mutual radical membership of generators.
    """
    if germ.ring.nvars < 3:
        raise ValueError("the section harness needs an ambient dimension of at least 3")
    if not germ.hypersurface:
        raise ValueError("the section harness is defined for hypersurface germs")
    if hyperplane.ring != germ.ring:
        raise ValueError("hyperplane ring mismatch")

    diagnostics = []
    jac = jacobian_ideal(germ)
    ell = hyperplane.linear_form()
    f = germ.generators[0]

    try:
        section = hyperplane_section(germ, hyperplane)
    except ValueError:
        diagnostics.append("H is contained in X")
        return BertiniReport(
            hyperplane, None, False, False, tuple(diagnostics),
            BertiniVerdict.TRANSVERSALITY_FAILS,
        )

    reduced = section_is_reduced(section)
    if not reduced:
        diagnostics.append("section is non-reduced (H is tangent to X along a locus)")

    section_ring, images = _section_substitution(germ.ring, hyperplane)
    section_jac = jacobian_ideal(section)
    sliced = [g.substitute(section_ring, images) for g in jac.generators]
    sliced = [g for g in sliced if g]
    sliced_ideal = Ideal(sliced or [section_ring.zero], GREVLEX)
    loci_equal = all(
        radical_membership(a, sliced_ideal) for a in section_jac.generators
    ) and all(radical_membership(b, section_jac) for b in sliced_ideal.generators)

    dim_sing = krull_dimension(jac)
    if dim_sing >= 1:
        if radical_membership(ell, jac):
            diagnostics.append("H contains Sing X")
        elif krull_dimension(Ideal(list(jac.generators) + [ell], GREVLEX)) >= dim_sing:
            diagnostics.append("H contains a positive-dimensional component of Sing X")

    # Exact smooth-tangency test: on X intersect H, the gradient of f is
    # parallel to the normal exactly on V(T); transversality on the regular
    # part holds iff V(T) stays inside Sing X.
    gradient = [partial_derivative(f, i) for i in range(germ.ring.nvars)]
    normal_consts = [germ.ring.const(h) for h in hyperplane.normal]
    minors = []
    for i, j in combinations(range(germ.ring.nvars), 2):
        minors.append(gradient[i] * normal_consts[j] - gradient[j] * normal_consts[i])
    tangency = Ideal([f, ell] + [m for m in minors if m], GREVLEX)
    if not all(radical_membership(g, tangency) for g in jac.generators):
        diagnostics.append("H is tangent to X at a regular point of X on H")

    if parametrization is not None:
        diagnostics.extend(_sampled_tangency_notes(germ, hyperplane, parametrization, jac))

    if reduced and loci_equal:
        verdict = BertiniVerdict.CONFIRMS_THEOREM
    elif diagnostics:
        verdict = BertiniVerdict.TRANSVERSALITY_FAILS
    else:
        verdict = BertiniVerdict.VIOLATION
    return BertiniReport(
        hyperplane, section, reduced, loci_equal, tuple(diagnostics), verdict
    )


def random_hyperplane(ring: PolynomialRing, seed: int, bound: int = 10) -> Hyperplane:
    """Deterministic seeded hyperplane: integer normal entries uniform in
    [-bound, bound], rejecting the zero vector, canonicalized."""
    if bound < 1:
        raise ValueError("bound must be positive")
    rng = random.Random(seed)
    while True:
        normal = [rng.randint(-bound, bound) for _ in range(ring.nvars)]
        if any(normal):
            return Hyperplane(ring, normal)
