"""Decision procedures for differential forms on embedded affine germs.

A :class:`Germ` is a polynomial model of an analytic germ at the origin:
an ambient ring, generators that all vanish at 0, and user-asserted
structure flags.  Because membership is decided in the polynomial ring
rather than the local analytic ring, germ-level claims come back as a
three-valued :class:`Verdict`:

* ``CertifiedYes``   -- established by an exact ideal-membership certificate;
* ``CertifiedNo``    -- refuted even up to radical (the defect survives on
  the reduced zero set, hence at some regular point);
* ``NoCertificate``  -- the claim holds on the reduced zero set but has no
  certificate in the given generator ideal (non-radical generators).

For generators that define a radical ideal (every bundled example does)
CertifiedYes/CertifiedNo match the analytic truth for polynomial data.

The conormality test multiplies the candidate form with the differentials
of all generators and checks that every coefficient of the product lies in
the generator ideal; this criterion needs the complete-intersection flag.
Germs without it only get the independent parametrization oracle.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from itertools import combinations
from typing import Optional, Sequence

from .forms import (
    DifferentialForm,
    FormLike,
    VectorField,
    exterior_derivative,
    form_degree,
    format_form,
    wedge,
)
from .groebner import (
    GREVLEX,
    Ideal,
    ModuleElement,
    ideal_membership,
    krull_dimension,
    module_membership,
    radical_membership,
)
from .poly import Polynomial, PolynomialRing, evaluate, same_ring


class VerdictStatus(Enum):
    CERTIFIED_YES = "CertifiedYes"
    CERTIFIED_NO = "CertifiedNo"
    NO_CERTIFICATE = "NoCertificate"


@dataclass(frozen=True)
class Verdict:
    """Outcome of a germ-level claim checked in the polynomial ring."""

    status: VerdictStatus
    witness: Optional[str] = None

    @property
    def is_certified_yes(self) -> bool:
        return self.status is VerdictStatus.CERTIFIED_YES

    @property
    def is_certified_no(self) -> bool:
        return self.status is VerdictStatus.CERTIFIED_NO

    def __str__(self) -> str:
        if self.witness:
            return f"{self.status.value}: {self.witness}"
        return self.status.value


class Germ:
    """An embedded affine germ at the origin, V(f_1, ..., f_m) in C^n."""

    __slots__ = ("ring", "generators", "hypersurface", "complete_intersection", "_ideal")

    def __init__(
        self,
        ring: PolynomialRing,
        generators: Sequence[Polynomial],
        *,
        hypersurface: bool = False,
        complete_intersection: bool = False,
    ):
        gens = tuple(generators)
        if not gens:
            raise ValueError("a germ needs at least one generator")
        for g in gens:
            if g.ring != ring:
                raise ValueError("generator ring mismatch")
            if not g:
                raise ValueError("zero generators are not allowed")
            if evaluate(g, (0,) * ring.nvars) != 0:
                raise ValueError(f"generator {g} does not vanish at the origin")
        if hypersurface and len(gens) != 1:
            raise ValueError("a hypersurface germ has exactly one generator")
        self.ring = ring
        self.generators = gens
        self.hypersurface = hypersurface
        self.complete_intersection = complete_intersection
        self._ideal = Ideal(gens, GREVLEX)
        if complete_intersection:
            expected = ring.nvars - len(gens)
            actual = krull_dimension(self._ideal)
            if actual != expected:
                raise ValueError(
                    f"complete-intersection flag rejected: dimension is {actual}, "
                    f"expected {expected}"
                )

    @property
    def ideal(self) -> Ideal:
        return self._ideal

    def dimension(self) -> int:
        return krull_dimension(self._ideal)

    def __str__(self) -> str:
        return "V(" + ", ".join(str(g) for g in self.generators) + f") in {self.ring}"

    __repr__ = __str__


class Parametrization:
    """A polynomial map (C^d, 0) -> (C^n, 0) landing in the germ.

    Substituting the components into every germ generator must give the zero
    polynomial; this is checked at construction, making the parametrization
    a trustworthy independent oracle for tangent-space computations.
    """

    __slots__ = ("germ", "ring", "components")

    def __init__(self, germ: Germ, ring: PolynomialRing, components: Sequence[Polynomial]):
        comps = tuple(components)
        if len(comps) != germ.ring.nvars:
            raise ValueError("one component per ambient variable required")
        for p in comps:
            if p.ring != ring:
                raise ValueError("component ring mismatch")
            if evaluate(p, (0,) * ring.nvars) != 0:
                raise ValueError("parametrization must send 0 to 0")
        for g in germ.generators:
            if g.substitute(ring, comps):
                raise ValueError(f"parametrization does not satisfy generator {g}")
        self.germ = germ
        self.ring = ring
        self.components = comps

    def __repr__(self) -> str:
        return "(" + ", ".join(str(p) for p in self.components) + ")"


def _classify(labelled, ideal: Ideal) -> tuple:
    """Three-way classification of labelled polynomials against an ideal.

    Returns (status, offender) where offender is the first (label, poly)
    failing the strongest test that decides the status.
    """
    failures = [(label, p) for label, p in labelled if not ideal_membership(p, ideal)]
    if not failures:
        return VerdictStatus.CERTIFIED_YES, None
    for label, p in failures:
        if not radical_membership(p, ideal):
            return VerdictStatus.CERTIFIED_NO, (label, p)
    return VerdictStatus.NO_CERTIFICATE, failures[0]


def _require_complete_intersection(germ: Germ):
    if not germ.complete_intersection:
        raise ValueError(
            "the conormality criterion needs the complete-intersection flag; "
            "use the parametrization oracle for other germs"
        )


def is_conormal(omega: FormLike, germ: Germ) -> Verdict:
    """Decide whether a homogeneous form vanishes on the tangent spaces of
    the germ at its regular points.

    For a complete intersection the form is conormal iff its wedge with the
    differentials of all generators vanishes on the germ; vanishing is
    checked coefficient-wise as ideal membership, with radical membership
    as the fallback that separates CertifiedNo from NoCertificate.  The
    degree-0 case is plain (radical) ideal membership.
    """
    _require_complete_intersection(germ)
    same_ring(omega, germ.generators[0])
    if form_degree(omega) == 0:
        status, offender = _classify([("the polynomial", omega)], germ.ideal)
        witness = {
            VerdictStatus.CERTIFIED_YES: "normal form 0 modulo the generator ideal",
            VerdictStatus.CERTIFIED_NO: "does not vanish on the zero set (radical test fails)",
            VerdictStatus.NO_CERTIFICATE: "vanishes on the zero set but is not in the generator ideal",
        }[status]
        return Verdict(status, witness)

    eta = omega
    for g in germ.generators:
        eta = wedge(eta, exterior_derivative(g))
    labelled = [
        ("*".join("d" + germ.ring.variables[i] for i in idx), c)
        for idx, c in eta.coefficients()
    ]
    status, offender = _classify(labelled, germ.ideal)
    if status is VerdictStatus.CERTIFIED_YES:
        return Verdict(
            status,
            f"wedge with generator differentials = {format_form(eta)}; "
            "every coefficient is in the generator ideal",
        )
    label, p = offender
    if status is VerdictStatus.CERTIFIED_NO:
        return Verdict(status, f"coefficient {p} on {label} is not in the radical of the ideal")
    return Verdict(
        status, f"coefficient {p} on {label} is in the radical but not in the ideal"
    )


def is_tangential(field: VectorField, germ: Germ) -> Verdict:
    """Decide whether a vector field is tangent to the germ: V(f_j) must
    vanish on the germ for every generator f_j."""
    same_ring(field, germ.generators[0])
    derivatives = [(f"V({g})", field.apply(g)) for g in germ.generators]
    status, offender = _classify(derivatives, germ.ideal)
    if status is VerdictStatus.CERTIFIED_YES:
        shown = "; ".join(f"{label} = {p}" for label, p in derivatives)
        return Verdict(status, f"{shown}; all in the generator ideal")
    label, p = offender
    if status is VerdictStatus.CERTIFIED_NO:
        return Verdict(status, f"{label} = {p} is not in the radical of the ideal")
    return Verdict(status, f"{label} = {p} is in the radical but not in the ideal")


def trivial_form_generators(germ: Germ, k: int) -> list:
    """Generators of the degree-k piece of the differential ideal generated
    by the germ ideal: all f_j * dx_S and all df_j ^ dx_T."""
    ring = germ.ring
    n = ring.nvars
    if not 1 <= k <= n:
        raise ValueError(f"degree must be between 1 and {n}")
    out = []
    seen = set()
    for f in germ.generators:
        for S in combinations(range(n), k):
            form = DifferentialForm(ring, k, {S: f}, _clean=True)
            if form not in seen:
                seen.add(form)
                out.append(form)
    for f in germ.generators:
        df = exterior_derivative(f)
        for T in combinations(range(n), k - 1):
            basis_form = (
                ring.one if not T else DifferentialForm(ring, k - 1, {T: ring.one}, _clean=True)
            )
            form = wedge(df, basis_form)
            if form and form not in seen:
                seen.add(form)
                out.append(form)
    return out


def _to_module_element(omega: DifferentialForm, basis_tuples: Sequence[tuple]) -> ModuleElement:
    return ModuleElement([omega.coefficient(S) for S in basis_tuples])


def is_trivial_form(omega: DifferentialForm, germ: Germ) -> bool:
    """Whether a homogeneous form of degree >= 1 lies in the submodule
    generated by the trivial forms, i.e. in the differential ideal of the
    germ ideal.  Decided as submodule membership over the basis of k-index
    tuples in lexicographic order."""
    same_ring(omega, germ.generators[0])
    k = form_degree(omega)
    n = germ.ring.nvars
    if k < 1:
        raise ValueError("triviality is defined for forms of degree >= 1")
    if k > n:
        return True  # only the zero form
    basis_tuples = list(combinations(range(n), k))
    target = _to_module_element(omega, basis_tuples)
    gens = [_to_module_element(g, basis_tuples) for g in trivial_form_generators(germ, k)]
    return module_membership(target, gens, GREVLEX)


def vanishes_on_singular_locus(omega: FormLike, germ: Germ) -> bool:
    """Whether every coefficient of the form vanishes on the singular locus
    of a hypersurface germ (radical membership in the Jacobian ideal)."""
    from .geometry import jacobian_ideal

    if not germ.hypersurface:
        raise ValueError("the singular-locus test needs the hypersurface flag")
    same_ring(omega, germ.generators[0])
    jac = jacobian_ideal(germ)
    if form_degree(omega) == 0:
        return radical_membership(omega, jac)
    return all(radical_membership(c, jac) for _, c in omega.coefficients())


def oracle_conormal_on_parametrization(omega: FormLike, par: Parametrization) -> bool:
    """Independent tangent-space oracle: pull the form back along the
    parametrization and test for the zero form.

    Substitutes x_j <- p_j and dx_j <- sum_l (dp_j/ds_l) ds_l; the form is
    conormal on the parametrized locus iff the pullback vanishes identically
    in the parameters.
    """
    same_ring(omega, par.germ.generators[0])
    pring = par.ring
    differentials = [exterior_derivative(p) for p in par.components]
    if isinstance(omega, Polynomial):
        return not omega.substitute(pring, par.components)
    pullback = None
    for idx, coeff in omega.coefficients():
        term: FormLike = coeff.substitute(pring, par.components)
        for i in idx:
            term = wedge(term, differentials[i])
        pullback = term if pullback is None else pullback + term
    return pullback is None or not pullback
