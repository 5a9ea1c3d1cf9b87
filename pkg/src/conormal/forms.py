"""Exterior algebra of polynomial differential forms.

A homogeneous k-form is stored as a map from strictly increasing index
tuples (i_1 < ... < i_k, 0-based into the ring variables) to polynomial
coefficients; signs are absorbed during canonicalization.  Degree-0 forms
are bare :class:`~conormal.poly.Polynomial` values, and mixed-degree input
is represented as a list of homogeneous parts (see :func:`parse_form`).

Besides wedge, exterior derivative and pointwise evaluation, the module
implements the degree-(n-1) correspondence with vector fields given by the
volume form dx_1 ^ ... ^ dx_n |-> 1, and the radial homotopy that produces
a polynomial potential for a closed 1-form.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Sequence, Union

from .poly import (
    Polynomial,
    PolynomialRing,
    Scalar,
    evaluate,
    format_polynomial,
    partial_derivative,
    same_ring,
)


class NotClosedError(ValueError):
    """Raised when a potential is requested for a non-closed form."""


FormLike = Union[Polynomial, "DifferentialForm"]


class DifferentialForm:
    """A homogeneous differential form of degree >= 1 with polynomial coefficients.

    Coefficients are indexed by sorted tuples only; zero coefficients are
    never stored.  Forms of degree above the ring dimension are necessarily
    zero and are allowed as transient results of wedge and d.
    """

    __slots__ = ("ring", "degree", "_coeffs")

    def __init__(self, ring: PolynomialRing, degree: int, coefficients, *, _clean: bool = False):
        if degree < 1:
            raise ValueError("degree-0 forms are represented by bare polynomials")
        self.ring = ring
        self.degree = degree
        if _clean:
            self._coeffs = dict(coefficients)
            return
        clean = {}
        for idx, coeff in coefficients.items():
            idx = tuple(idx)
            if len(idx) != degree or list(idx) != sorted(set(idx)):
                raise ValueError(f"index tuple {idx} is not strictly increasing of length {degree}")
            if idx and (idx[0] < 0 or idx[-1] >= ring.nvars):
                raise ValueError(f"index tuple {idx} out of range for {ring}")
            if not isinstance(coeff, Polynomial):
                coeff = ring.const(coeff)
            if coeff.ring != ring:
                raise ValueError("coefficient ring mismatch")
            if coeff:
                clean[idx] = clean.get(idx, ring.zero) + coeff
        self._coeffs = {i: c for i, c in clean.items() if c}

    def coefficients(self):
        """Deterministic iteration: (index tuple, coefficient) sorted by tuple."""
        return [(idx, self._coeffs[idx]) for idx in sorted(self._coeffs)]

    def coefficient(self, idx) -> Polynomial:
        return self._coeffs.get(tuple(idx), self.ring.zero)

    def __bool__(self) -> bool:
        return bool(self._coeffs)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, DifferentialForm)
            and self.ring == other.ring
            and self.degree == other.degree
            and self._coeffs == other._coeffs
        )

    def __hash__(self) -> int:
        return hash((self.ring, self.degree, frozenset(self._coeffs.items())))

    def __add__(self, other: "DifferentialForm") -> "DifferentialForm":
        if not isinstance(other, DifferentialForm):
            return NotImplemented
        same_ring(self, other)
        if self.degree != other.degree:
            raise ValueError("cannot add forms of different degrees")
        out = dict(self._coeffs)
        for idx, c in other._coeffs.items():
            s = out.get(idx, self.ring.zero) + c
            if s:
                out[idx] = s
            elif idx in out:
                del out[idx]
        return DifferentialForm(self.ring, self.degree, out, _clean=True)

    def __neg__(self) -> "DifferentialForm":
        return DifferentialForm(
            self.ring, self.degree, {i: -c for i, c in self._coeffs.items()}, _clean=True
        )

    def __sub__(self, other: "DifferentialForm") -> "DifferentialForm":
        return self + (-other)

    def scale(self, factor) -> "DifferentialForm":
        """Multiply by a polynomial or scalar (the degree-0 wedge action)."""
        if not isinstance(factor, Polynomial):
            factor = self.ring.const(factor)
        out = {}
        for idx, c in self._coeffs.items():
            p = factor * c
            if p:
                out[idx] = p
        return DifferentialForm(self.ring, self.degree, out, _clean=True)

    def __str__(self) -> str:
        return format_form(self)

    def __repr__(self) -> str:
        return f"<{format_form(self)} over {self.ring}>"


def form_degree(x: FormLike) -> int:
    return 0 if isinstance(x, Polynomial) else x.degree


def _term_dict(x: FormLike) -> dict:
    if isinstance(x, Polynomial):
        return {(): x} if x else {}
    return x._coeffs


def _make(ring: PolynomialRing, degree: int, coeffs: dict) -> FormLike:
    if degree == 0:
        return coeffs.get((), ring.zero)
    return DifferentialForm(ring, degree, coeffs, _clean=True)


def wedge(a: FormLike, b: FormLike) -> FormLike:
    """Exterior product; bilinear, associative, and sign-correct.

    Degree-0 factors act by multiplication; if the degrees add up past the
    ring dimension the result is the zero form of that degree.
    """
    from ._expr import wedge_index_tuples

    ring = same_ring(a, b)
    out: dict = {}
    for s, p in _term_dict(a).items():
        for t, q in _term_dict(b).items():
            merged = wedge_index_tuples(s, t)
            if merged is None:
                continue
            sign, key = merged
            c = p * q if sign > 0 else -(p * q)
            total = out.get(key, ring.zero) + c
            if total:
                out[key] = total
            elif key in out:
                del out[key]
    return _make(ring, form_degree(a) + form_degree(b), out)


def exterior_derivative(x: FormLike) -> DifferentialForm:
    """The exterior derivative d; linear, with d(d(x)) = 0."""
    ring = x.ring
    out: dict = {}
    for idx, coeff in _term_dict(x).items():
        for i in range(ring.nvars):
            if i in idx:
                continue
            dc = partial_derivative(coeff, i)
            if not dc:
                continue
            pos = sum(1 for j in idx if j < i)
            if pos % 2:
                dc = -dc
            key = tuple(sorted(idx + (i,)))
            total = out.get(key, ring.zero) + dc
            if total:
                out[key] = total
            elif key in out:
                del out[key]
    return DifferentialForm(ring, form_degree(x) + 1, out, _clean=True)


def evaluate_form(x: FormLike, point: Sequence[Scalar]):
    """Coefficient-wise evaluation at a rational point.

    Returns a form of the same degree with constant coefficients (a plain
    Fraction for degree 0); the form vanishes at the point iff the result
    is zero.
    """
    if isinstance(x, Polynomial):
        return evaluate(x, point)
    out = {}
    for idx, coeff in x._coeffs.items():
        v = evaluate(coeff, point)
        if v:
            out[idx] = x.ring.const(v)
    return DifferentialForm(x.ring, x.degree, out, _clean=True)


class VectorField:
    """A polynomial vector field sum_i components[i] * d/dx_i."""

    __slots__ = ("ring", "components")

    def __init__(self, ring: PolynomialRing, components: Sequence[Polynomial]):
        comps = tuple(components)
        if len(comps) != ring.nvars:
            raise ValueError("one component per ring variable required")
        for c in comps:
            if c.ring != ring:
                raise ValueError("component ring mismatch")
        self.ring = ring
        self.components = comps

    def apply(self, g: Polynomial) -> Polynomial:
        """Directional derivative V(g) = sum_i V_i * dg/dx_i."""
        same_ring(self, g)
        out = self.ring.zero
        for i, c in enumerate(self.components):
            if c:
                out = out + c * partial_derivative(g, i)
        return out

    def __bool__(self) -> bool:
        return any(self.components)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, VectorField)
            and self.ring == other.ring
            and self.components == other.components
        )

    def __str__(self) -> str:
        return "(" + ", ".join(str(c) for c in self.components) + ")"

    __repr__ = __str__


def volume_coefficient(x: FormLike) -> Polynomial:
    """The image of a top-degree form under dx_1 ^ ... ^ dx_n |-> 1."""
    ring = x.ring
    if form_degree(x) != ring.nvars:
        raise ValueError("volume coefficient needs a top-degree form")
    return x.coefficient(tuple(range(ring.nvars)))


def form_to_vector_field(omega: DifferentialForm) -> VectorField:
    """The degree-(n-1) correspondence with vector fields.

    Writing omega = sum_i a_i dx_1 ^ ... (omit dx_i) ... ^ dx_n, the image V
    has V_i = (-1)^(n-1-i) a_i (0-based i), the unique field with
    volume_coefficient(omega ^ dg) = V(g) for all g.
    """
    ring = omega.ring
    n = ring.nvars
    if form_degree(omega) != n - 1:
        raise ValueError("expected a form of degree n-1")
    comps = [ring.zero] * n
    everything = set(range(n))
    for idx, a in omega._coeffs.items():
        i = (everything - set(idx)).pop()
        comps[i] = a if (n - 1 - i) % 2 == 0 else -a
    return VectorField(ring, comps)


def vector_field_to_form(field: VectorField) -> DifferentialForm:
    """Inverse of :func:`form_to_vector_field`."""
    ring = field.ring
    n = ring.nvars
    out = {}
    for i, v in enumerate(field.components):
        if v:
            idx = tuple(j for j in range(n) if j != i)
            out[idx] = v if (n - 1 - i) % 2 == 0 else -v
    return DifferentialForm(ring, n - 1, out, _clean=True)


def radial_potential(omega: FormLike) -> Polynomial:
    """Polynomial g with g(0) = 0 and dg = omega, for a closed 1-form.

    Uses the radial homotopy: a monomial m of total degree d in the i-th
    coefficient contributes x_i * m / (d + 1).  Raises NotClosedError when
    d(omega) is nonzero.
    """
    if form_degree(omega) != 1:
        raise ValueError("the radial potential is defined for 1-forms")
    if exterior_derivative(omega):
        raise NotClosedError("the form is not closed: d(form) != 0")
    ring = omega.ring
    out: dict = {}
    for (i,), coeff in omega._coeffs.items():
        for exps, c in coeff.terms.items():
            d = sum(exps)
            key = exps[:i] + (exps[i] + 1,) + exps[i + 1 :]
            s = out.get(key, Fraction(0)) + Fraction(c, d + 1)
            if s:
                out[key] = s
            elif key in out:
                del out[key]
    return Polynomial(ring, out, _clean=True)


class Hyperplane:
    """A hyperplane through the origin, {sum_i normal[i] * x_i = 0}.

    The normal is canonicalized to integers with content 1 and a positive
    first nonzero entry.
    """

    __slots__ = ("ring", "normal")

    def __init__(self, ring: PolynomialRing, normal: Sequence[Scalar]):
        vec = [Fraction(v) for v in normal]
        if len(vec) != ring.nvars:
            raise ValueError("one normal coordinate per ring variable required")
        if not any(vec):
            raise ValueError("the zero vector is not a hyperplane normal")
        scale = 1
        for v in vec:
            scale = scale * v.denominator // gcd(scale, v.denominator)
        ints = [int(v * scale) for v in vec]
        content = 0
        for v in ints:
            content = gcd(content, abs(v))
        ints = [v // content for v in ints]
        first = next(v for v in ints if v)
        if first < 0:
            ints = [-v for v in ints]
        self.ring = ring
        self.normal = tuple(ints)

    def linear_form(self) -> Polynomial:
        out = self.ring.zero
        for i, h in enumerate(self.normal):
            if h:
                out = out + self.ring.var(i).scale(h)
        return out

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Hyperplane)
            and self.ring == other.ring
            and self.normal == other.normal
        )

    def __hash__(self) -> int:
        return hash((self.ring, self.normal))

    def __str__(self) -> str:
        return f"{self.linear_form()} = 0"

    __repr__ = __str__


def parse_form(text: str, ring: PolynomialRing) -> list:
    """Parse a form expression into homogeneous parts, ascending by degree.

    Differentials are written ``d<var>`` and combined with ``*``; a repeated
    differential makes the term zero.  The degree-0 part, when present, is a
    bare polynomial.  The zero form parses to an empty list.
    """
    from ._expr import parse_mixed_text

    mixed = parse_mixed_text(text, ring, allow_differentials=True)
    by_degree: dict = {}
    for idx, coeff in mixed.items():
        if coeff:
            by_degree.setdefault(len(idx), {})[idx] = coeff
    parts = []
    for k in sorted(by_degree):
        if k == 0:
            parts.append(by_degree[0][()])
        else:
            parts.append(DifferentialForm(ring, k, by_degree[k], _clean=True))
    return parts


def _coeff_chunk(coeff: Polynomial, differentials: str) -> tuple:
    """Render one form term; returns (sign, body) with sign '+' or '-'."""
    text = format_polynomial(coeff)
    if len(coeff.terms) == 1:
        if text == "1":
            return "+", differentials
        if text == "-1":
            return "-", differentials
        if text.startswith("-"):
            return "-", f"{text[1:]}*{differentials}"
        return "+", f"{text}*{differentials}"
    return "+", f"({text})*{differentials}"


def format_form(x: FormLike) -> str:
    """Canonical rendering in the input grammar (round-trips through parse)."""
    if isinstance(x, Polynomial):
        return format_polynomial(x)
    if not x:
        return "0"
    chunks = []
    for idx, coeff in x.coefficients():
        differentials = "*".join("d" + x.ring.variables[i] for i in idx)
        chunks.append(_coeff_chunk(coeff, differentials))
    sign, body = chunks[0]
    out = ("-" if sign == "-" else "") + body
    for sign, body in chunks[1:]:
        out += f" {sign} {body}"
    return out


def format_form_parts(parts: Sequence[FormLike]) -> str:
    """Render a list of homogeneous parts as one expression."""
    if not parts:
        return "0"
    return " + ".join(format_form(p) for p in parts)
