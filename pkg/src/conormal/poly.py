"""Exact sparse multivariate polynomial arithmetic over the rationals.

A polynomial is a mapping from exponent tuples to nonzero ``Fraction``
coefficients, attached to a :class:`PolynomialRing` that fixes the variable
names and their order.  Values are immutable after construction and every
operation returns a fresh polynomial, so instances can be shared freely
between threads.

Monomials are plain tuples of non-negative integers (one entry per ring
variable); the helpers below implement the little divisibility lattice that
the Groebner machinery needs.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Mapping, Sequence, Union

Exponents = tuple  # tuple[int, ...]
Scalar = Union[int, Fraction]


def monomial_mul(a: Exponents, b: Exponents) -> Exponents:
    return tuple(x + y for x, y in zip(a, b))


def monomial_divides(a: Exponents, b: Exponents) -> bool:
    return all(x <= y for x, y in zip(a, b))


def monomial_div(a: Exponents, b: Exponents) -> Exponents:
    return tuple(x - y for x, y in zip(a, b))


def monomial_lcm(a: Exponents, b: Exponents) -> Exponents:
    return tuple(max(x, y) for x, y in zip(a, b))


def _grevlex_key(exps: Exponents):
    # a > b iff deg a > deg b, or degrees tie and the last nonzero entry of
    # a - b is negative; encoded so that plain tuple comparison agrees.
    return (sum(exps), tuple(-e for e in reversed(exps)))


@dataclass(frozen=True)
class MonomialOrder:
    """A multiplicative well-order on monomials (the constant 1 is minimal).

    ``kind`` is one of ``lex``, ``grevlex`` or ``block``; a block order
    compares the first ``split`` exponents by grevlex, breaking ties with
    grevlex on the rest, which makes the first block an elimination block.
    """

    kind: str
    split: int = 0

    def key(self, exps: Exponents):
        """Sort key: ``key(a) > key(b)`` iff the monomial a is larger."""
        if self.kind == "grevlex":
            return _grevlex_key(exps)
        if self.kind == "lex":
            return exps
        return (_grevlex_key(exps[: self.split]), _grevlex_key(exps[self.split :]))

    def __str__(self) -> str:
        if self.kind == "block":
            return f"block({self.split})"
        return self.kind


LEX = MonomialOrder("lex")
GREVLEX = MonomialOrder("grevlex")


def block_order(split: int) -> MonomialOrder:
    """Elimination order whose first ``split`` variables form the top block."""
    if split < 0:
        raise ValueError("block split must be non-negative")
    return MonomialOrder("block", split)


_NAME_OK = re.compile(r"[A-Za-z_]\w*\Z")


class PolynomialRing:
    """The ring Q[x_1, ..., x_n] with a fixed, ordered tuple of variable names."""

    __slots__ = ("variables", "_index")

    def __init__(self, variables: Sequence[str]):
        names = tuple(variables)
        if not names:
            raise ValueError("a polynomial ring needs at least one variable")
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")
        for name in names:
            if not _NAME_OK.match(name):
                raise ValueError(f"invalid variable name {name!r}")
        self.variables = names
        self._index = {name: i for i, name in enumerate(names)}

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def var_index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise ValueError(f"unknown variable {name!r} in ring {self}") from None

    def var(self, i: int) -> "Polynomial":
        if not 0 <= i < self.nvars:
            raise ValueError(f"variable index {i} out of range for {self}")
        exps = [0] * self.nvars
        exps[i] = 1
        return Polynomial(self, {tuple(exps): Fraction(1)}, _clean=True)

    def gens(self) -> tuple:
        return tuple(self.var(i) for i in range(self.nvars))

    def const(self, value: Scalar) -> "Polynomial":
        c = Fraction(value)
        if c == 0:
            return Polynomial(self, {}, _clean=True)
        return Polynomial(self, {(0,) * self.nvars: c}, _clean=True)

    @property
    def zero(self) -> "Polynomial":
        return Polynomial(self, {}, _clean=True)

    @property
    def one(self) -> "Polynomial":
        return self.const(1)

    def __eq__(self, other) -> bool:
        return isinstance(other, PolynomialRing) and self.variables == other.variables

    def __hash__(self) -> int:
        return hash(self.variables)

    def __repr__(self) -> str:
        return f"PolynomialRing({', '.join(self.variables)})"

    def __str__(self) -> str:
        return "(" + ", ".join(self.variables) + ")"


def same_ring(*objs) -> PolynomialRing:
    """Return the common ring of the arguments, raising on a mismatch."""
    ring = objs[0].ring
    for o in objs[1:]:
        if o.ring != ring:
            raise ValueError(f"ring mismatch: {o.ring} vs {ring}")
    return ring


class Polynomial:
    """An immutable sparse polynomial with exact rational coefficients."""

    __slots__ = ("ring", "_terms", "_lead")

    def __init__(self, ring: PolynomialRing, terms: Mapping, *, _clean: bool = False):
        self.ring = ring
        if _clean:
            self._terms = dict(terms) if not isinstance(terms, dict) else terms
        else:
            clean = {}
            n = ring.nvars
            for exps, coeff in terms.items():
                exps = tuple(exps)
                if len(exps) != n or any(e < 0 or not isinstance(e, int) for e in exps):
                    raise ValueError(f"bad exponent tuple {exps} for ring {ring}")
                c = Fraction(coeff)
                if c != 0:
                    clean[exps] = clean.get(exps, Fraction(0)) + c
            self._terms = {m: c for m, c in clean.items() if c != 0}
        self._lead = {}

    @property
    def terms(self) -> Mapping:
        """The term dict (treat as read-only)."""
        return self._terms

    def items(self) -> Iterator:
        return iter(self._terms.items())

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def total_degree(self) -> int:
        """Total degree, with -1 as the degree of the zero polynomial."""
        if not self._terms:
            return -1
        return max(sum(m) for m in self._terms)

    def leading(self, order: MonomialOrder):
        """The (monomial, coefficient) pair maximal under ``order``; None if zero."""
        if not self._terms:
            return None
        cached = self._lead.get(order)
        if cached is None:
            m = max(self._terms, key=order.key)
            cached = (m, self._terms[m])
            self._lead[order] = cached
        return cached

    def monic(self, order: MonomialOrder) -> "Polynomial":
        lead = self.leading(order)
        if lead is None or lead[1] == 1:
            return self
        c = lead[1]
        return Polynomial(self.ring, {m: v / c for m, v in self._terms.items()}, _clean=True)

    def scale(self, c: Scalar) -> "Polynomial":
        c = Fraction(c)
        if c == 0:
            return self.ring.zero
        return Polynomial(self.ring, {m: v * c for m, v in self._terms.items()}, _clean=True)

    def constant_coefficient(self) -> Fraction:
        return self._terms.get((0,) * self.ring.nvars, Fraction(0))

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and not any(next(iter(self._terms))))

    def __add__(self, other) -> "Polynomial":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self._terms)
        for m, c in other._terms.items():
            s = out.get(m, Fraction(0)) + c
            if s:
                out[m] = s
            elif m in out:
                del out[m]
        return Polynomial(self.ring, out, _clean=True)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial(self.ring, {m: -c for m, c in self._terms.items()}, _clean=True)

    def __sub__(self, other) -> "Polynomial":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "Polynomial":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other) -> "Polynomial":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        same_ring(self, other)
        out = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = monomial_mul(m1, m2)
                s = out.get(m, Fraction(0)) + c1 * c2
                if s:
                    out[m] = s
                elif m in out:
                    del out[m]
        return Polynomial(self.ring, out, _clean=True)

    __rmul__ = __mul__

    def __pow__(self, exp: int) -> "Polynomial":
        if not isinstance(exp, int) or exp < 0:
            raise ValueError("polynomial powers must be non-negative integers")
        out = self.ring.one
        for _ in range(exp):
            out = out * self
        return out

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            same_ring(self, other)
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.const(other)
        return NotImplemented

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = self.ring.const(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring == other.ring and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self.ring, frozenset(self._terms.items())))

    def substitute(self, ring: PolynomialRing, images: Sequence["Polynomial"]) -> "Polynomial":
        """Apply the ring map sending variable i to ``images[i]`` (all in ``ring``)."""
        if len(images) != self.ring.nvars:
            raise ValueError("one image per variable required")
        powers = [{0: ring.one} for _ in images]
        out = ring.zero
        for exps, c in self._terms.items():
            term = ring.const(c)
            for i, e in enumerate(exps):
                if e:
                    cache = powers[i]
                    if e not in cache:
                        cache[e] = images[i] ** e
                    term = term * cache[e]
            out = out + term
        return out

    def __str__(self) -> str:
        return format_polynomial(self)

    def __repr__(self) -> str:
        return f"<{format_polynomial(self)} over {self.ring}>"


def _format_coeff(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_polynomial(p: Polynomial) -> str:
    """Canonical rendering: terms in descending grevlex, ``*`` and ``^`` explicit."""
    if not p.terms:
        return "0"
    chunks = []
    for exps in sorted(p.terms, key=GREVLEX.key, reverse=True):
        c = p.terms[exps]
        factors = []
        for name, e in zip(p.ring.variables, exps):
            if e == 1:
                factors.append(name)
            elif e > 1:
                factors.append(f"{name}^{e}")
        mag = abs(c)
        if factors and mag == 1:
            body = "*".join(factors)
        elif factors:
            body = "*".join([_format_coeff(mag)] + factors)
        else:
            body = _format_coeff(mag)
        chunks.append(("-" if c < 0 else "+", body))
    sign, body = chunks[0]
    out = ("-" if sign == "-" else "") + body
    for sign, body in chunks[1:]:
        out += f" {sign} {body}"
    return out


def parse_polynomial(text: str, ring: PolynomialRing) -> Polynomial:
    """Parse an expression with ``+ - * ^``, integer/rational literals and
    ring variables into a canonical polynomial.

    Raises :class:`~conormal._expr.ParseError` (a ``ValueError``) with the
    offending position on syntax errors or unknown names.
    """
    from ._expr import parse_polynomial_text

    return parse_polynomial_text(text, ring)


def partial_derivative(p: Polynomial, i: int) -> Polynomial:
    """Formal partial derivative with respect to the i-th ring variable."""
    n = p.ring.nvars
    if not 0 <= i < n:
        raise ValueError(f"variable index {i} out of range (ring has {n} variables)")
    out = {}
    for exps, c in p.terms.items():
        e = exps[i]
        if e:
            out[exps[:i] + (e - 1,) + exps[i + 1 :]] = c * e
    return Polynomial(p.ring, out, _clean=True)


def evaluate(p: Polynomial, point: Sequence[Scalar]) -> Fraction:
    """Exact value of ``p`` at a rational point of the ambient space."""
    if len(point) != p.ring.nvars:
        raise ValueError(f"point has {len(point)} coordinates, ring has {p.ring.nvars}")
    coords = [Fraction(v) for v in point]
    total = Fraction(0)
    for exps, c in p.terms.items():
        v = c
        for x, e in zip(coords, exps):
            if e:
                v *= x**e
        total += v
    return total
