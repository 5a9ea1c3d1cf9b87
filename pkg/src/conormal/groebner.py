"""Buchberger's algorithm for ideals and for submodules of free modules.

Everything runs over the exact rational polynomials of :mod:`conormal.poly`.
The public operations are ``reduce`` (multivariate division / normal form),
``buchberger`` (reduced Groebner basis), ``ideal_membership``, ``eliminate``,
``radical_membership`` (Rabinowitsch trick), ``krull_dimension`` (independent
variable sets modulo the leading-term ideal of a grevlex basis) and
``module_membership`` (Buchberger over a free module in a term-over-position
order).

Bases are reduced, monic and sorted, so they are canonical per (ideal, order);
:class:`Ideal` caches them lazily behind a lock, which makes concurrent
membership tests against one ideal cheap and safe.
"""

from __future__ import annotations

import threading
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Optional, Sequence

from .poly import (
    GREVLEX,
    MonomialOrder,
    Polynomial,
    PolynomialRing,
    block_order,
    monomial_div,
    monomial_divides,
    monomial_lcm,
    monomial_mul,
    same_ring,
)

# Optional callback fired as observer(generators, order, basis) after every
# basis computation; used by the test suite to audit S-polynomial reduction.
_basis_observer = None


def reduce(f: Polynomial, basis: Sequence[Polynomial], order: MonomialOrder) -> Polynomial:
    """Full normal form of ``f`` modulo ``basis``.

    The result r satisfies f - r in <basis> and no term of r is divisible by
    a leading term of the basis.  With the empty basis, r = f.
    """
    divisors = [(g, g.leading(order)) for g in basis if g]
    if divisors:
        same_ring(f, *[g for g, _ in divisors])
    work = dict(f.terms)
    remainder: dict = {}
    while work:
        m = max(work, key=order.key)
        c = work.pop(m)
        for g, (lm, lc) in divisors:
            if monomial_divides(lm, m):
                q = monomial_div(m, lm)
                scale = c / lc
                for gm, gc in g.terms.items():
                    if gm == lm:
                        continue
                    key = monomial_mul(gm, q)
                    s = work.get(key, Fraction(0)) - scale * gc
                    if s:
                        work[key] = s
                    elif key in work:
                        del work[key]
                break
        else:
            remainder[m] = c
    return Polynomial(f.ring, remainder, _clean=True)


def s_polynomial(f: Polynomial, g: Polynomial, order: MonomialOrder) -> Polynomial:
    """The cancellation combination of f and g at the lcm of their leads."""
    fm, fc = f.leading(order)
    gm, gc = g.leading(order)
    lcm = monomial_lcm(fm, gm)
    uf = _mono_times(f, monomial_div(lcm, fm), 1 / fc)
    ug = _mono_times(g, monomial_div(lcm, gm), 1 / gc)
    return uf - ug


def _mono_times(p: Polynomial, mono, coeff) -> Polynomial:
    c = Fraction(coeff)
    return Polynomial(
        p.ring, {monomial_mul(m, mono): v * c for m, v in p.terms.items()}, _clean=True
    )


def _autoreduce(basis: list, order: MonomialOrder) -> list:
    # Only valid on a completed Groebner basis: drop elements whose lead is
    # divisible by another lead, then replace each tail by its normal form
    # against the (sequentially updated) rest.  Leads never change, so the
    # result is the unique reduced basis.
    basis = [g.monic(order) for g in basis if g]
    minimal = []
    for i, g in enumerate(basis):
        lm = g.leading(order)[0]
        keep = True
        for j, h in enumerate(basis):
            if i == j:
                continue
            hm = h.leading(order)[0]
            if monomial_divides(hm, lm) and (hm != lm or j < i):
                keep = False
                break
        if keep:
            minimal.append(g)
    reduced: list = []
    for i in range(len(minimal)):
        others = reduced + minimal[i + 1 :]
        r = reduce(minimal[i], others, order)
        reduced.append(r.monic(order))
    reduced.sort(key=lambda g: order.key(g.leading(order)[0]))
    return reduced


def buchberger(gens: Sequence[Polynomial], order: MonomialOrder) -> list:
    """Reduced Groebner basis of the ideal generated by ``gens``.

    Classical Buchberger with normal-pair selection and the coprime-lead and
    chain criteria; the output is auto-reduced, monic and sorted by leading
    term, hence canonical for the (ideal, order) pair.
    """
    if not gens:
        raise ValueError("buchberger needs at least one generator")
    same_ring(*gens)
    seen = set()
    basis = []
    for g in gens:
        if g:
            g = g.monic(order)
            if g not in seen:
                seen.add(g)
                basis.append(g)
    if not basis:
        return []
    pending = {(i, j) for j in range(len(basis)) for i in range(j)}
    while pending:
        i, j = min(
            pending,
            key=lambda p: (
                order.key(
                    monomial_lcm(
                        basis[p[0]].leading(order)[0], basis[p[1]].leading(order)[0]
                    )
                ),
                p,
            ),
        )
        pending.remove((i, j))
        fi, fj = basis[i], basis[j]
        mi, mj = fi.leading(order)[0], fj.leading(order)[0]
        lcm = monomial_lcm(mi, mj)
        if lcm == monomial_mul(mi, mj):
            continue  # coprime leads: S-polynomial reduces to zero
        if _chain_criterion(basis, order, pending, i, j, lcm):
            continue
        r = reduce(s_polynomial(fi, fj, order), basis, order)
        if r:
            basis.append(r.monic(order))
            k = len(basis) - 1
            pending.update((t, k) for t in range(k))
    result = _autoreduce(basis, order)
    if _basis_observer is not None:
        _basis_observer(list(gens), order, list(result))
    return result


def _chain_criterion(basis, order, pending, i, j, lcm) -> bool:
    # Skip (i, j) if some k has its lead dividing lcm(i, j) while both
    # (i, k) and (j, k) have already been treated.
    for k in range(len(basis)):
        if k in (i, j):
            continue
        if not monomial_divides(basis[k].leading(order)[0], lcm):
            continue
        ik = (min(i, k), max(i, k))
        jk = (min(j, k), max(j, k))
        if ik not in pending and jk not in pending:
            return True
    return False


class Ideal:
    """An ideal given by generators, with a lazily cached Groebner basis.

    The cache is keyed by monomial order and filled at most once per order
    (double-checked behind a lock), so concurrent readers share one basis.
    """

    __slots__ = ("ring", "generators", "order", "_bases", "_lock")

    def __init__(self, generators: Sequence[Polynomial], order: MonomialOrder = GREVLEX):
        gens = tuple(generators)
        if not gens:
            raise ValueError("an ideal needs at least one generator")
        self.ring = same_ring(*gens)
        self.generators = gens
        self.order = order
        self._bases: dict = {}
        self._lock = threading.Lock()

    def groebner_basis(self, order: Optional[MonomialOrder] = None) -> tuple:
        order = order or self.order
        cached = self._bases.get(order)
        if cached is None:
            with self._lock:
                cached = self._bases.get(order)
                if cached is None:
                    cached = tuple(buchberger(self.generators, order))
                    self._bases[order] = cached
        return cached

    def contains(self, f: Polynomial) -> bool:
        return ideal_membership(f, self)

    def is_unit(self) -> bool:
        """Whether the ideal is the whole ring (empty zero set)."""
        basis = self.groebner_basis()
        return any(g.is_constant() and g for g in basis)

    def same_ideal(self, other: "Ideal") -> bool:
        """Exact ideal equality via mutual membership of generators."""
        if self.ring != other.ring:
            raise ValueError("ideals live in different rings")
        return all(ideal_membership(g, other) for g in self.generators) and all(
            ideal_membership(g, self) for g in other.generators
        )

    def __repr__(self) -> str:
        return "Ideal(" + ", ".join(str(g) for g in self.generators) + ")"


def ideal_membership(f: Polynomial, ideal: Ideal) -> bool:
    """Exact membership f in I over the polynomial ring."""
    if f.ring != ideal.ring:
        raise ValueError(f"ring mismatch: {f.ring} vs {ideal.ring}")
    if not f:
        return True
    return not reduce(f, ideal.groebner_basis(), ideal.order)


def _rename(p: Polynomial, ring: PolynomialRing, positions: Sequence[int]) -> Polynomial:
    """Move p into ``ring``, sending old variable i to position positions[i]."""
    out = {}
    n = ring.nvars
    for exps, c in p.terms.items():
        m = [0] * n
        for i, e in enumerate(exps):
            m[positions[i]] = e
        out[tuple(m)] = c
    return Polynomial(ring, out, _clean=True)


def eliminate(ideal: Ideal, drop: Iterable[int]) -> Ideal:
    """Generators of I intersected with the subring omitting the ``drop``
    variables, computed with a block order that puts the dropped block first.

    The result lives in a fresh ring on the remaining variables, in their
    original order.
    """
    ring = ideal.ring
    drop = sorted(set(drop))
    for i in drop:
        if not 0 <= i < ring.nvars:
            raise ValueError(f"variable index {i} out of range")
    keep = [i for i in range(ring.nvars) if i not in drop]
    if not keep:
        raise ValueError("cannot eliminate every variable")
    if not drop:
        return Ideal(ideal.generators, ideal.order)

    permuted_names = [ring.variables[i] for i in drop] + [ring.variables[i] for i in keep]
    work_ring = PolynomialRing(permuted_names)
    positions = [0] * ring.nvars
    for new_pos, old in enumerate(drop + keep):
        positions[old] = new_pos
    moved = [_rename(g, work_ring, positions) for g in ideal.generators]
    basis = buchberger(moved, block_order(len(drop)))

    target = PolynomialRing([ring.variables[i] for i in keep])
    kept = []
    k = len(drop)
    for g in basis:
        if all(all(e == 0 for e in m[:k]) for m in g.terms):
            back = [0] * work_ring.nvars
            for new_pos in range(k, work_ring.nvars):
                back[new_pos] = new_pos - k
            kept.append(_rename(g, target, back))
    return Ideal(kept or [target.zero], GREVLEX)


def _fresh_name(ring: PolynomialRing, base: str = "_t") -> str:
    name = base
    while name in ring._index:
        name += "_"
    return name


def radical_membership(g: Polynomial, ideal: Ideal) -> bool:
    """Whether g lies in the radical of I, i.e. vanishes on the zero set of I.

    Decided by the Rabinowitsch trick: g is in the radical iff the extended
    ideal I + (1 - t*g), with t a fresh variable, is the unit ideal.
    """
    ring = ideal.ring
    if g.ring != ring:
        raise ValueError(f"ring mismatch: {g.ring} vs {ring}")
    if not g:
        return True
    ext = PolynomialRing(ring.variables + (_fresh_name(ring),))
    lift = list(range(ring.nvars))
    lifted = [_rename(p, ext, lift) for p in ideal.generators]
    t = ext.var(ext.nvars - 1)
    relation = ext.one - t * _rename(g, ext, lift)
    basis = buchberger(lifted + [relation], GREVLEX)
    return any(b.is_constant() and b for b in basis)


def krull_dimension(ideal: Ideal) -> int:
    """Dimension of the affine zero set of I; -1 for the unit ideal.

    Equals the largest size of a set S of variables such that no leading
    term of a grevlex basis involves only variables from S.
    """
    basis = ideal.groebner_basis(GREVLEX)
    n = ideal.ring.nvars
    if not basis:
        return n  # zero ideal: the whole space
    if any(g.is_constant() for g in basis):
        return -1
    supports = [
        frozenset(i for i, e in enumerate(g.leading(GREVLEX)[0]) if e) for g in basis
    ]
    for size in range(n, 0, -1):
        for subset in combinations(range(n), size):
            s = set(subset)
            if not any(sup <= s for sup in supports):
                return size
    return 0


class ModuleElement:
    """A vector of polynomials: an element of a free module R^rank."""

    __slots__ = ("ring", "components")

    def __init__(self, components: Sequence[Polynomial]):
        comps = tuple(components)
        if not comps:
            raise ValueError("a module element needs positive rank")
        self.ring = same_ring(*comps)
        self.components = comps

    @property
    def rank(self) -> int:
        return len(self.components)

    def __bool__(self) -> bool:
        return any(self.components)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, ModuleElement)
            and self.ring == other.ring
            and self.components == other.components
        )

    def __hash__(self) -> int:
        return hash(self.components)

    def __sub__(self, other: "ModuleElement") -> "ModuleElement":
        if self.rank != other.rank:
            raise ValueError("rank mismatch")
        return ModuleElement([a - b for a, b in zip(self.components, other.components)])

    def leading(self, order: MonomialOrder):
        """Leading ((monomial, position), coefficient) in term-over-position
        order: grevlex-style on the monomial, lower position wins ties."""
        best = None
        for pos, p in enumerate(self.components):
            lead = p.leading(order)
            if lead is None:
                continue
            key = (order.key(lead[0]), -pos)
            if best is None or key > best[0]:
                best = (key, (lead[0], pos), lead[1])
        if best is None:
            return None
        return best[1], best[2]

    def mono_times(self, mono, coeff) -> "ModuleElement":
        return ModuleElement([_mono_times(p, mono, coeff) for p in self.components])

    def __repr__(self) -> str:
        return "(" + ", ".join(str(p) for p in self.components) + ")"


def module_reduce(v: ModuleElement, basis: Sequence[ModuleElement], order: MonomialOrder) -> ModuleElement:
    """Normal form of v modulo a list of module elements (same rank)."""
    divisors = [(g, g.leading(order)) for g in basis if g]
    remainder = [dict() for _ in range(v.rank)]
    work = [dict(p.terms) for p in v.components]

    def lead():
        best = None
        for pos, terms in enumerate(work):
            if not terms:
                continue
            m = max(terms, key=order.key)
            key = (order.key(m), -pos)
            if best is None or key > best[0]:
                best = (key, m, pos)
        return best

    while True:
        top = lead()
        if top is None:
            break
        _, m, pos = top
        c = work[pos].pop(m)
        for g, ((lm, lpos), lc) in divisors:
            if lpos == pos and monomial_divides(lm, m):
                q = monomial_div(m, lm)
                scale = c / lc
                for cpos, comp in enumerate(g.components):
                    for gm, gc in comp.terms.items():
                        if cpos == lpos and gm == lm:
                            continue
                        key = monomial_mul(gm, q)
                        s = work[cpos].get(key, Fraction(0)) - scale * gc
                        if s:
                            work[cpos][key] = s
                        elif key in work[cpos]:
                            del work[cpos][key]
                break
        else:
            remainder[pos][m] = c
    ring = v.ring
    return ModuleElement([Polynomial(ring, r, _clean=True) for r in remainder])


def module_buchberger(gens: Sequence[ModuleElement], order: MonomialOrder) -> list:
    """Groebner basis of a submodule of R^rank in term-over-position order.

    Only pairs with equal leading position yield S-vectors; the coprime-lead
    shortcut is not valid over modules, so every pair is reduced.
    """
    if not gens:
        return []
    rank = gens[0].rank
    same_ring(*[g.components[0] for g in gens])
    for g in gens:
        if g.rank != rank:
            raise ValueError("rank mismatch among module generators")
    basis = [g for g in gens if g]
    if not basis:
        return []
    pending = {(i, j) for j in range(len(basis)) for i in range(j)}
    while pending:
        i, j = min(pending)
        pending.remove((i, j))
        gi, gj = basis[i], basis[j]
        (mi, pi), ci = gi.leading(order)
        (mj, pj), cj = gj.leading(order)
        if pi != pj:
            continue
        lcm = monomial_lcm(mi, mj)
        s = gi.mono_times(monomial_div(lcm, mi), 1 / ci) - gj.mono_times(
            monomial_div(lcm, mj), 1 / cj
        )
        r = module_reduce(s, basis, order)
        if r:
            basis.append(r)
            k = len(basis) - 1
            pending.update((t, k) for t in range(k))
    return basis


def module_membership(
    v: ModuleElement, gens: Sequence[ModuleElement], order: MonomialOrder = GREVLEX
) -> bool:
    """Whether v lies in the submodule of R^rank generated by ``gens``."""
    if not gens:
        return not v
    for g in gens:
        if g.rank != v.rank:
            raise ValueError("rank mismatch")
        if g.ring != v.ring:
            raise ValueError("ring mismatch")
    basis = module_buchberger(gens, order)
    return not module_reduce(v, basis, order)
