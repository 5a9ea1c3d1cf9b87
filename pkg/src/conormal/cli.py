"""Command-line interface, germ file format, and the bundled example corpus.

Exit codes: 0 when the queried claim is certified/confirmed, 1 when it is
refuted or lacks a polynomial certificate (the report line disambiguates),
2 on input errors.

Germ files are UTF-8 and line-oriented; ``#`` starts a comment::

    ring x y z
    gen z^2 - x*y^2
    flag hypersurface
    flag complete_intersection
    form omega1 y*z*dx + 2*x*z*dy - 2*x*y*dz
    param u v -> u^2, v, u*v
"""

from __future__ import annotations

import argparse
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Optional

from ._expr import ParseError
from .forms import (
    DifferentialForm,
    Hyperplane,
    NotClosedError,
    VectorField,
    evaluate_form,
    exterior_derivative,
    form_degree,
    form_to_vector_field,
    format_form_parts,
    parse_form,
    radial_potential,
    volume_coefficient,
    wedge,
)
from .germs import (
    Germ,
    Parametrization,
    VerdictStatus,
    is_conormal,
    is_tangential,
    is_trivial_form,
    oracle_conormal_on_parametrization,
    trivial_form_generators,
    vanishes_on_singular_locus,
)
from .geometry import (
    BertiniVerdict,
    bertini_check,
    jacobian_ideal,
    random_hyperplane,
    regular_in_codimension,
)
from .groebner import ideal_membership, krull_dimension
from .poly import PolynomialRing, parse_polynomial


@dataclass
class GermFile:
    """Parsed contents of a germ file."""

    germ: Germ
    forms: dict = field(default_factory=dict)  # name -> list of homogeneous parts
    parametrization: Optional[Parametrization] = None

    def render(self) -> str:
        """Canonical text (parses back to equal data)."""
        lines = ["ring " + " ".join(self.germ.ring.variables)]
        lines += [f"gen {g}" for g in self.germ.generators]
        if self.germ.hypersurface:
            lines.append("flag hypersurface")
        if self.germ.complete_intersection:
            lines.append("flag complete_intersection")
        for name in self.forms:
            lines.append(f"form {name} {format_form_parts(self.forms[name])}")
        if self.parametrization is not None:
            par = self.parametrization
            lines.append(
                "param "
                + " ".join(par.ring.variables)
                + " -> "
                + ", ".join(str(p) for p in par.components)
            )
        return "\n".join(lines) + "\n"


class GermFileError(ValueError):
    pass


def parse_germ_text(text: str, source: str = "<string>") -> GermFile:
    ring = None
    gens = []
    flags = set()
    raw_forms = []
    raw_param = None

    def fail(lineno, message):
        raise GermFileError(f"{source}:{lineno}: {message}")

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        head, _, rest = line.partition(" ")
        rest = rest.strip()
        if head == "ring":
            if ring is not None:
                fail(lineno, "duplicate ring declaration")
            try:
                ring = PolynomialRing(rest.split())
            except ValueError as e:
                fail(lineno, str(e))
            continue
        if ring is None:
            fail(lineno, "the ring must be declared before any other directive")
        if head == "gen":
            try:
                gens.append(parse_polynomial(rest, ring))
            except ParseError as e:
                fail(lineno, f"bad generator: {e}")
        elif head == "flag":
            if rest not in ("hypersurface", "complete_intersection"):
                fail(lineno, f"unknown flag {rest!r}")
            flags.add(rest)
        elif head == "form":
            name, _, expr = rest.partition(" ")
            if not name or not expr.strip():
                fail(lineno, "expected: form <name> <expression>")
            try:
                raw_forms.append((lineno, name, parse_form(expr.strip(), ring)))
            except ParseError as e:
                fail(lineno, f"bad form {name!r}: {e}")
        elif head == "param":
            left, arrow, right = rest.partition("->")
            if not arrow:
                fail(lineno, "expected: param <variables> -> <polynomials>")
            try:
                pring = PolynomialRing(left.split())
                comps = [parse_polynomial(chunk, pring) for chunk in right.split(",")]
            except (ParseError, ValueError) as e:
                fail(lineno, f"bad parametrization: {e}")
            raw_param = (lineno, pring, comps)
        else:
            fail(lineno, f"unknown directive {head!r}")

    if ring is None:
        raise GermFileError(f"{source}: missing ring declaration")
    if not gens:
        raise GermFileError(f"{source}: missing generators")
    try:
        germ = Germ(
            ring,
            gens,
            hypersurface="hypersurface" in flags,
            complete_intersection="complete_intersection" in flags,
        )
    except ValueError as e:
        raise GermFileError(f"{source}: {e}") from None

    forms = {}
    for lineno, name, parts in raw_forms:
        if name in forms:
            raise GermFileError(f"{source}:{lineno}: duplicate form name {name!r}")
        forms[name] = parts
    par = None
    if raw_param is not None:
        lineno, pring, comps = raw_param
        try:
            par = Parametrization(germ, pring, comps)
        except ValueError as e:
            raise GermFileError(f"{source}:{lineno}: {e}") from None
    return GermFile(germ, forms, par)


def corpus_path(name: str) -> Path:
    return Path(str(resources.files("conormal").joinpath("corpus", name)))


def corpus_names() -> list:
    root = resources.files("conormal").joinpath("corpus")
    return sorted(p.name for p in root.iterdir() if p.name.endswith(".germ"))


def load_germ_file(path: str) -> GermFile:
    """Load a germ file from disk, falling back to the bundled corpus for
    bare names like ``umbrella.germ``."""
    p = Path(path)
    if not p.exists() and p.name == path and path in corpus_names():
        p = corpus_path(path)
    if not p.exists():
        raise GermFileError(f"no such germ file: {path}")
    return parse_germ_text(p.read_text(encoding="utf-8"), source=str(path))


def _resolve_form(gf: GermFile, text: str) -> list:
    if text in gf.forms:
        return gf.forms[text]
    return parse_form(text, gf.germ.ring)


def _aggregate(verdicts) -> VerdictStatus:
    statuses = {v.status for v in verdicts}
    if VerdictStatus.CERTIFIED_NO in statuses:
        return VerdictStatus.CERTIFIED_NO
    if VerdictStatus.NO_CERTIFICATE in statuses:
        return VerdictStatus.NO_CERTIFICATE
    return VerdictStatus.CERTIFIED_YES


def _print_germ(gf: GermFile):
    print(f"germ: {gf.germ}")


def _cmd_check(args) -> int:
    gf = load_germ_file(args.germ)
    parts = _resolve_form(gf, args.form)
    print(f"form: {format_form_parts(parts)}")
    _print_germ(gf)
    if not parts:
        print("verdict: CONORMAL (certified)")
        print("witness: the zero form is conormal to every germ")
        return 0
    if gf.germ.complete_intersection:
        verdicts = []
        for part in parts:
            v = is_conormal(part, gf.germ)
            print(f"degree {form_degree(part)} part: {v}")
            verdicts.append(v)
        status = _aggregate(verdicts)
        if status is VerdictStatus.CERTIFIED_YES:
            print("verdict: CONORMAL (certified)")
            ring = gf.germ.ring
            origin = (0,) * ring.nvars
            for part in parts:
                if form_degree(part) == ring.nvars - 1 and evaluate_form(part, origin):
                    print(
                        "note: Rossi decomposition applies (a conormal (n-1)-form "
                        "does not vanish at 0): the germ splits off a (C, 0) factor"
                    )
                    break
            return 0
        if status is VerdictStatus.CERTIFIED_NO:
            print("verdict: NOT CONORMAL (refuted)")
        else:
            print("verdict: NO CERTIFICATE (no polynomial certificate; germ-level status open)")
        return 1
    if gf.parametrization is None:
        print(
            "verdict: NO CERTIFICATE (germ is not flagged a complete intersection "
            "and has no parametrization)"
        )
        return 1
    ok = all(oracle_conormal_on_parametrization(part, gf.parametrization) for part in parts)
    if ok:
        print("verdict: CONORMAL (parametrization oracle: pullback vanishes)")
        return 0
    print("verdict: NOT CONORMAL (parametrization oracle: nonzero pullback)")
    return 1


def _cmd_tangent(args) -> int:
    gf = load_germ_file(args.germ)
    ring = gf.germ.ring
    chunks = args.field.split(",")
    if len(chunks) != ring.nvars:
        raise GermFileError(
            f"--field needs {ring.nvars} comma-separated components for {ring}"
        )
    field_ = VectorField(ring, [parse_polynomial(c, ring) for c in chunks])
    _print_germ(gf)
    print(f"field: {field_}")
    verdict = is_tangential(field_, gf.germ)
    print(f"status: {verdict}")
    if verdict.is_certified_yes:
        print("verdict: TANGENTIAL (certified)")
        return 0
    if verdict.is_certified_no:
        print("verdict: NOT TANGENTIAL (refuted)")
    else:
        print("verdict: NO CERTIFICATE")
    return 1


def _cmd_trivial(args) -> int:
    gf = load_germ_file(args.germ)
    parts = _resolve_form(gf, args.form)
    print(f"form: {format_form_parts(parts)}")
    _print_germ(gf)
    trivial = True
    for part in parts:
        if form_degree(part) == 0:
            ok = ideal_membership(part, gf.germ.ideal)
        else:
            ok = is_trivial_form(part, gf.germ)
        print(f"degree {form_degree(part)} part trivial: {'yes' if ok else 'no'}")
        trivial = trivial and ok
    if trivial:
        print("verdict: TRIVIAL (inside the differential ideal generated by the germ ideal)")
        return 0
    print("verdict: NON-TRIVIAL (outside the module generated by the trivial forms)")
    return 1


def _cmd_singular(args) -> int:
    gf = load_germ_file(args.germ)
    _print_germ(gf)
    jac = jacobian_ideal(gf.germ)
    print("jacobian ideal: " + "; ".join(str(g) for g in jac.generators))
    dim_x = gf.germ.dimension()
    dim_sing = krull_dimension(jac)
    print(f"dim X = {dim_x}")
    print(f"dim Sing X = {dim_sing}" + (" (empty)" if dim_sing < 0 else ""))
    for k in range(0, dim_x + 1):
        flag = regular_in_codimension(gf.germ, k)
        print(f"regular in codimension {k}: {'yes' if flag else 'no'}")
    return 0


def _parse_hyperplane(text: str, ring: PolynomialRing) -> Hyperplane:
    p = parse_polynomial(text, ring)
    normal = [0] * ring.nvars
    for exps, c in p.terms.items():
        if sum(exps) != 1:
            raise GermFileError(
                "a hyperplane must be a homogeneous linear form through the origin"
            )
        normal[exps.index(1)] = c
    return Hyperplane(ring, normal)


def _cmd_bertini(args) -> int:
    gf = load_germ_file(args.germ)
    _print_germ(gf)
    par = gf.parametrization
    if args.hyperplane is not None:
        hyperplanes = [(None, _parse_hyperplane(args.hyperplane, gf.germ.ring))]
    else:
        hyperplanes = [
            (i, random_hyperplane(gf.germ.ring, args.seed + i, args.bound))
            for i in range(args.trials)
        ]
    with ThreadPoolExecutor(max_workers=min(8, max(1, len(hyperplanes)))) as pool:
        reports = list(pool.map(lambda hw: bertini_check(gf.germ, hw[1], par), hyperplanes))
    violations = 0
    for (index, _), report in zip(hyperplanes, reports):
        label = "check" if index is None else f"trial {index:02d}"
        print(f"{label}: {report.summary()}")
        if report.verdict is BertiniVerdict.VIOLATION:
            violations += 1
    print(f"violations: {violations}")
    return 0 if violations == 0 else 1


def _cmd_potential(args) -> int:
    gf = load_germ_file(args.germ)
    parts = _resolve_form(gf, args.form)
    _print_germ(gf)
    print(f"form: {format_form_parts(parts)}")
    if len(parts) != 1 or form_degree(parts[0]) != 1:
        raise GermFileError("the potential command expects a homogeneous 1-form")
    g = radial_potential(parts[0])
    print(f"potential: {g}")
    back = exterior_derivative(g)
    print(f"d(potential) equals the form: {'yes' if back == parts[0] else 'no'}")
    member = ideal_membership(g, gf.germ.ideal)
    print(f"potential in the germ ideal: {'yes' if member else 'no'}")
    return 0 if member else 1


def verify_examples() -> tuple:
    """Run the bundled corpus end-to-end; returns (report lines, all passed)."""
    lines = []
    passed = 0
    total = 0

    def check(label, condition):
        nonlocal passed, total
        total += 1
        if condition:
            passed += 1
        lines.append(f"{label}: {'PASS' if condition else 'FAIL'}")

    # --- coordinate subspace: smooth, conormal forms = differential ideal.
    gf = load_germ_file("coordinate_subspace.germ")
    germ = gf.germ
    ring = germ.ring
    x1, x2, x3, x4 = ring.gens()
    check("[coordinate_subspace] jacobian ideal is the unit ideal", jacobian_ideal(germ).is_unit())
    check(
        "[coordinate_subspace] regular in codimension 1 and 2",
        regular_in_codimension(germ, 1) and regular_in_codimension(germ, 2),
    )
    dx1 = DifferentialForm(ring, 1, {(0,): ring.one})
    dx3 = DifferentialForm(ring, 1, {(2,): ring.one})
    check(
        "[coordinate_subspace] dx1 and x1*dx3 certified conormal",
        is_conormal(dx1, germ).is_certified_yes
        and is_conormal(dx3.scale(x1), germ).is_certified_yes,
    )
    check(
        "[coordinate_subspace] d(x1*x3) conormal and trivial",
        is_conormal(exterior_derivative(x1 * x3), germ).is_certified_yes
        and is_trivial_form(exterior_derivative(x1 * x3), germ),
    )
    check(
        "[coordinate_subspace] dx3 is not conormal (oracle agrees)",
        is_conormal(dx3, germ).is_certified_no
        and not oracle_conormal_on_parametrization(dx3, gf.parametrization),
    )

    # --- cusp: trivial in degree 1, non-trivial 2-form.
    gf = load_germ_file("cusp3.germ")
    germ = gf.germ
    f = germ.generators[0]
    [omega2] = gf.forms["omega2"]
    eta = wedge(omega2, exterior_derivative(f))
    check(
        "[cusp3] omega2 certified conormal with wedge = 3*f*volume",
        is_conormal(omega2, germ).is_certified_yes and volume_coefficient(eta) == 3 * f,
    )
    check("[cusp3] omega2 is non-trivial", not is_trivial_form(omega2, germ))
    check("[cusp3] regular in codimension 1 (degree-1 forms trivial)", regular_in_codimension(germ, 1))
    check(
        "[cusp3] trivial generators in degree 1 are certified conormal",
        all(is_conormal(g, germ).is_certified_yes for g in trivial_form_generators(germ, 1)),
    )

    # --- umbrella: singular along a line; the richest of the examples.
    gf = load_germ_file("umbrella.germ")
    germ = gf.germ
    f = germ.generators[0]
    par = gf.parametrization
    [omega1] = gf.forms["omega1"]
    [omega2] = gf.forms["omega2"]
    check(
        "[umbrella] omega1 and omega2 certified conormal",
        is_conormal(omega1, germ).is_certified_yes
        and is_conormal(omega2, germ).is_certified_yes,
    )
    check("[umbrella] omega1 is non-trivial", not is_trivial_form(omega1, germ))
    check("[umbrella] not regular in codimension 1", not regular_in_codimension(germ, 1))
    field_ = form_to_vector_field(omega2)
    check(
        "[umbrella] D(omega2) certified tangential with V(f) = -2*f",
        is_tangential(field_, germ).is_certified_yes and field_.apply(f) == f.scale(-2),
    )
    check(
        "[umbrella] parametrization oracle agrees on omega1 and omega2",
        oracle_conormal_on_parametrization(omega1, par)
        and oracle_conormal_on_parametrization(omega2, par),
    )
    check(
        "[umbrella] omega1 vanishes on the singular locus",
        vanishes_on_singular_locus(omega1, germ),
    )

    # --- segre cone: trivial in degrees 1 and 2, non-trivial 3-form.
    gf = load_germ_file("segre.germ")
    germ = gf.germ
    f = germ.generators[0]
    [omega3] = gf.forms["omega3"]
    check(
        "[segre] regular in codimension 1 and 2",
        regular_in_codimension(germ, 1) and regular_in_codimension(germ, 2),
    )
    eta = wedge(omega3, exterior_derivative(f))
    check(
        "[segre] omega3 certified conormal with wedge = -f*volume",
        is_conormal(omega3, germ).is_certified_yes and volume_coefficient(eta) == -f,
    )
    check("[segre] omega3 is non-trivial", not is_trivial_form(omega3, germ))
    check("[segre] not regular in codimension 3", not regular_in_codimension(germ, 3))

    lines.append(f"summary: {passed}/{total} checks passed")
    return lines, passed == total


def _cmd_verify_examples(args) -> int:
    lines, ok = verify_examples()
    for line in lines:
        print(line)
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="conormal",
        description="Decide conormality, triviality and singular-locus behaviour "
        "of polynomial differential forms on embedded affine germs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def germ_arg(p):
        p.add_argument("--germ", required=True, help="germ file (bundled corpus names work)")

    p = sub.add_parser("check", help="decide conormality of a form")
    germ_arg(p)
    p.add_argument("--form", required=True, help="form expression or a named form")
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("tangent", help="decide tangency of a vector field")
    germ_arg(p)
    p.add_argument("--field", required=True, help="comma-separated components p1, ..., pn")
    p.set_defaults(func=_cmd_tangent)

    p = sub.add_parser("trivial", help="test membership in the trivial conormal forms")
    germ_arg(p)
    p.add_argument("--form", required=True, help="form expression or a named form")
    p.set_defaults(func=_cmd_trivial)

    p = sub.add_parser("singular", help="jacobian ideal, its dimension, regularity table")
    germ_arg(p)
    p.set_defaults(func=_cmd_singular)

    p = sub.add_parser("bertini", help="randomized hyperplane-section harness")
    germ_arg(p)
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--bound", type=int, default=10)
    p.add_argument("--hyperplane", help="check one explicit hyperplane (linear form)")
    p.set_defaults(func=_cmd_bertini)

    p = sub.add_parser("potential", help="radial potential of a closed 1-form")
    germ_arg(p)
    p.add_argument("--form", required=True, help="closed 1-form expression or named form")
    p.set_defaults(func=_cmd_potential)

    p = sub.add_parser("verify-examples", help="run the bundled example corpus end-to-end")
    p.set_defaults(func=_cmd_verify_examples)
    return parser


def dispatch(argv) -> int:
    """Run one command; returns the exit code instead of raising SystemExit."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 0 if e.code in (0, None) else 2
    try:
        return args.func(args)
    except NotClosedError as e:
        print(f"error: NotClosed: {e}")
        return 2
    except (GermFileError, ParseError, ValueError) as e:
        print(f"error: {e}")
        return 2


def main():
    sys.exit(dispatch(sys.argv[1:]))


if __name__ == "__main__":
    main()
