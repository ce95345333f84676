"""chromalie command line.

Exit codes: 0 all selected checks pass, 1 a violation or failed
construction, 2 malformed input.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import axioms
from .algebra import check_evenness, skew_complete, unforced_diagonals
from .constructions import ConstructionError, commutator_algebra, endo_twist_bracket, sigma_twist
from .corpus import CORPUS_IDS, build
from .fileio import RATIONAL, FormatError, dumps_algebra, loads_algebra, loads_map, loads_sigma
from .grading import MalformedInputError, SupportMissError

EXIT_OK, EXIT_VIOLATION, EXIT_MALFORMED = 0, 1, 2


def _suite(flavor: str, everything: bool) -> list:
    G = [(f"{g.name}-hom-associativity",
          lambda A, w, g=g: axioms.check_G_hom_associative(A, None, g, w)) for g in axioms.SubgroupTag]
    checks = {
        "evenness": lambda A, w: check_evenness(A),
        "twist-even": lambda A, w: axioms.check_twist_even(A),
        "twist-endomorphism": lambda A, w: axioms.check_twist_multiplicative(A, None, w),
        "eps-skew": lambda A, w: axioms.check_eps_skew(A, w),
        "eps-jacobi": lambda A, w: axioms.check_eps_jacobi(A, w),
        "hom-eps-jacobi": lambda A, w: axioms.check_hom_eps_jacobi(A, None, w),
        "hom-associativity": lambda A, w: axioms.check_hom_associativity(A, None, w),
        "flexible": lambda A, w: axioms.check_flexible(A, None, w),
        "admissible": lambda A, w: axioms.check_admissible(A, None, w),
        "S-symmetry": lambda A, w: axioms.check_S_symmetry(A, None, w),
    }
    if everything:
        return list(checks.items()) + G
    names = {
        "raw": ["evenness"],
        "lie-color": ["evenness", "eps-skew", "eps-jacobi"],
        "hom-lie-color": ["evenness", "twist-even", "twist-endomorphism", "eps-skew", "hom-eps-jacobi"],
        "hom-color": ["evenness", "twist-even", "twist-endomorphism", "hom-associativity"],
    }[flavor]
    return [(n, checks[n]) for n in names]


def _violation_json(A, v, target=None):
    basis = target if target is not None else A.basis
    return {
        "identity": v.identity,
        "tuple": [A.basis.names[i] for i in v.indices],
        "residual": {basis.names[i]: str(c) for i, c in v.residual.items()},
    }


def render(A, reports, fmt: str, notes=(), target=None) -> str:
    passed = all(r.passed for _, r in reports)
    first = next((r.first() for _, r in reports if not r.passed), None)
    if fmt == "json":
        doc = {
            "passed": passed,
            "checks": [
                {
                    "name": name,
                    "passed": r.passed,
                    "checked": r.checked,
                    "unit": r.unit,
                    "violations": [_violation_json(A, v, target) for v in r.entries],
                }
                for name, r in reports
            ],
            "notes": list(notes),
        }
        if first is not None:
            doc["first_violation"] = first.describe(A, target)
        return json.dumps(doc, indent=2) + "\n"
    lines = [f"note: {n}" for n in notes]
    for name, r in reports:
        if r.passed:
            lines.append(f"{name}: PASS ({r.checked} {r.unit})")
        else:
            lines.append(f"{name}: FAIL ({len(r.entries)} of {r.checked} {r.unit})")
            lines.extend("  " + v.describe(A, target) for v in r.entries)
    if first is None:
        lines.append("result: PASS")
    else:
        lines.append("result: FAIL")
        lines.append(f"first violation: {first.describe(A, target)}")
    return "\n".join(lines) + "\n"


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc.strerror}") from None


def _write(text: str, path: str | None):
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def cmd_verify(args) -> int:
    A = loads_algebra(_read(args.file))
    notes = []
    if args.skew_complete:
        A = skew_complete(A)
        for i in unforced_diagonals(A):
            name = A.basis.names[i]
            notes.append(f"[{name},{name}] defaulted to 0 although eps({name},{name}) = -1 "
                         f"and the component of degree 2*deg({name}) is nonzero")
    reports = [(name, fn(A, args.workers)) for name, fn in _suite(A.flavor, args.all)]
    sys.stdout.write(render(A, reports, args.format, notes))
    return EXIT_OK if all(r.passed for _, r in reports) else EXIT_VIOLATION


def cmd_twist_endo(args) -> int:
    L = loads_algebra(_read(args.file))
    zeta = loads_map(_read(args.map), L.basis)
    try:
        out = endo_twist_bracket(L, zeta)
    except ConstructionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VIOLATION
    _write(dumps_algebra(out), args.output)
    return EXIT_OK


def cmd_twist_sigma(args) -> int:
    L = loads_algebra(_read(args.file))
    sigma = loads_sigma(_read(args.sigma), L.spec)
    try:
        out = sigma_twist(L, sigma, args.mode)
    except (ConstructionError, SupportMissError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VIOLATION
    _write(dumps_algebra(out), args.output)
    return EXIT_OK


def cmd_commutator(args) -> int:
    import warnings

    A = loads_algebra(_read(args.file))
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        out = commutator_algebra(A)
    for w in caught:
        print(f"warning: {w.message}", file=sys.stderr)
    _write(dumps_algebra(out), args.output)
    return EXIT_OK


def cmd_example(args) -> int:
    if args.id not in CORPUS_IDS:
        print(f"error: unknown example {args.id!r}; choose from {', '.join(CORPUS_IDS)}", file=sys.stderr)
        return EXIT_MALFORMED
    for p in args.params:
        if not RATIONAL.match(p):
            raise FormatError(f"parameter {p!r} is not a rational")
    try:
        A = build(args.id, *(Fraction(p) for p in args.params))
    except (ValueError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MALFORMED
    _write(dumps_algebra(A), args.output)
    return EXIT_OK


def cmd_check_hom(args) -> int:
    A = loads_algebra(_read(args.file_a))
    B = loads_algebra(_read(args.file_b))
    f = loads_map(_read(args.map), A.basis, B.basis)
    rep = axioms.check_morphism(A, B, f, args.workers)
    sys.stdout.write(render(A, [("morphism", rep)], args.format, target=B.basis))
    return EXIT_OK if rep.passed else EXIT_VIOLATION


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="chromalie", description="Verify and twist Lie color algebras.")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run the axiom checks selected by the flavor")
    v.add_argument("file")
    v.add_argument("--all", action="store_true", help="run every check")
    v.add_argument("--format", choices=("text", "json"), default="text")
    v.add_argument("--skew-complete", action="store_true",
                   help="fill missing [y,x] from [x,y] by eps-skew-symmetry first")
    v.add_argument("--workers", type=int, default=1)
    v.set_defaults(func=cmd_verify)

    t = sub.add_parser("twist-endo", help="twist a Lie color algebra by an even endomorphism")
    t.add_argument("file")
    t.add_argument("--map", required=True)
    t.add_argument("-o", "--output")
    t.set_defaults(func=cmd_twist_endo)

    s = sub.add_parser("twist-sigma", help="sigma-twist an algebra")
    s.add_argument("file")
    s.add_argument("--sigma", required=True)
    s.add_argument("--mode", choices=("symmetric", "multiplier"), required=True)
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_twist_sigma)

    c = sub.add_parser("commutator", help="color commutator algebra")
    c.add_argument("file")
    c.add_argument("-o", "--output")
    c.set_defaults(func=cmd_commutator)

    e = sub.add_parser("example", help="emit a built-in example algebra")
    e.add_argument("id")
    e.add_argument("params", nargs="*")
    e.add_argument("-o", "--output")
    e.set_defaults(func=cmd_example)

    h = sub.add_parser("check-hom", help="check a map between two algebras is a morphism")
    h.add_argument("file_a")
    h.add_argument("file_b")
    h.add_argument("--map", required=True)
    h.add_argument("--format", choices=("text", "json"), default="text")
    h.add_argument("--workers", type=int, default=1)
    h.set_defaults(func=cmd_check_hom)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except MalformedInputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MALFORMED


if __name__ == "__main__":
    sys.exit(main())
