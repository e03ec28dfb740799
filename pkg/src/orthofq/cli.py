"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 usage or parse error,
3 precondition violation, 4 budget exceeded.
"""

from __future__ import annotations

import argparse
import csv
import io as _io
import itertools
import sys
from dataclasses import asdict, dataclass
from typing import Optional, Sequence

from . import clifford, forms, groups, verify
from . import io as wire
from .engine import MAX_VECTORS
from .errors import BudgetExceeded, PreconditionError, UnsupportedCombination
from .forms import TypeTag
from .gf import FieldElement, make_field
from .linalg import Vector

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_PRECONDITION, EXIT_BUDGET = 0, 1, 2, 3, 4

# enumeration cross-check threshold for atlas rows
ATLAS_VERIFY_LIMIT = 10**5

ATLAS_COLUMNS = ["p", "k", "n", "type_tag", "order", "so_order", "omega_order", "witt_index", "disc_or_arf", "verified"]


class UsageError(Exception):
    pass


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _json(doc) -> str:
    return wire.dumps(doc) + "\n"


# -- classify / invariants ------------------------------------------------------

def cmd_classify(args: argparse.Namespace) -> int:
    form = wire.parse_form(wire.load_json(args.form), allow_custom_modulus=args.allow_custom_modulus)
    _emit(_json(forms.classify(form).to_json()), args.out)
    return EXIT_OK


def cmd_invariants(args: argparse.Namespace) -> int:
    doc = wire.load_json(args.element)
    form, mat = wire.parse_group_element(doc, allow_custom_modulus=args.allow_custom_modulus)
    g = groups.Isometry(form, mat)
    fld = form.field
    out: dict = {"det": g.det_sign if fld.p != 2 else 1, "dickson": g.dickson}
    if fld.p != 2 and g.det == 1:
        out["spinor"] = g.spinor.value
    _emit(_json(out), args.out)
    return EXIT_OK


# -- group report -----------------------------------------------------------------

def _parse_tag(n: int, raw: Optional[str]) -> TypeTag:
    if n % 2:
        if raw not in (None, "odd"):
            raise UsageError(f"n={n} is odd; --type does not apply")
        return TypeTag.ODD
    if raw not in ("plus", "minus"):
        raise UsageError("even n needs --type plus|minus")
    return TypeTag(raw)


def cmd_group(args: argparse.Namespace) -> int:
    fld = make_field(args.p, args.k)
    tag = _parse_tag(args.n, args.type)
    form = groups.standard_form("O", tag, args.n, fld)
    G = groups.enumerate_group(form, budget=args.budget)
    _emit(_json(wire.group_report(G, groups.kernel_subgroups(G), tag.value)), args.out)
    return EXIT_OK


# -- atlas --------------------------------------------------------------------------

@dataclass
class AtlasRow:
    p: int
    k: int
    n: int
    type_tag: str
    order: int
    so_order: int
    omega_order: int
    witt_index: int
    disc_or_arf: str
    verified: bool


def atlas_rows(p: int, k: int, nmax: int, budget: Optional[int] = None) -> list[AtlasRow]:
    if nmax < 2:
        raise UsageError("--nmax must be at least 2")
    fld = make_field(p, k)
    q = fld.q
    budget = budget or groups.default_budget()
    rows = []
    for n in range(2, nmax + 1):
        tags = [TypeTag.ODD] if n % 2 else [TypeTag.PLUS, TypeTag.MINUS]
        for tag in tags:
            label = f"(p={p}, k={k}, n={n}, type={tag.value})"
            form = groups.standard_form("O", tag, n, fld)
            cls = forms.classify(form)
            if fld.p != 2:
                invariant = cls.disc_class.value
            else:
                invariant = "" if cls.arf_bit is None else str(cls.arf_bit)
            try:
                order = groups.group_order("O", tag, n, fld, budget=budget)
            except UnsupportedCombination as exc:
                raise BudgetExceeded(f"atlas row {label}: {exc}") from exc
            enumerable = order <= min(ATLAS_VERIFY_LIMIT, budget) and q**n <= MAX_VECTORS
            if fld.p == 2 and n % 2 and (not enumerable or order > groups.COMMUTATOR_LIMIT):
                raise BudgetExceeded(f"atlas row {label}: Omega needs an enumerated commutator subgroup")
            if enumerable:
                G = groups.enumerate_group(form, budget=budget)
                reports = {r.tag: r for r in groups.kernel_subgroups(G)}
                so, omega = reports["SO"].order, reports["Omega"].order
                verified = len(G) == order
            else:
                so, omega = order // 2, order // (4 if fld.p != 2 else 2)
                verified = False
            rows.append(AtlasRow(p, k, n, tag.value, order, so, omega, cls.witt_index, invariant, verified))
    return rows


def cmd_atlas(args: argparse.Namespace) -> int:
    rows = atlas_rows(args.p, args.k, args.nmax, args.budget)
    if args.format == "csv":
        buf = _io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=ATLAS_COLUMNS, lineterminator="\r\n")
        writer.writeheader()
        for r in rows:
            d = asdict(r)
            d["verified"] = "true" if r.verified else "false"
            writer.writerow(d)
        text = buf.getvalue()
    else:
        text = _json([asdict(r) for r in rows])
    _emit(text, args.out)
    return EXIT_OK


# -- verify / clifford --------------------------------------------------------------

def cmd_verify(args: argparse.Namespace) -> int:
    if args.suite not in verify.SUITES:
        raise UsageError(f"unknown suite {args.suite!r}; choose from {', '.join(verify.SUITES)}")
    result = verify.run_suite(args.suite, verify.Config(seed=args.seed, budget=args.budget))
    _emit(_json(result.to_json()), args.out)
    return EXIT_OK if result.passed else EXIT_FAIL


def cmd_clifford_check(args: argparse.Namespace) -> int:
    form = wire.parse_form(wire.load_json(args.form), allow_custom_modulus=args.allow_custom_modulus)
    if not isinstance(form, forms.QuadraticForm):
        raise UsageError("clifford check needs a quadratic form")
    fld, n = form.field, form.n
    report: dict = {"dimension": clifford.algebra_dimension(form)}
    if fld.q**n <= MAX_VECTORS:
        bad = 0
        for v in itertools.product(range(fld.q), repeat=n):
            e = clifford.embed_vector(form, Vector(fld, v))
            bad += (e * e) != clifford.CliffordElement.scalar(form, form.value(v))
        report["square_violations"] = bad
    rng = verify.Config(seed=args.seed).rng("clifford-check")
    assoc_bad = 0
    for _ in range(args.triples):
        a, b, c = (clifford.random_element(form, rng) for _ in range(3))
        assoc_bad += (a * b) * c != a * (b * c)
    report["triples"] = args.triples
    report["associativity_violations"] = assoc_bad
    ok = report["dimension"] == 2**n and report.get("square_violations", 0) == 0 and assoc_bad == 0
    report["passed"] = ok
    _emit(_json(report), args.out)
    return EXIT_OK if ok else EXIT_FAIL


# -- parser --------------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--budget", type=int, default=None, help="element budget for enumerations (default $ORTHO_BUDGET or 10^6)")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized sampling")
    common.add_argument("--allow-custom-modulus", action="store_true", help="accept a non-canonical irreducible modulus")
    common.add_argument("--out", default=None, help="write output to FILE instead of stdout")

    parser = _Parser(prog="orthofq", description="Forms and orthogonal groups over finite fields.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("classify", parents=[common], help="classify a form given as JSON")
    p.add_argument("--form", required=True)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("invariants", parents=[common], help="det, Dickson and spinor invariants of an isometry")
    p.add_argument("element", help='JSON file {"form": {...}, "matrix": [[...]]}')
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("group", parents=[common], help="order and kernel subgroups of a standard orthogonal group")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--type", choices=["plus", "minus", "odd"], default=None)
    p.set_defaults(func=cmd_group)

    p = sub.add_parser("atlas", parents=[common], help="table of orthogonal group orders and invariants")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--nmax", "--n", type=int, required=True)
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.set_defaults(func=cmd_atlas)

    p = sub.add_parser("verify", parents=[common], help="run a verification suite")
    p.add_argument("suite", help=f"one of: {', '.join(verify.SUITES)}")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("clifford", help="Clifford algebra checks")
    csub = p.add_subparsers(dest="clifford_command", required=True, parser_class=_Parser)
    c = csub.add_parser("check", parents=[common], help="check v^2 = Q(v), associativity and dimension")
    c.add_argument("--form", required=True)
    c.add_argument("--triples", type=int, default=500)
    c.set_defaults(func=cmd_clifford_check)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"orthofq: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceeded as exc:
        print(f"orthofq: budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except PreconditionError as exc:
        print(f"orthofq: precondition violated ({type(exc).__name__}): {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except (wire.ParseError, ValueError, KeyError, TypeError) as exc:
        print(f"orthofq: invalid input: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
