"""Command-line interface.

Exit codes: 0 success/pass, 1 violation found, 2 proven non-isomorphic,
3 inconclusive, 64 usage error, 65 input parse error.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path

from .algebra import PeriodicAlgebra
from .analysis import (
    UnsupportedCaseError,
    derived_series,
    fingerprint,
    lower_central_series,
)
from .classify import UnsupportedFamilyTableError, classification_report, named_algebra
from .fields import Field, FieldMismatchError, InvalidModulusError, ParseError
from .leibniz import (
    BudgetExceededError,
    enumerate_leibniz,
    leibniz_element_check,
    leibniz_residue_check,
    random_element,
)
from .oracle import oracle_balanced
from .transforms import (
    TransformError,
    apply_residue_shift,
    inflate,
    isomorphism_search,
    normalize_alpha00,
    scale,
    shift,
)

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_DISTINCT = 2
EXIT_INCONCLUSIVE = 3
EXIT_USAGE = 64
EXIT_PARSE = 65

DEFAULT_SEED = 0


class UsageError(Exception):
    pass


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _dump(obj, out: str | None = None):
    text = json.dumps(obj, indent=2, ensure_ascii=False) + "\n"
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _load_json(path: str):
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON: {exc}") from None


def _load_algebra(path: str) -> PeriodicAlgebra:
    obj = _load_json(path)
    try:
        return PeriodicAlgebra.from_json(obj)
    except (ParseError, InvalidModulusError, FieldMismatchError, ValueError) as exc:
        raise InputError(f"{path}: {exc}") from None


def _field(text: str) -> Field:
    try:
        return Field.from_string(text)
    except (ParseError, InvalidModulusError) as exc:
        raise UsageError(str(exc)) from None


# --- subcommands --------------------------------------------------------------------


def cmd_verify(args) -> int:
    alg = _load_algebra(args.input)
    violations = leibniz_residue_check(alg)
    report = {
        "check": "leibniz",
        "seed": args.seed,
        "pass": not violations,
        "violations": [v.to_json() for v in violations],
    }
    failed = bool(violations)
    if args.elements:
        window = args.window if args.window is not None else 2 * alg.n
        if window < 2 * alg.n:
            raise UsageError(f"--window must be at least 2n = {2 * alg.n}")
        rng = random.Random(args.seed)
        counterexample = None
        for trial in range(args.trials):
            x, y, z = (random_element(alg, rng, window) for _ in range(3))
            diff = leibniz_element_check(alg, x, y, z)
            if diff is not None:
                counterexample = {
                    "trial": trial,
                    "x": x.to_json(),
                    "y": y.to_json(),
                    "z": z.to_json(),
                    "difference": diff.to_json(),
                }
                break
        report["element_check"] = {
            "trials": args.trials,
            "window": window,
            "pass": counterexample is None,
            "counterexample": counterexample,
        }
        failed = failed or counterexample is not None
    _dump(report, args.out)
    return EXIT_VIOLATION if failed else EXIT_OK


def _fingerprint_text(fp) -> str:
    lines = []
    for key, value in fp.to_json().items():
        lines.append(f"{key:28s} {value}")
    return "\n".join(lines) + "\n"


def cmd_analyze(args) -> int:
    alg = _load_algebra(args.input)
    if args.series:
        series = lower_central_series(alg) if args.series == "lower" else derived_series(alg)
        if args.json:
            _dump({"series": args.series, **series.to_json()}, args.out)
        else:
            for stage in series.to_json()["stages"]:
                sys.stdout.write(f"S_{stage['k']}: {stage['residues']}\n")
            sys.stdout.write(f"terminated: {series.terminated}, index: {series.index}\n")
        return EXIT_OK
    fp = fingerprint(alg)
    if args.json:
        _dump(fp.to_json(), args.out)
    else:
        sys.stdout.write(_fingerprint_text(fp))
    return EXIT_OK


def cmd_enumerate(args) -> int:
    field = _field(args.field)
    if not field.is_finite:
        raise UsageError("enumeration needs a prime field (fp:P)")
    sols = enumerate_leibniz(args.n, args.t, field, budget=args.budget, jobs=args.jobs)
    _dump(
        {
            "field": field.to_json(),
            "n": args.n,
            "t": args.t % args.n,
            "candidates": field.p ** (args.n * args.n),
            "count": len(sols),
            "solutions": [A.to_json() for A in sols],
        },
        args.out,
    )
    return EXIT_OK


def cmd_classify(args) -> int:
    field = _field(args.field)
    if not field.is_finite:
        raise UsageError("classification needs a prime field (fp:P)")
    if args.families != "builtin":
        raise UsageError("only the builtin family table is available")
    report = classification_report(args.n, args.t, field, budget=args.budget, jobs=args.jobs)
    _dump(report.to_json(), args.out)
    return EXIT_OK


def cmd_transform(args) -> int:
    alg = _load_algebra(args.input)
    vals = args.args or []
    try:
        if args.kind == "shift":
            if len(vals) != 1:
                raise UsageError("shift takes one integer")
            out = shift(alg, int(vals[0]))
        elif args.kind == "inflate":
            if len(vals) != 1:
                raise UsageError("inflate takes one integer factor")
            out = inflate(alg, int(vals[0]))
        elif args.kind == "scale":
            out = scale(alg, [alg.field.parse(v) for v in vals])
        elif args.kind == "residue-shift":
            out = apply_residue_shift(alg, [int(v) for v in vals])
        else:
            out, transform = normalize_alpha00(alg)
            _dump({"algebra": out.to_json(), "transform": transform.to_json()}, args.out)
            return EXIT_OK
    except (ParseError, TransformError) as exc:
        raise UsageError(str(exc)) from None
    except ValueError as exc:
        raise UsageError(f"bad transform arguments: {exc}") from None
    _dump(out.to_json(), args.out)
    return EXIT_OK


def cmd_isomorphic(args) -> int:
    a = _load_algebra(args.a)
    b = _load_algebra(args.b)
    if a.field != b.field or a.n != b.n:
        raise UsageError("algebras must share field and period")
    fa, fb = fingerprint(a), fingerprint(b)
    diff = fa.invariant_diff(fb)
    if diff:
        _dump({"result": "non-isomorphic", "fingerprint_diff": diff}, args.out)
        return EXIT_DISTINCT
    transform = isomorphism_search(a, b)
    if transform is None:
        _dump({"result": "inconclusive", "fingerprint_diff": {}}, args.out)
        return EXIT_INCONCLUSIVE
    _dump({"result": "isomorphic", "transform": transform.to_json()}, args.out)
    return EXIT_OK


def cmd_oracle(args) -> int:
    field = _field(args.field)
    try:
        mismatch = oracle_balanced(args.r, args.trials, args.seed, field, args.n)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    report = {
        "oracle": "balanced_product",
        "r": args.r,
        "trials": args.trials,
        "seed": args.seed,
        "field": field.to_json(),
        "n": args.n,
        "pass": mismatch is None,
        "mismatch": None if mismatch is None else mismatch.to_json(),
    }
    _dump(report, args.out)
    return EXIT_OK if mismatch is None else EXIT_VIOLATION


def cmd_algebra(args) -> int:
    field = _field(args.field)
    params = {}
    for item in args.param or []:
        key, sep, value = item.partition("=")
        if not sep:
            raise UsageError(f"--param expects name=value, got {item!r}")
        try:
            params[key] = field.parse(value)
        except ParseError as exc:
            raise UsageError(str(exc)) from None
    try:
        alg = named_algebra(args.name, field, t=args.t, **params)
    except (KeyError, ValueError) as exc:
        raise UsageError(str(exc.args[0] if exc.args else exc)) from None
    _dump(alg.to_json(), args.out)
    return EXIT_OK


# --- parser ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="pak", description="Periodic algebras generated by the integers.")
    parser.add_argument("--json-errors", action="store_true", help="report errors as JSON on stdout")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    p = sub.add_parser("verify", help="check the Leibniz identity")
    p.add_argument("identity", choices=["leibniz"])
    p.add_argument("--input", required=True)
    p.add_argument("--elements", action="store_true", help="also test random elements")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--window", type=int)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--out")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("analyze", help="structural invariants")
    p.add_argument("--input", required=True)
    p.add_argument("--json", action="store_true")
    p.add_argument("--series", choices=["lower", "derived"])
    p.add_argument("--out")
    p.set_defaults(func=cmd_analyze)

    for name, func, helptext in (
        ("enumerate", cmd_enumerate, "all Leibniz structure matrices over GF(p)"),
        ("classify", cmd_classify, "enumerate and match against the family tables"),
    ):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("--n", type=int, required=True)
        p.add_argument("--t", type=int, default=0)
        p.add_argument("--field", required=True)
        p.add_argument("--budget", type=int)
        p.add_argument("--jobs", type=int, default=1)
        p.add_argument("--out")
        if name == "classify":
            p.add_argument("--families", default="builtin")
        p.set_defaults(func=func)

    p = sub.add_parser("transform", help="apply a basis transformation")
    p.add_argument("kind", choices=["shift", "scale", "inflate", "residue-shift", "normalize"])
    p.add_argument("--input", required=True)
    p.add_argument("--args", nargs="*", default=[])
    p.add_argument("--out")
    p.set_defaults(func=cmd_transform)

    p = sub.add_parser("isomorphic", help="decide isomorphism within the transform group")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--out")
    p.set_defaults(func=cmd_isomorphic)

    p = sub.add_parser("oracle", help="balanced product vs closed form")
    p.add_argument("--r", type=int, default=2)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--field", default="fp:5")
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--out")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("algebra", help="emit a named algebra")
    p.add_argument("--name", required=True)
    p.add_argument("--field", default="q")
    p.add_argument("--param", action="append", help="parameter as name=value")
    p.add_argument("--t", type=int)
    p.add_argument("--out")
    p.set_defaults(func=cmd_algebra)
    return parser


def run(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    json_errors = "--json-errors" in argv
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if getattr(args, "n", None) is not None and args.n < 1:
            raise UsageError("--n must be >= 1")
        if getattr(args, "budget", None) is not None and args.budget <= 0:
            raise UsageError("--budget must be positive")
        return args.func(args)
    except UsageError as exc:
        return _fail(json_errors, "usage", str(exc), EXIT_USAGE)
    except InputError as exc:
        return _fail(json_errors, "parse", str(exc), EXIT_PARSE)
    except (BudgetExceededError, UnsupportedCaseError, UnsupportedFamilyTableError) as exc:
        return _fail(json_errors, "usage", str(exc), EXIT_USAGE)


def _fail(json_errors: bool, kind: str, message: str, code: int) -> int:
    if json_errors:
        _dump({"error": kind, "message": message, "exit_code": code})
    else:
        sys.stderr.write(f"pak: {message}\n")
    return code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
