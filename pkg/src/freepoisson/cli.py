"""Command-line driver.

Calculator commands (normalize, bracket, apply, compose, fox, jacobian)
print canonical text or canonical JSON; verification commands (verify,
certificate) additionally signal their outcome through the exit code.
Exit codes: 0 all checks passed, 1 a verification failed, 2 bad usage or
unparseable input.
"""

from __future__ import annotations

import argparse
import os
import sys

from .poisson import compose, poisson_bracket, project_pi
from .envelope import eta_e, project_pi_e
from .fox import fox_derivative, jacobian, jacobian2
from .certificates import conjugation_certificate
from .exprio import (
    ExprSyntaxError,
    canonical_json,
    parse_element,
    parse_elementary,
    parse_endomorphism,
    parse_tame_word,
)
from .verify import DEFAULT_TRIALS, SUITES, run_suite

TRIALS_ENV = "FREEPOISSON_TRIALS"


def _emit(args, text: str, payload: dict) -> None:
    if args.format == "json":
        sys.stdout.write(canonical_json(payload))
    else:
        print(text)


def _matrix_payload(mat) -> list[list[str]]:
    return [[str(e) for e in row] for row in mat.rows]


def _add_format(sub) -> None:
    sub.add_argument(
        "--format", choices=("text", "json"), default="text",
        help="output as plain text or canonical JSON",
    )


def _read(path: str) -> str:
    with open(path, "r", encoding="utf-8") as handle:
        return handle.read()


def cmd_normalize(args) -> int:
    element = parse_element(args.expression, args.arity)
    _emit(args, str(element), {
        "kind": "element", "arity": args.arity, "text": str(element),
    })
    return 0


def cmd_bracket(args) -> int:
    left = parse_element(args.left, args.arity)
    right = parse_element(args.right, args.arity)
    out = poisson_bracket(left, right)
    _emit(args, str(out), {"kind": "element", "arity": args.arity, "text": str(out)})
    return 0


def cmd_apply(args) -> int:
    endo = parse_endomorphism(_read(args.endo))
    element = parse_element(args.expression, endo.arity)
    out = endo.apply(element)
    _emit(args, str(out), {"kind": "element", "arity": endo.arity, "text": str(out)})
    return 0


def cmd_compose(args) -> int:
    outer = parse_endomorphism(_read(args.outer))
    inner = parse_endomorphism(_read(args.inner))
    out = compose(outer, inner)
    _emit(args, str(out), {
        "kind": "endomorphism",
        "arity": out.arity,
        "images": [str(im) for im in out.images],
    })
    return 0


def cmd_fox(args) -> int:
    element = parse_element(args.expression, args.arity)
    derivative = fox_derivative(element, args.var)
    if args.project == "none":
        text = str(derivative)
        payload = {"kind": "env-element", "arity": args.arity, "text": text}
    elif args.project == "pi":
        projected = project_pi_e(derivative)
        text = str(projected)
        payload = {"kind": "cenv-element", "labels": list(projected.labels), "text": text}
    else:
        if args.arity != 3:
            raise ValueError("the pi-eta projection is defined at arity 3")
        projected = eta_e(project_pi_e(derivative))
        text = str(projected)
        payload = {"kind": "cenv-element", "labels": list(projected.labels), "text": text}
    _emit(args, text, payload)
    return 0


def cmd_jacobian(args) -> int:
    endo = parse_endomorphism(_read(args.endo))
    if args.block2:
        if endo.arity != 3:
            raise ValueError("the 2x2 corner is defined at arity 3")
        mat = jacobian2(endo)
    else:
        mat = jacobian(endo)
    if args.project == "eta":
        if endo.arity != 3:
            raise ValueError("the eta evaluation is defined at arity 3")
        mat = mat.map_entries(eta_e)
    if args.det:
        value = mat.det()
        _emit(args, str(value), {
            "kind": "cenv-element", "labels": list(value.labels), "text": str(value),
        })
        return 0
    _emit(args, str(mat), {
        "kind": "matrix", "labels": list(mat.labels), "entries": _matrix_payload(mat),
    })
    return 0


def _default_trials(name: str, cli_value: int | None) -> int | None:
    if cli_value is not None:
        return cli_value
    env = os.environ.get(TRIALS_ENV)
    if env is not None:
        try:
            return max(1, int(env))
        except ValueError as exc:
            raise ValueError(f"{TRIALS_ENV} must be an integer, got {env!r}") from exc
    return DEFAULT_TRIALS.get(name)


def cmd_verify(args) -> int:
    trials = _default_trials(args.suite, args.trials)
    report = run_suite(args.suite, trials, args.seed)
    text = "\n".join(report.lines + [f"suite {report.name}: {'PASS' if report.passed else 'FAIL'}"])
    _emit(args, text, {
        "kind": "report",
        "name": report.name,
        "seed": report.seed,
        "passed": report.passed,
        "lines": report.lines,
    })
    return 0 if report.passed else 1


def cmd_certificate(args) -> int:
    word = parse_tame_word(_read(args.psi), 3) if args.psi else parse_tame_word("", 3)
    phi = parse_elementary(args.phi, 3)
    report = conjugation_certificate(word, phi)
    lines = report.lines()
    lines.append("target:")
    lines.extend(str(report.target).splitlines())
    payload = {
        "kind": "certificate",
        "status": report.status,
        "word": [str(f) for f in report.word] if report.word is not None else None,
        "failed_step": report.failed_step,
        "target": _matrix_payload(report.target),
        "residual": _matrix_payload(report.residual) if report.residual is not None else None,
    }
    _emit(args, "\n".join(lines), payload)
    return 0 if report.verified else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="freepoisson",
        description="Exact calculator and verifier for free Poisson algebras.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("normalize", help="parse an expression and print its canonical form")
    p.add_argument("-n", "--arity", type=int, default=3)
    p.add_argument("expression")
    _add_format(p)
    p.set_defaults(func=cmd_normalize)

    p = sub.add_parser("bracket", help="Poisson bracket of two expressions")
    p.add_argument("-n", "--arity", type=int, default=3)
    p.add_argument("left")
    p.add_argument("right")
    _add_format(p)
    p.set_defaults(func=cmd_bracket)

    p = sub.add_parser("apply", help="apply an endomorphism file to an expression")
    p.add_argument("--endo", required=True, help="path to an x<k> -> expr file")
    p.add_argument("expression")
    _add_format(p)
    p.set_defaults(func=cmd_apply)

    p = sub.add_parser("compose", help="compose two endomorphism files (outer inner)")
    p.add_argument("outer")
    p.add_argument("inner")
    _add_format(p)
    p.set_defaults(func=cmd_compose)

    p = sub.add_parser("fox", help="derivative of an expression with respect to one generator")
    p.add_argument("-n", "--arity", type=int, default=3)
    p.add_argument("--var", type=int, required=True)
    p.add_argument("--project", choices=("none", "pi", "pi-eta"), default="none")
    p.add_argument("expression")
    _add_format(p)
    p.set_defaults(func=cmd_fox)

    p = sub.add_parser("jacobian", help="Jacobian matrix of an endomorphism file")
    p.add_argument("endo")
    p.add_argument("--block2", action="store_true", help="leading 2x2 block (arity 3)")
    p.add_argument("--project", choices=("none", "eta"), default="none")
    p.add_argument("--det", action="store_true", help="print the determinant instead")
    _add_format(p)
    p.set_defaults(func=cmd_jacobian)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("suite", choices=SUITES)
    p.add_argument("--trials", type=int, default=None,
                   help=f"instance count (default per suite; {TRIALS_ENV} overrides)")
    p.add_argument("--seed", type=int, default=0)
    _add_format(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("certificate", help="elementary word certificate for a conjugation")
    p.add_argument("--psi", help="path to a restricted tame word file", default=None)
    p.add_argument("--phi", required=True, help="inline sigma(i, alpha, expr) specification")
    _add_format(p)
    p.set_defaults(func=cmd_certificate)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ExprSyntaxError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
