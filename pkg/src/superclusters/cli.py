"""Command-line interface.

Exit codes: 0 success, 2 parse/validation failure, 3 illegal operation.
Every subcommand accepts --json for a machine-readable envelope.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from superclusters.models import build_model, model_names
from superclusters.mutation import (
    IllegalMutation,
    MutationStep,
    Seed,
    apply_sequence,
    enumerate_even_vars,
    enumerate_odd_vars,
    is_laurent,
)
from superclusters.mutclass import finite_type_verdict, mutation_class
from superclusters.polytext import format_fraction, format_poly
from superclusters.quiver import (
    QuiverSyntaxError,
    QuiverValidationError,
    c1_at,
    c2_at,
    format_quiver,
    parse_quiver,
    validate,
)
from superclusters.models import (
    frieze_rule_check,
    superfrieze_generate,
)
from superclusters.state import seed_state, value_line

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_ILLEGAL = 3


class CliError(Exception):
    def __init__(self, message, code):
        super().__init__(message)
        self.code = code


def _load_seed(ref: str) -> Seed:
    """A quiver file path, or the name of a built-in model."""
    if os.path.exists(ref):
        try:
            with open(ref) as fh:
                text = fh.read()
            return Seed(parse_quiver(text))
        except (QuiverSyntaxError, QuiverValidationError, OSError) as exc:
            raise CliError(str(exc), EXIT_PARSE)
    try:
        return build_model(ref)
    except (KeyError, ValueError):
        raise CliError(f"no such file or model: {ref!r}", EXIT_PARSE)


def _parse_seq(text: str):
    steps = []
    for token in text.split(","):
        token = token.strip()
        if not token:
            continue
        if ":" not in token:
            raise CliError(f"bad step {token!r} (expected mu:<v> or eta:<v>)", EXIT_PARSE)
        op, vertex = token.split(":", 1)
        if op == "mu":
            steps.append(MutationStep("even", vertex))
        elif op == "eta":
            steps.append(MutationStep("odd", vertex))
        else:
            raise CliError(f"unknown operation {op!r} (use mu or eta)", EXIT_PARSE)
    return steps


def _emit(args, payload, lines, diagnostics=()):
    if getattr(args, "json", False):
        envelope = {
            "ok": True,
            "payload": payload,
            "diagnostics": list(diagnostics),
        }
        print(json.dumps(envelope, indent=2))
    else:
        for line in lines:
            print(line)
        for diag in diagnostics:
            print(f"warning: {diag}", file=sys.stderr)


# -- subcommands ----------------------------------------------------------


def cmd_validate(args):
    try:
        with open(args.path) as fh:
            text = fh.read()
    except OSError as exc:
        raise CliError(str(exc), EXIT_PARSE)
    try:
        q = parse_quiver(text, check=False)
    except QuiverSyntaxError as exc:
        raise CliError(str(exc), EXIT_PARSE)
    violations = validate(q)
    lines = []
    diags = []
    for v in violations:
        lines.append(f"violation: {v.describe()}")
    conditions = []
    for v in q.vertices:
        if v.parity == "even" and not v.frozen:
            c1, c2 = c1_at(q, v.id), c2_at(q, v.id)
            conditions.append({"label": v.label, "c1": c1, "c2": c2})
            lines.append(
                f"{v.label}: C1 {'holds' if c1 else 'fails'}, "
                f"C2 {'holds' if c2 else 'fails'}"
            )
    if not violations:
        if all(c["c1"] or c["c2"] for c in conditions):
            lines.append("C1∨C2: satisfied")
        else:
            diags.append("C1 and C2 both violated at some vertex")
            lines.append("C1∨C2: violated")
        lines.insert(0, "valid")
    payload = {
        "valid": not violations,
        "violations": [v.describe() for v in violations],
        "conditions": conditions,
    }
    _emit(args, payload, lines, diags)
    return EXIT_OK if not violations else EXIT_PARSE


def cmd_mutate(args):
    seed = _load_seed(args.path)
    initial = Seed(seed.quiver, None, seed.ambient)
    steps = _parse_seq(args.seq)
    try:
        result = apply_sequence(seed, steps, mode=args.mode)
    except IllegalMutation as exc:
        raise CliError(str(exc), EXIT_ILLEGAL)
    except KeyError as exc:
        raise CliError(f"unknown vertex {exc}", EXIT_PARSE)
    lines = [format_quiver(result.quiver).rstrip()]
    if args.mode == "algebra":
        for v in result.quiver.vertices:
            lines.append(value_line(result, v.label, initial))
    _emit(args, seed_state(result), lines)
    return EXIT_OK


def cmd_enumerate(args):
    seed = _load_seed(args.path)
    fn = enumerate_even_vars if args.parity == "even" else enumerate_odd_vars
    values = fn(seed, args.depth)
    texts = sorted(format_fraction(v.normalize()) for v in values)
    lines = [f"{len(texts)} variables:"] + [f"  {t}" for t in texts]
    _emit(args, {"count": len(texts), "values": texts}, lines)
    return EXIT_OK


def cmd_laurent(args):
    seed = _load_seed(args.path)
    steps = _parse_seq(args.seq)
    try:
        result = apply_sequence(seed, steps, mode="algebra")
    except IllegalMutation as exc:
        raise CliError(str(exc), EXIT_ILLEGAL)
    value = result.value(args.vertex)
    cert = is_laurent(value)
    status = "Laurent" if cert.laurent else "NotLaurent"
    lines = [
        f"{args.vertex} = {format_fraction(value.normalize())}",
        f"{status}: {format_poly(cert.witness)}",
    ]
    payload = {
        "vertex": args.vertex,
        "value": format_fraction(value.normalize()),
        "laurent": cert.laurent,
        "witness": format_poly(cert.witness),
    }
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_mutclass(args):
    seed = _load_seed(args.path)
    q = seed.quiver
    labeled = args.labeled
    if args.check_bound:
        report = finite_type_verdict(q, cap=args.cap, labeled=labeled)
    else:
        report = mutation_class(q, cap=args.cap, labeled=labeled)
    lines = [f"verdict: {report.verdict}"]
    payload = {"verdict": report.verdict, "size": report.size}
    if report.verdict == "finite":
        lines.append(f"class size: {report.size}")
    if report.bound_check:
        r, s, n, bound = report.bound_check
        payload["bound_check"] = {"r": r, "s": s, "n": n, "bound": bound}
        lines.append(f"bound: r={r} s={s} n={n} -> r*s*2^n = {bound}")
    if report.reason:
        payload["reason"] = report.reason
        lines.append(f"reason: {report.reason}")
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_frieze(args):
    if args.width < 1:
        raise CliError("--width must be >= 1", EXIT_PARSE)
    frieze = superfrieze_generate(args.width, args.window)
    lines = []
    payload = {"width": args.width, "window": args.window, "diagonals": []}
    for d, diag in enumerate(frieze.diagonals):
        xs = [format_fraction(v.normalize()) for v in diag.xs]
        ys = [format_fraction(v.normalize()) for v in diag.ys]
        payload["diagonals"].append({"xs": xs, "ys": ys})
        lines.append(f"diagonal {d}:")
        for k, t in enumerate(xs, start=1):
            lines.append(f"  x{k}{'' if d == 0 else chr(39) * d} = {t}")
        for k, t in enumerate(ys, start=1):
            lines.append(f"  y{k}{'' if d == 0 else chr(39) * d} = {t}")
    if args.check:
        violations = frieze_rule_check(frieze)
        payload["violations"] = violations
        if violations:
            lines.extend(f"violated: {v}" for v in violations)
        else:
            lines.append("frieze rule: OK on all diamonds")
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_models(args):
    if args.action == "list":
        names = model_names()
        _emit(args, {"models": names}, names)
        return EXIT_OK
    seed = _load_seed(args.name)
    text = format_quiver(seed.quiver).rstrip()
    _emit(args, seed_state(seed), [text])
    return EXIT_OK


def cmd_serve(args):
    import uvicorn

    from superclusters.service import create_app

    uvicorn.run(create_app(), host=args.bind, port=args.port)
    return EXIT_OK


# -- entry point ----------------------------------------------------------


def build_parser():
    parser = argparse.ArgumentParser(
        prog="superclusters",
        description="Exact mutation engine for cluster superalgebras.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a quiver file")
    p.add_argument("path")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_validate)

    p = sub.add_parser("mutate", help="apply a mutation sequence")
    p.add_argument("path", help="quiver file or model name")
    p.add_argument("--seq", required=True, help='e.g. "mu:a,eta:l2"')
    p.add_argument("--mode", choices=("algebra", "quiver"), default="algebra")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_mutate)

    p = sub.add_parser("enumerate", help="enumerate cluster variables")
    p.add_argument("path")
    p.add_argument("--parity", choices=("even", "odd"), required=True)
    p.add_argument("--depth", type=int, default=4)
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_enumerate)

    p = sub.add_parser("laurent", help="certify Laurentness after a sequence")
    p.add_argument("path")
    p.add_argument("--seq", required=True)
    p.add_argument("--vertex", required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_laurent)

    p = sub.add_parser("mutclass", help="enumerate the mutation class")
    p.add_argument("path")
    p.add_argument("--cap", type=int, default=10000)
    group = p.add_mutually_exclusive_group()
    group.add_argument("--labeled", action="store_true")
    group.add_argument(
        "--up-to-iso", dest="labeled", action="store_false"
    )
    p.add_argument("--check-bound", action="store_true")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_mutclass, labeled=False)

    p = sub.add_parser("frieze", help="generate a superfrieze")
    p.add_argument("--width", type=int, required=True)
    p.add_argument("--window", type=int, default=3)
    p.add_argument("--check", action="store_true")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_frieze)

    p = sub.add_parser("models", help="list or show built-in models")
    p.add_argument("action", choices=("list", "show"))
    p.add_argument("name", nargs="?")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_models)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--port", type=int, default=int(os.environ.get("SUPERCLUSTERS_PORT", 8000)))
    p.add_argument("--bind", default="127.0.0.1")
    p.set_defaults(fn=cmd_serve)

    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    if args.command == "models" and args.action == "show" and not args.name:
        print("models show requires a name", file=sys.stderr)
        return EXIT_PARSE
    try:
        return args.fn(args)
    except CliError as exc:
        if getattr(args, "json", False):
            print(json.dumps({"ok": False, "payload": None, "diagnostics": [str(exc)]}))
        else:
            print(f"error: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
