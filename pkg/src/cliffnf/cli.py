"""Command-line front end.

Exit codes: 0 success, 1 a negative answer (``equiv`` found a difference,
``check-relations`` found a failing relation), 2 usage or input errors,
3 internal invariant violations.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .circuit import Circuit, CircuitSyntaxError, format_circuit, parse_circuit
from .exact import DEFAULT_ORACLE_LIMIT, OracleLimitError, circuit_unitary, global_phase_ratio
from .gates import DEFAULT_DEPTH, derive_realizations, format_realizations
from .normal_form import (
    clifford_order,
    enumerate_normal_forms,
    format_normal_form,
    nf_to_circuit,
    synthesize,
)
from .rewrite import DEFAULT_SUFFIX_BOUND, RewriteError, generate_rules, rewrite_normalize, verify_relations
from .tableau import circuit_tableau

EXIT_OK, EXIT_DIFFERENT, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _read_circuit(path: str, expand: bool) -> Circuit:
    text = sys.stdin.read() if path == "-" else Path(path).read_text()
    return parse_circuit(text, expand_nonadjacent_cz=expand)


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def _normal_form(c: Circuit, engine: str, limit: int):
    if engine == "rewrite":
        if c.n > limit:
            raise UsageError(f"the rewrite engine checks phases exactly; {c.n} qubits exceeds {limit}")
        return rewrite_normalize(c)
    exact = c.n <= limit
    return synthesize(circuit_tableau(c), c if exact else None, limit)


def cmd_normalize(args) -> int:
    c = _read_circuit(args.file, args.expand_nonadjacent)
    nf = _normal_form(c, args.engine, args.oracle_limit)
    if args.emit == "layers":
        sys.stdout.write(format_normal_form(nf))
    else:
        sys.stdout.write(format_circuit(nf_to_circuit(nf, expand=args.expand)))
    return EXIT_OK


def cmd_equiv(args) -> int:
    a = _read_circuit(args.a, args.expand_nonadjacent)
    b = _read_circuit(args.b, args.expand_nonadjacent)
    if a.n != b.n:
        print(f"different (wire counts {a.n} and {b.n})")
        return EXIT_DIFFERENT
    if circuit_tableau(a) != circuit_tableau(b):
        print("different")
        return EXIT_DIFFERENT
    if a.n > args.oracle_limit:
        if not args.up_to_phase:
            raise UsageError(
                f"phase comparison needs the exact oracle (n <= {args.oracle_limit}); "
                "use --up-to-phase"
            )
        print("equal (p=?)")
        return EXIT_OK
    p = global_phase_ratio(circuit_unitary(a), circuit_unitary(b))
    if p is None:
        raise AssertionError("equal tableaux but unitaries are not proportional")
    if p != 0 and not args.up_to_phase:
        print(f"different (p={p})")
        return EXIT_DIFFERENT
    print(f"equal (p={p})")
    return EXIT_OK


def cmd_count(args) -> int:
    print(clifford_order(args.n))
    return EXIT_OK


def cmd_enumerate(args) -> int:
    for count, nf in enumerate(enumerate_normal_forms(args.n)):
        if args.limit is not None and count >= args.limit:
            break
        if count:
            sys.stdout.write("\n")
        sys.stdout.write(format_normal_form(nf))
    return EXIT_OK


def cmd_check_relations(args) -> int:
    results = verify_relations()
    for r in results:
        print(r)
    passed = sum(r.ok for r in results)
    print(f"{passed}/{len(results)} relations hold exactly")
    return EXIT_OK if passed == len(results) else EXIT_DIFFERENT


def cmd_gen_rules(args) -> int:
    _emit(generate_rules(args.bound).format(), args.out)
    return EXIT_OK


def cmd_derive_gates(args) -> int:
    _emit(format_realizations(derive_realizations(args.depth)), args.out)
    return EXIT_OK


def cmd_matrix(args) -> int:
    c = _read_circuit(args.file, args.expand_nonadjacent)
    print(circuit_unitary(c, args.oracle_limit).format_rows(decimal=args.decimal))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cliffnf", description=__doc__.splitlines()[0])
    parser.add_argument("--oracle-limit", type=int, default=DEFAULT_ORACLE_LIMIT, metavar="N")
    sub = parser.add_subparsers(dest="command", required=True)

    def circuit_cmd(name: str, help_: str):
        p = sub.add_parser(name, help=help_)
        p.add_argument("--expand-nonadjacent", action="store_true", help="rewrite distant CZ via swaps")
        return p

    p = circuit_cmd("normalize", "print the normal form of a circuit")
    p.add_argument("file")
    p.add_argument("--engine", choices=("semantic", "rewrite"), default="semantic")
    p.add_argument("--emit", choices=("layers", "gates"), default="layers")
    p.add_argument("--expand", action="store_true", help="expand library gates into H, S, CZ")
    p.set_defaults(func=cmd_normalize)

    p = circuit_cmd("equiv", "decide whether two circuits are equal")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--up-to-phase", action="store_true")
    p.set_defaults(func=cmd_equiv)

    p = sub.add_parser("count", help="order of the n-qubit Clifford group")
    p.add_argument("n", type=int)
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("enumerate", help="list every normal form on n wires")
    p.add_argument("n", type=int)
    p.add_argument("--limit", type=int)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("check-relations", help="verify the defining relations exactly")
    p.set_defaults(func=cmd_check_relations)

    p = sub.add_parser("gen-rules", help="regenerate the rewrite rule file")
    p.add_argument("--out")
    p.add_argument("--bound", type=int, default=DEFAULT_SUFFIX_BOUND)
    p.set_defaults(func=cmd_gen_rules)

    p = sub.add_parser("derive-gates", help="regenerate the library gate realizations")
    p.add_argument("--out")
    p.add_argument("--depth", type=int, default=DEFAULT_DEPTH)
    p.set_defaults(func=cmd_derive_gates)

    p = circuit_cmd("matrix", "print the exact unitary of a circuit")
    p.add_argument("file")
    p.add_argument("--decimal", action="store_true")
    p.set_defaults(func=cmd_matrix)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (CircuitSyntaxError, UsageError, OracleLimitError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (AssertionError, RewriteError) as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
