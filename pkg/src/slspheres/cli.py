"""Command line entry point: ``slspheres <command> ...``.

Every command prints one JSON document on stdout.  ``gen`` and ``op`` print
a facet-list complex; the others print ``{"manifest": ..., "result": ...}``
and exit with status 0 exactly when the requested verdict passes.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import time
from pathlib import Path

from . import __version__
from .complex_core import (
    ComplexError,
    cross_polytope_boundary,
    cyclic_polytope_boundary,
    delta_dn,
    g_vector,
    load_complex,
    simplex_boundary,
)
from .constructions import barycentric, connected_sum, contract, identify, join, stellar
from .exact_linalg import FieldSpec, GenericityPolicy, random_matrix
from .face_ring import hilbert_function, quotient
from .homology import is_homology_sphere
from .lefschetz import lefschetz_report
from .rigidity import (
    cross_validate,
    degeneration_matrix,
    generic_embedding,
    generic_kernel_trivial,
    kernel_trivial,
    sign_identity_holds,
)
from .shifting import check_ubt, hierarchy_report, is_m_sequence, shift, symmetric_shift
from .suites import SUITES, run_suite

ENV_PREFIX = "SLSPHERES_"


def _ints(text: str) -> list[int]:
    return [int(x) for x in text.replace(" ", "").split(",") if x]


def _glue(text: str) -> dict[int, int]:
    out = {}
    for pair in text.split(","):
        a, b = pair.split(":")
        out[int(a)] = int(b)
    return out


def _dump(obj) -> None:
    sys.stdout.write(json.dumps(obj, sort_keys=True) + "\n")


def _digest(paths) -> str | None:
    if not paths:
        return None
    h = hashlib.sha256()
    for p in paths:
        h.update(Path(p).read_bytes())
    return h.hexdigest()


def _policy(args) -> GenericityPolicy:
    return GenericityPolicy(seed=args.seed, trials=args.trials)


def _emit(args, inputs, result: dict, passed: bool, started: float) -> int:
    manifest = {
        "command": args.command,
        "argv": list(args.argv),
        "input_sha256": _digest(inputs),
        "policy": _policy(args).to_json(),
        "field": args.field,
        "version": __version__,
        "verdict": passed,
    }
    _dump({"manifest": manifest, "result": result})
    # wall time goes to stderr so stdout stays byte-identical across runs
    print(f"wall time {time.perf_counter() - started:.3f}s", file=sys.stderr)
    return 0 if passed else 1


# -- commands ----------------------------------------------------------------


GENERATORS = {
    "simplex-boundary": (1, lambda p: simplex_boundary(*p)),
    "cross-polytope": (1, lambda p: cross_polytope_boundary(*p)),
    "cyclic": (2, lambda p: cyclic_polytope_boundary(*p)),
    "delta-dn": (2, lambda p: delta_dn(*p)),
}


def cmd_gen(args) -> int:
    if args.kind == "from-file":
        if len(args.params) != 1:
            raise ComplexError("from-file takes one path")
        K = load_complex(args.params[0])
    else:
        arity, make = GENERATORS[args.kind]
        if len(args.params) != arity:
            raise ComplexError(f"{args.kind} takes {arity} integer parameter(s)")
        K = make([int(p) for p in args.params])
    _dump(K.to_json())
    return 0


def cmd_op(args) -> int:
    Ks = [load_complex(p) for p in args.inputs]
    need = 2 if args.op in ("join", "connsum") else 1
    if len(Ks) != need:
        raise ComplexError(f"{args.op} takes {need} input file(s)")
    if args.op == "join":
        out = join(*Ks)
    elif args.op == "connsum":
        out = connected_sum(Ks[0], Ks[1], _glue(args.glue) if args.glue else None)
    elif args.op == "stellar":
        if not args.face:
            raise ComplexError("stellar needs --face")
        out = stellar(Ks[0], _ints(args.face))
    elif args.op == "barycentric":
        out = barycentric(Ks[0])
    elif args.op == "identify":
        out = identify(Ks[0], args.u, args.v)
    else:
        out = contract(Ks[0], args.a, args.b)
    _dump(out.to_json())
    return 0


def cmd_check(args) -> int:
    started = time.perf_counter()
    policy = _policy(args)
    field = FieldSpec.parse(args.field)
    if args.which == "m-sequence" and args.g:
        g = _ints(args.g)
        return _emit(args, [], {"g": g, "m_sequence": is_m_sequence(g)}, is_m_sequence(g), started)
    K = load_complex(args.file)
    d = args.d or K.d
    if args.which == "homology-sphere":
        ok, bad = is_homology_sphere(K)
        result = {"sphere": ok, "failing_face": None if bad is None else list(bad), "coefficients": "Q"}
    elif args.which in ("sl", "wl", "wwl"):
        report = lefschetz_report(K, policy, field)
        result = report.to_json()
        ok = bool(getattr(report, args.which))
    elif args.which == "ubt":
        result = check_ubt(K, d, policy)
        ok = result["pass"]
    elif args.which == "hierarchy":
        res = symmetric_shift(K, policy)
        if not res.stable:
            result, ok = {"stable": False}, False
        else:
            rep = hierarchy_report(res.complex, d)
            result = {"stable": True, **rep.to_json()}
            ok = rep.level1 and rep.level2
    else:
        g = list(g_vector(K))
        ok = is_m_sequence(g)
        result = {"g": g, "m_sequence": ok}
    return _emit(args, [args.file], result, ok, started)


def cmd_hilbert(args) -> int:
    started = time.perf_counter()
    K = load_complex(args.file)
    field = FieldSpec.parse(args.field)
    inputs = [args.file]
    if args.theta == "random":
        theta = random_matrix(_policy(args), 0, K.d, K.n, "theta")
    else:
        theta = json.loads(Path(args.theta).read_text())
        inputs.append(args.theta)
    Q = quotient(K, theta, max_degree=args.max_degree, field=field)
    dims = hilbert_function(Q)
    return _emit(args, inputs, {"theta": theta, "dims": dims}, True, started)


def cmd_shift(args) -> int:
    started = time.perf_counter()
    K = load_complex(args.file)
    res = shift(K, args.variant, _policy(args), FieldSpec.parse(args.field))
    return _emit(args, [args.file], res.to_json(), res.stable, started)


def cmd_rigidity(args) -> int:
    started = time.perf_counter()
    K = load_complex(args.file)
    policy = _policy(args)
    d = args.d
    if args.variant == "degeneration":
        if args.u is None or args.v is None:
            raise ComplexError("degeneration needs --u and --v")
        R = degeneration_matrix(K, args.u, args.v, d, generic_embedding(K, 2 * d, policy, 0, "psi0"))
        result = {"kernel_trivial": kernel_trivial(R), "sign_identity": sign_identity_holds(R, args.u, args.v)}
        ok = result["kernel_trivial"] and result["sign_identity"]
    elif args.variant == "cross-validate":
        result = cross_validate(K, d, policy)
        ok = result["agree"]
    else:
        ok = generic_kernel_trivial(K, d, policy, args.variant)
        result = {"variant": args.variant, "kernel_trivial": ok}
    return _emit(args, [args.file], result, ok, started)


def cmd_suite(args) -> int:
    started = time.perf_counter()
    result = run_suite(args.name, _policy(args), args.jobs)
    return _emit(args, [], result, result["pass"], started)


# -- parser ------------------------------------------------------------------


def _env(name: str, default, cast=int):
    raw = os.environ.get(ENV_PREFIX + name.upper())
    return default if raw is None else cast(raw)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=_env("seed", 0))
    common.add_argument("--trials", type=int, default=_env("trials", 3))
    common.add_argument("--field", default=_env("field", "q", str), help="q or p:<prime>")
    common.add_argument("--jobs", type=int, default=_env("jobs", 1))
    common.add_argument("--max-degree", type=int, default=_env("max_degree", None))

    parser = argparse.ArgumentParser(prog="slspheres", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", parents=[common], help="generate a named complex")
    p.add_argument("kind", choices=sorted(GENERATORS) + ["from-file"])
    p.add_argument("params", nargs="*")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("op", parents=[common], help="apply a construction")
    p.add_argument("op", choices=["join", "connsum", "stellar", "barycentric", "identify", "contract"])
    p.add_argument("inputs", nargs="+")
    p.add_argument("--glue", help="L-vertex:K-vertex pairs, e.g. 1:1,2:2,3:3")
    p.add_argument("--face", help="comma-separated face, e.g. 1,2")
    p.add_argument("--u", type=int)
    p.add_argument("--v", type=int)
    p.add_argument("--a", type=int)
    p.add_argument("--b", type=int)
    p.set_defaults(func=cmd_op)

    p = sub.add_parser("check", parents=[common], help="run a property check")
    p.add_argument("which", choices=["homology-sphere", "sl", "wl", "wwl", "ubt", "hierarchy", "m-sequence"])
    p.add_argument("file", nargs="?")
    p.add_argument("--d", type=int)
    p.add_argument("--g", help="g-vector for m-sequence, e.g. 1,3,6")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("hilbert", parents=[common], help="Hilbert function of F[K]/(theta)")
    p.add_argument("file")
    p.add_argument("--theta", default="random", help="'random' or a JSON file with a list of forms")
    p.set_defaults(func=cmd_hilbert)

    p = sub.add_parser("shift", parents=[common], help="algebraic shifting")
    p.add_argument("file")
    p.add_argument("--variant", choices=["e", "s", "exterior", "symmetric"], default="s")
    p.set_defaults(func=cmd_shift)

    p = sub.add_parser("rigidity", parents=[common], help="rigidity kernel tests")
    p.add_argument("file")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--variant", choices=["symmetric", "exterior", "degeneration", "cross-validate"], default="symmetric")
    p.add_argument("--u", type=int)
    p.add_argument("--v", type=int)
    p.set_defaults(func=cmd_rigidity)

    p = sub.add_parser("suite", parents=[common], help="run a named acceptance suite")
    p.add_argument("name", choices=sorted(SUITES))
    p.set_defaults(func=cmd_suite)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    args = parser.parse_args(argv)
    args.argv = argv
    if args.command == "check" and args.file is None and not (args.which == "m-sequence" and args.g):
        parser.error("check needs a complex file")
    try:
        return args.func(args)
    except (ComplexError, ValueError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
