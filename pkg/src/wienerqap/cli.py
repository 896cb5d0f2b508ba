"""Command-line interface.

Exit codes: 0 success, 1 usage error, 2 invalid input, 3 solver error.

Random generation uses Python's ``random.Random`` (Mersenne Twister
MT19937) seeded with ``--seed``; integers are derived from ``random()`` only,
whose output sequence is stable across Python versions and platforms.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import random
import sys
import time
from typing import Optional, Sequence

from . import __version__
from .core import PartitionInstance, Sense, reduce_partition
from .dp import solve
from .errors import (
    BadParams,
    InconsistentTables,
    InstanceTooLarge,
    StateInvalid,
    WienerQapError,
)
from .formats import load_instance, parse_degree_sequence, parse_partition
from .oracle import (
    brute_force,
    default_cap,
    enumerate_caterpillars,
    enumerate_trees_with_degrees,
    wiener_index,
)
from .tree import solve_max_wiener, validate_degree_sequence

EXIT_OK, EXIT_USAGE, EXIT_INPUT, EXIT_SOLVER = 0, 1, 2, 3
_SOLVER_ERRORS = (InconsistentTables, InstanceTooLarge, StateInvalid)
BENCH_HEADER = "command,n_or_r,sum_alpha,states,millis"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# --- generation -------------------------------------------------------------


def _randint(rng: random.Random, lo: int, hi: int) -> int:
    return lo + int(rng.random() * (hi - lo + 1))


def generate(kind: str, params: dict, seed: int) -> bytes:
    """Deterministic random input file for ``kind`` in ``{"qap", "degseq"}``."""
    rng = random.Random(seed)
    if kind == "qap":
        n, amax, bmax = params["n"], params["alpha_max"], params["beta_max"]
        if n < 1 or amax < 0 or bmax < 0:
            raise BadParams("need n >= 1, alpha-max >= 0, beta-max >= 0")
        alphas = sorted(_randint(rng, 0, amax) for _ in range(n))
        betas = sorted(_randint(rng, 0, bmax) for _ in range(n))
        return (json.dumps({"alphas": alphas, "betas": betas}) + "\n").encode()
    if kind == "degseq":
        r = params["r"]
        if r < 2:
            raise BadParams("need r >= 2")
        degrees = [1] * r
        for _ in range(r - 2):
            degrees[_randint(rng, 0, r - 1)] += 1
        return (" ".join(map(str, degrees)) + "\n").encode()
    raise BadParams(f"unknown generator {kind!r}")


# --- reporting --------------------------------------------------------------


def _digest(data: bytes) -> str:
    return "sha256:" + hashlib.sha256(data).hexdigest()


def _read(path: str) -> bytes:
    if path == "-":
        return sys.stdin.buffer.read()
    try:
        with open(path, "rb") as fh:
            return fh.read()
    except OSError as exc:
        raise FileNotFoundError(f"cannot read {path}: {exc.strerror}") from None


def _emit(report: dict, fmt: str, out) -> None:
    if fmt == "json":
        out.write(json.dumps(report, sort_keys=True) + "\n")
        return
    out.write(f"command: {report['command']}\n")
    result = report["result"]
    for key, value in result.items():
        if isinstance(value, list):
            value = " ".join(json.dumps(v) for v in value)
        elif isinstance(value, dict):
            value = json.dumps(value, sort_keys=True)
        out.write(f"{key}: {value}\n")
    if report.get("states_visited") is not None and "states_visited" not in result:
        out.write(f"states_visited: {report['states_visited']}\n")
    out.write(f"wall_time: {report['wall_time']:.6f}\n")


def _report(command, data, result, started, states=None) -> dict:
    return {
        "command": command,
        "input_digest": _digest(data),
        "result": result,
        "wall_time": time.perf_counter() - started,
        "states_visited": states,
    }


# --- subcommands ------------------------------------------------------------


def _cmd_solve(args, out):
    data = _read(args.file)
    started = time.perf_counter()
    inst, meta = load_instance(data)
    res = solve(inst, Sense(args.sense), reconstruct_perm=not args.no_reconstruct)
    result = res.to_json()
    result["instance"] = inst.to_json()
    result["metadata"] = meta
    _emit(_report(f"solve {args.sense}", data, result, started, res.states_visited), args.format, out)


def _optimal_profiles(d, cap):
    if d.n > cap:
        return None
    best, count = None, 0
    for _, w in enumerate_caterpillars(d, cap=cap):
        if best is None or w > best:
            best, count = w, 1
        elif w == best:
            count += 1
    return count


def _cmd_tree_max(args, out):
    data = _read(args.file)
    started = time.perf_counter()
    d = validate_degree_sequence(parse_degree_sequence(data))
    cat = solve_max_wiener(d)
    result = cat.to_json(emit_tree=args.emit_tree)
    profiles = _optimal_profiles(d, args.cap)
    if profiles is not None:
        result["optimal_profiles"] = profiles
    _emit(_report("tree-max", data, result, started, cat.states_visited), args.format, out)


def _cmd_oracle(args, out):
    data = _read(args.file)
    started = time.perf_counter()
    if args.what == "qap":
        inst, _ = load_instance(data)
        bf = brute_force(inst, Sense(args.sense), cap=args.cap)
        result = {
            "sense": args.sense,
            "optimum": bf.optimum,
            "optimal_count": bf.optimal_count,
            "witness": list(bf.witness.perm),
        }
    elif args.what == "trees":
        d = validate_degree_sequence(parse_degree_sequence(data))
        best, count, witness = None, 0, None
        for t in enumerate_trees_with_degrees(d, cap=args.cap):
            count += 1
            w = wiener_index(t)
            if best is None or w > best:
                best, witness = w, t
        result = {
            "max_wiener": best,
            "tree_count": count,
            "witness_edges": [[u + 1, v + 1] for u, v in witness.edges],
        }
    else:
        d = validate_degree_sequence(parse_degree_sequence(data))
        profiles = [{"ell": list(ell), "wiener": w} for ell, w in enumerate_caterpillars(d, cap=args.cap)]
        best = max(p["wiener"] for p in profiles)
        result = {
            "max_wiener": best,
            "optimal_profiles": sum(p["wiener"] == best for p in profiles),
            "profiles": profiles,
        }
    _emit(_report(f"oracle {args.what}", data, result, started), args.format, out)


def _cmd_gen(args, out):
    if args.kind == "qap":
        params = {"n": args.n, "alpha_max": args.alpha_max, "beta_max": args.beta_max}
    else:
        params = {"r": args.r}
    out.write(generate(args.kind, params, args.seed).decode())


def _cmd_reduce(args, out):
    p = parse_partition(_read(args.file))
    inst, threshold = reduce_partition(p)
    payload = inst.to_json()
    payload.update({"threshold": threshold, "k": p.k, "Q": p.Q})
    out.write(json.dumps(payload) + "\n")


def _int_csv(text):
    try:
        return [int(x) for x in text.split(",") if x]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _cmd_bench(args, out):
    out.write(BENCH_HEADER + "\n")
    for size in args.sizes:
        for rep in range(args.repeat):
            seed = args.seed + rep
            if args.kind == "qap":
                inst, _ = load_instance(
                    generate("qap", {"n": size, "alpha_max": args.alpha_max, "beta_max": args.beta_max}, seed)
                )
                t0 = time.perf_counter()
                res = solve(inst, Sense(args.sense), reconstruct_perm=True)
                millis = (time.perf_counter() - t0) * 1000
                row = (f"solve-{args.sense}", size, sum(inst.alphas), res.states_visited, millis)
            else:
                d = validate_degree_sequence(parse_degree_sequence(generate("degseq", {"r": size}, seed)))
                t0 = time.perf_counter()
                cat = solve_max_wiener(d)
                millis = (time.perf_counter() - t0) * 1000
                row = ("tree-max", size, sum(x - 1 for x in d.backbone), cat.states_visited, millis)
            out.write("%s,%d,%d,%d,%.3f\n" % row)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="wienerqap", description="Exact solvers for the Wiener QAP and max-Wiener trees.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    def fmt(p):
        p.add_argument("--format", choices=["json", "text"], default="json")

    def cap(p):
        p.add_argument("--cap", type=int, default=default_cap(), help="oracle size cap (default: $WIENERQAP_ORACLE_CAP or 9)")

    p = sub.add_parser("solve", help="solve an instance with the dynamic program")
    p.add_argument("sense", choices=["max", "min"])
    p.add_argument("file")
    p.add_argument("--no-reconstruct", action="store_true", help="report the optimum only")
    fmt(p)
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("tree-max", help="tree of maximum Wiener index for a degree sequence")
    p.add_argument("file")
    p.add_argument("--emit-tree", action="store_true", help="include the edge list")
    fmt(p)
    cap(p)
    p.set_defaults(func=_cmd_tree_max)

    p = sub.add_parser("oracle", help="brute-force ground truth")
    osub = p.add_subparsers(dest="what", parser_class=_Parser)
    osub.required = True
    q = osub.add_parser("qap")
    q.add_argument("sense", choices=["max", "min"])
    q.add_argument("file")
    fmt(q)
    cap(q)
    for name in ("trees", "caterpillars"):
        q = osub.add_parser(name)
        q.add_argument("file")
        fmt(q)
        cap(q)
    p.set_defaults(func=_cmd_oracle)

    p = sub.add_parser("gen", help="generate random inputs")
    gsub = p.add_subparsers(dest="kind", parser_class=_Parser)
    gsub.required = True
    q = gsub.add_parser("qap")
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--alpha-max", type=int, default=10)
    q.add_argument("--beta-max", type=int, default=15)
    q.add_argument("--seed", type=int, default=0)
    q = gsub.add_parser("degseq")
    q.add_argument("--r", type=int, required=True)
    q.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("reduce", help="reduce Partition to a Wiener max-QAP instance")
    rsub = p.add_subparsers(dest="kind", parser_class=_Parser)
    rsub.required = True
    q = rsub.add_parser("partition")
    q.add_argument("file")
    p.set_defaults(func=_cmd_reduce)

    p = sub.add_parser("bench", help="timed sweeps, CSV on stdout")
    bsub = p.add_subparsers(dest="kind", parser_class=_Parser)
    bsub.required = True
    q = bsub.add_parser("qap")
    q.add_argument("--n", dest="sizes", type=_int_csv, required=True, help="comma-separated sizes")
    q.add_argument("--alpha-max", type=int, default=10)
    q.add_argument("--beta-max", type=int, default=100)
    q.add_argument("--sense", choices=["max", "min"], default="max")
    q = bsub.add_parser("tree")
    q.add_argument("--r", dest="sizes", type=_int_csv, required=True, help="comma-separated sizes")
    for q in bsub.choices.values():
        q.add_argument("--seed", type=int, default=0)
        q.add_argument("--repeat", type=int, default=1)
    p.set_defaults(func=_cmd_bench)
    return parser


def run(argv: Optional[Sequence[str]] = None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        err.write(f"wienerqap: usage error: {exc}\n")
        return EXIT_USAGE
    try:
        args.func(args, out)
    except _SOLVER_ERRORS as exc:
        err.write(f"wienerqap: solver error: {exc}\n")
        return EXIT_SOLVER
    except (WienerQapError, FileNotFoundError) as exc:
        err.write(f"wienerqap: invalid input: {exc}\n")
        return EXIT_INPUT
    return EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
