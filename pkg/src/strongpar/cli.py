"""Command-line front end: classify, table, verify, satake.

Reports are JSON, echo the run manifest, and are written atomically.
Exit codes: 0 success, 1 a check failed, 2 bad input, 3 a cap was exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
from fractions import Fraction

from .character import TorusCharacter, classify, parse_character, truncated_units
from .errors import CapExceeded, InputError, StrongparError
from .filtration import build_k_spec, j_spec, roche_function, iwahori_function, spec_from_matrix
from .finite_verify import (DEFAULT_GROUP_CAP, ExtendedCharacter, decomposition_check,
                            derived_contains_torus, k_closure_check, verify_comm_tech,
                            verify_explicit_commutator, verify_extended_character)
from .root_datum import catalog_lookup
from .satake_target import invariant_ring_summary
from .table import regenerate_table, row_conclusions
from .weyl import DEFAULT_ORBIT_CAP, parabolic_descriptor

EXIT_OK, EXIT_FAILED, EXIT_INPUT, EXIT_CAP = 0, 1, 2, 3

SUITES = ("comms", "decomp", "kspec", "mu")


class CheckFailed(StrongparError):
    pass


def _read_input(arg: str | None) -> dict:
    if arg is None:
        raise InputError("--input is required for this command")
    text = arg
    if not arg.lstrip().startswith("{"):
        try:
            with open(arg) as fh:
                text = fh.read()
        except OSError as exc:
            raise InputError(f"cannot read input file {arg!r}: {exc}") from None
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"input is not valid JSON: {exc}") from None
    if not isinstance(obj, dict):
        raise InputError("input must be a JSON object")
    return obj


def _override(obj: dict, args) -> dict:
    obj = dict(obj)
    if args.prime is not None:
        obj["p"] = args.prime
    if args.level is not None:
        obj["level"] = args.level
    return obj


# ---------------------------------------------------------------------------

def cmd_classify(args) -> dict:
    obj = _override(_read_input(args.input), args)
    mu = parse_character(obj)
    report = classify(mu, cap=args.cap_orbit)
    out = {"classification": report.to_dict()}
    if report.parabolic:
        desc = parabolic_descriptor(mu.datum, report.fixed_simple)
        out["satake_target"] = {
            "ring": "C[X^vee]^W'",
            "subgroup": list(desc.subset),
            "subgroup_type": list(desc.types),
            "subgroup_order": desc.order,
            "is_full_weyl_group": desc.order == report.weyl_order,
        }
    if report.strongly_parabolic:
        f = roche_function(mu)
        out["roche_function"] = f.table()
        out["k_spec"] = build_k_spec(mu, report=report).to_dict()
    return out


def cmd_table(args) -> dict:
    entries = regenerate_table(args.max_n)
    if not all(e.matches for e in entries):
        bad = [e.to_dict() for e in entries if not e.matches]
        raise CheckFailed(json.dumps(bad))
    return {"rows": {str(k): v for k, v in row_conclusions(entries).items()},
            "entries": [e.to_dict() for e in entries]}


def _golden_gl3(n: int, p: int = 5):
    datum = catalog_lookup("GL", 3)
    units = truncated_units(p, n)
    a = Fraction(1, 4)
    return TorusCharacter.from_exponents(datum, units, [a, a, a - Fraction(1, p ** (n - 1))])


def _suite(name: str, args) -> list[dict]:
    seed, trials, cap = args.seed, args.trials, args.cap_group
    primes = [args.prime] if args.prime else None
    levels = [args.level] if args.level else None
    out = []
    if name == "comms":
        for p in primes or (3, 5, 7):
            for m in levels or (1, 2):
                out.append(verify_explicit_commutator(p, m))
                out.append(verify_comm_tech(p, m, trials, seed))
        for p, m in ((3, 1), (3, 2), (5, 1)):
            if (primes is None or p in primes) and (levels is None or m in levels):
                out.append(derived_contains_torus("SL", 2, p, m, cap))
    elif name == "decomp":
        for group in ("GL", "SL"):
            datum = catalog_lookup(group, 2)
            for p, m in ((3, 1), (3, 2), (5, 1), (7, 1)):
                if (primes is None or p in primes) and (levels is None or m in levels):
                    out.append(decomposition_check(j_spec(iwahori_function(datum)), None, p, m, "exhaustive", cap=cap))
        mu = _golden_gl3(2)
        out.append(decomposition_check(build_k_spec(mu), None, 5, 2, "sampled", trials, seed))
    elif name == "kspec":
        mu = _golden_gl3(2)
        out.append(k_closure_check(build_k_spec(mu), 5, 2, trials, seed))
        broken = spec_from_matrix(catalog_lookup("GL", 3), [[0, 0, 1], [0, 0, 0], [1, 1, 0]], (0,))
        res = k_closure_check(broken, 5, 2, trials, seed)
        res.claim = "k_closure_fails_without_levi_compatibility"
        res.result = not res.result
        out.append(res)
    elif name == "mu":
        mu = _golden_gl3(2)
        ext = ExtendedCharacter.build(mu, build_k_spec(mu))
        out.append(verify_extended_character(ext, trials, seed))
    else:
        raise InputError(f"unknown suite {name!r}; choose from {', '.join(SUITES)} or all")
    return [r.to_dict() for r in out]


def cmd_verify(args) -> dict:
    names = []
    for s in args.suite:
        names.extend(SUITES if s == "all" else [s])
    results = {name: _suite(name, args) for name in names}
    ok = all(r["result"] for rs in results.values() for r in rs)
    return {"suites": results, "all_passed": ok}


def cmd_satake(args) -> dict:
    obj = _read_input(args.input)
    bound = int(obj.get("bound", args.bound))
    if "exponents" in obj:
        mu = parse_character(_override(obj, args))
        report = classify(mu, cap=args.cap_orbit)
        if not report.parabolic:
            raise InputError("character is not parabolic; its stabilizer is not a standard parabolic")
        datum, subset = mu.datum, report.fixed_simple
    else:
        if "group" not in obj:
            raise InputError("satake input needs 'group' (and 'n', 'subset') or a character")
        datum = catalog_lookup(obj["group"], obj.get("n"))
        subset = obj.get("subset", list(range(datum.semisimple_rank)))
        if not isinstance(subset, list) or not all(isinstance(i, int) for i in subset):
            raise InputError("subset must be a list of simple indices")
        for i in subset:
            if not 0 <= i < datum.semisimple_rank:
                raise InputError(f"{i} is not a simple index of {datum.name}")
    return {"ring": invariant_ring_summary(datum, subset, bound, cap=args.cap_orbit).to_dict()}


COMMANDS = {"classify": cmd_classify, "table": cmd_table, "verify": cmd_verify, "satake": cmd_satake}


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="strongpar", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", help="JSON file path or inline JSON object")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--cap-orbit", type=int, default=DEFAULT_ORBIT_CAP)
    common.add_argument("--cap-group", type=int, default=DEFAULT_GROUP_CAP)
    common.add_argument("--output", help="write the report here instead of stdout")
    common.add_argument("--level", type=int)
    common.add_argument("--prime", type=int)
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("classify", parents=[common], help="classify a torus character")
    t = sub.add_parser("table", parents=[common], help="regenerate the group table")
    t.add_argument("--max-n", type=int, default=8)
    v = sub.add_parser("verify", parents=[common], help="run finite-ring verification suites")
    v.add_argument("suite", nargs="*", help=f"any of {', '.join(SUITES)}, all")
    v.add_argument("--trials", type=int, default=10 ** 5)
    s = sub.add_parser("satake", parents=[common], help="export the invariant ring table")
    s.add_argument("--bound", type=int, default=2)
    return parser


def manifest(args) -> dict:
    out = {"command": args.command, "input": args.input, "seed": args.seed,
           "cap_orbit": args.cap_orbit, "cap_group": args.cap_group, "output": args.output,
           "level": args.level, "prime": args.prime}
    for extra in ("suite", "trials", "bound", "max_n"):
        if hasattr(args, extra):
            out[extra] = getattr(args, extra)
    return out


def write_atomic(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".strongpar-", suffix=".json")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    report = {"manifest": manifest(args)}
    code = EXIT_OK
    try:
        body = COMMANDS[args.command](args)
        report.update(body)
        if body.get("all_passed") is False:
            code = EXIT_FAILED
        report["status"] = "ok" if code == EXIT_OK else "failed"
    except CheckFailed as exc:
        code, report["status"], report["error"] = EXIT_FAILED, "failed", str(exc)
    except CapExceeded as exc:
        code, report["status"], report["error"] = EXIT_CAP, "cap_exceeded", str(exc)
    except InputError as exc:
        code, report["status"], report["error"] = EXIT_INPUT, "input_error", str(exc)
    report["exit_code"] = code
    text = json.dumps(report, indent=2) + "\n"
    if args.output:
        write_atomic(args.output, text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
