"""Command-line front end.

Exit codes: 0 success, 1 discrepancy (a failed suite or an oracle
disagreement), 2 usage or input error, 3 size cap exceeded.
"""

from __future__ import annotations

import argparse
import inspect
import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import Any, Sequence, Union

from . import __version__, oracle
from .commute import (
    affine_energy,
    commute_count_measure,
    commute_count_product_measure,
    commute_count_set,
    delta_with_witness,
)
from .config import CapExceeded
from .exact import format_scalar, identity, mat, parse_scalar
from .generators import (
    GapSpec,
    commuting_plane_example,
    gap,
    gap_report,
    geometric,
    interval,
    random_matrix_measure,
    random_measure,
    random_set,
    sharp_example,
)
from .harness import SUITES, run_suite, sweep, sweep_csv
from .measures import MatrixMeasure, ScalarMeasure, measure_from_json, measure_to_json, product_measure
from .profiles import (
    Profile,
    affine_energy_asym,
    asym_commute_count,
    diff_ratio_profile,
    difference_profile,
    dyadic_levels,
    energy_additive,
    energy_mult,
    moment,
    quotient_profile,
    sum_profile,
)

SCHEMA = "commute-lab/1"
QUANTITIES = ("T", "E", "M", "delta", "affine_energy", "asym", "profiles", "moments", "dyadic_levels")

EXIT_OK, EXIT_DISCREPANCY, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3

Input = Union[list, ScalarMeasure, MatrixMeasure]


class UsageError(Exception):
    pass


# -- input parsing -----------------------------------------------------------


def parse_set_text(text: str, source: str = "<input>") -> list[Fraction]:
    """Newline-delimited rationals; blank lines and ``#`` comments are skipped."""
    out = []
    for lineno, line in enumerate(text.splitlines(), 1):
        body = line.split("#", 1)[0]
        token = body.strip()
        if not token:
            continue
        try:
            out.append(parse_scalar(token))
        except ValueError:
            col = body.index(token) + 1
            raise UsageError(f"{source}:{lineno}:{col}: not a rational: {token!r}") from None
    if not out:
        raise UsageError(f"{source}: no elements")
    return sorted(set(out))


def read_input(path: str) -> Input:
    """A set file, or a JSON measure when the first non-blank character is ``{``."""
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text()
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from None
    if text.lstrip().startswith("{"):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as e:
            raise UsageError(f"{path}:{e.lineno}:{e.colno}: {e.msg}") from None
        try:
            return measure_from_json(data)
        except (ValueError, TypeError, KeyError) as e:
            raise UsageError(f"{path}: invalid measure: {e}") from None
    return parse_set_text(text, path)


def _ints(parts: Sequence[str], spec: str) -> list[int]:
    try:
        return [int(p) for p in parts]
    except ValueError:
        raise UsageError(f"bad generator spec {spec!r}: expected integers") from None


def _gen_from_json(data: dict) -> Input:
    fam = data.get("family")
    if fam == "gap":
        return gap(GapSpec(parse_scalar(str(data.get("base", 0))),
                           tuple(parse_scalar(str(s)) for s in data["steps"]),
                           tuple(int(n) for n in data["lengths"])))
    params = {k: v for k, v in data.items() if k != "family"}
    order = {
        "interval": ["N"], "geometric": ["N", "r"], "sharp": ["N"], "plane": ["N"],
        "random_set": ["n", "lo", "hi", "seed"], "random_measure": ["n", "lo", "hi", "seed"],
        "random_matrix": ["n", "seed"],
    }
    if fam not in order:
        raise UsageError(f"unknown family {fam!r}")
    args = [str(params[k]) for k in order[fam] if k in params]
    return generate(":".join([fam, *args]))


def generate(spec: str) -> Input:
    """Build an input from ``family:params`` or a JSON object.

    Families: interval:N, geometric:N[:r], gap:base:s1,s2,...:L1,L2,...,
    sharp:N, plane:N (span of I and [[1,1],[0,1]]), random_set:n:lo:hi:seed,
    random_measure:n:lo:hi:seed, random_matrix:n:seed.
    """
    spec = spec.strip()
    if spec.startswith("{"):
        try:
            data = json.loads(spec)
        except json.JSONDecodeError as e:
            raise UsageError(f"generator JSON:{e.lineno}:{e.colno}: {e.msg}") from None
        try:
            return _gen_from_json(data)
        except KeyError as e:
            raise UsageError(f"generator JSON missing field {e}") from None
    fam, _, rest = spec.partition(":")
    parts = rest.split(":") if rest else []
    try:
        if fam == "interval" and len(parts) == 1:
            return interval(*_ints(parts, spec))
        if fam == "geometric" and len(parts) in (1, 2):
            r = parse_scalar(parts[1]) if len(parts) == 2 else 2
            return geometric(_ints(parts[:1], spec)[0], r)
        if fam == "gap" and len(parts) == 3:
            steps = tuple(parse_scalar(s) for s in parts[1].split(","))
            return gap(GapSpec(parse_scalar(parts[0]), steps, tuple(_ints(parts[2].split(","), spec))))
        if fam == "sharp" and len(parts) == 1:
            return sharp_example(*_ints(parts, spec))
        if fam == "plane" and len(parts) == 1:
            return commuting_plane_example(_ints(parts, spec)[0], identity(), mat(1, 1, 0, 1))
        if fam == "random_set" and len(parts) == 4:
            return random_set(*_ints(parts, spec))
        if fam == "random_measure" and len(parts) == 4:
            return random_measure(*_ints(parts, spec))
        if fam == "random_matrix" and len(parts) == 2:
            return random_matrix_measure(*_ints(parts, spec))
    except ValueError as e:
        raise UsageError(f"generator {spec!r}: {e}") from None
    raise UsageError(f"bad generator spec {spec!r}")


def parse_range(text: str) -> list[int]:
    """``a..b`` (inclusive) or a comma list."""
    try:
        if ".." in text:
            a, b = text.split("..", 1)
            return list(range(int(a), int(b) + 1))
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise UsageError(f"bad range {text!r}; use a..b or a,b,c") from None


# -- output ------------------------------------------------------------------


def _jsonable(v: Any) -> Any:
    if isinstance(v, bool) or v is None or isinstance(v, str):
        return v
    if isinstance(v, (int, Fraction)):
        return format_scalar(Fraction(v))
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    return str(v)


def dump_json(obj: dict) -> str:
    return json.dumps(_jsonable(obj), indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def _profile_json(P: Profile) -> list:
    return [[format_scalar(k), format_scalar(Fraction(v))] for k, v in P.items()]


# -- compute -----------------------------------------------------------------


def _kind(obj: Input) -> str:
    if isinstance(obj, MatrixMeasure):
        return "matrix_measure"
    if isinstance(obj, ScalarMeasure):
        return "scalar_measure"
    return "set"


def _need_scalar(obj: Input, q: str) -> None:
    if isinstance(obj, MatrixMeasure):
        raise UsageError(f"quantity {q} needs a scalar set or measure")


def compute(obj: Input, quantities: Sequence[str], use_oracle: bool = False,
            other: Input | None = None, threads: int = 1) -> tuple[dict, bool]:
    """Report for ``quantities``; the flag is False when an oracle disagrees."""
    kind = _kind(obj)
    values: dict[str, Any] = {}
    checks: dict[str, dict] = {}

    def agree(name: str, fast: Any, brute: Any) -> None:
        checks[name] = {"oracle": brute, "agreement": fast == brute}

    for q in quantities:
        if q == "T":
            if kind == "matrix_measure":
                values["T"] = commute_count_measure(obj)
                if use_oracle:
                    agree("T", values["T"], oracle.brute_T_measure(obj))
            else:
                rep = (commute_count_set(obj, "zero_pattern", threads) if kind == "set"
                       else commute_count_product_measure(obj, "zero_pattern", threads))
                values["T"] = rep.total
                values["T_report"] = rep.to_json()
                if use_oracle:
                    brute = (oracle.brute_T_set(obj) if kind == "set"
                             else oracle.brute_T_measure(product_measure(obj)))
                    agree("T", rep.total, brute)
        elif q == "E":
            _need_scalar(obj, q)
            values["E"] = energy_additive(obj)
            if use_oracle:
                agree("E", values["E"], oracle.brute_E(obj))
        elif q == "M":
            _need_scalar(obj, q)
            values["M"] = energy_mult(obj)
            if use_oracle:
                agree("M", values["M"], oracle.brute_M(obj))
        elif q == "delta":
            if kind != "matrix_measure":
                raise UsageError("delta needs a matrix measure")
            res = delta_with_witness(obj)
            values["delta"] = res.value
            values["delta_witness"] = [X.to_json() for X in res.witness]
            if use_oracle:
                agree("delta", res.value, oracle.brute_delta(obj))
        elif q == "affine_energy":
            _need_scalar(obj, q)
            values["affine_energy"] = affine_energy(obj)
            values["affine_energy_inverse"] = affine_energy(obj, "inverse")
            if use_oracle and kind == "set":
                agree("affine_energy", values["affine_energy"], oracle.brute_affine_energy(obj))
        elif q == "asym":
            _need_scalar(obj, q)
            D = obj if other is None else other
            _need_scalar(D, q)
            values["asym_commute"] = asym_commute_count(obj, D)
            values["affine_energy_asym"] = affine_energy_asym(obj, D)
            if use_oracle and kind == "set" and _kind(D) == "set":
                agree("asym_commute", values["asym_commute"], oracle.brute_asym(obj, D, "commute"))
                agree("affine_energy_asym", values["affine_energy_asym"], oracle.brute_asym(obj, D, "affine"))
        elif q == "profiles":
            _need_scalar(obj, q)
            values["profiles"] = {
                "quotient": _profile_json(quotient_profile(obj, threads)),
                "sum": _profile_json(sum_profile(obj)),
                "difference": _profile_json(difference_profile(obj)),
                "diff_ratio": _profile_json(diff_ratio_profile(obj, threads)),
            }
        elif q == "moments":
            _need_scalar(obj, q)
            qp, sp = quotient_profile(obj, threads), sum_profile(obj)
            values["moments"] = {
                f"{name}_{k}": moment(P, k) for name, P in (("quotient", qp), ("sum", sp)) for k in (1, 2, 3, 4)
            }
        elif q == "dyadic_levels":
            if kind != "set":
                raise UsageError("dyadic_levels needs a set")
            values["dyadic_levels"] = {
                "quotient": [list(t) for t in dyadic_levels(quotient_profile(obj, threads))],
                "sum": [list(t) for t in dyadic_levels(sum_profile(obj))],
            }
        else:
            raise UsageError(f"unknown quantity {q!r}; choose from {', '.join(QUANTITIES)}")

    report: dict[str, Any] = {"schema": SCHEMA, "version": __version__, "input_kind": kind,
                              "size": len(obj), "values": values}
    ok = True
    if use_oracle:
        report["oracle"] = checks
        ok = all(c["agreement"] for c in checks.values())
        report["agreement"] = ok
    return report, ok


# -- commands ----------------------------------------------------------------


def cmd_compute(args: argparse.Namespace) -> int:
    sources = [s for s in (args.gen, args.set, args.measure) if s is not None]
    if len(sources) != 1:
        raise UsageError("give exactly one of --gen, --set, --measure")
    obj = generate(args.gen) if args.gen is not None else read_input(args.set or args.measure)
    other = None
    if args.other is not None:
        other = generate(args.other) if not Path(args.other).exists() else read_input(args.other)
    qs = [q.strip() for q in args.q.split(",") if q.strip()]
    report, ok = compute(obj, qs, args.oracle, other, args.threads)
    sys.stdout.write(dump_json(report))
    if not ok:
        print("DISCREPANCY: oracle and fast engine disagree", file=sys.stderr)
        return EXIT_DISCREPANCY
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    if args.suite not in SUITES:
        raise UsageError(f"unknown suite {args.suite!r}; choose from {', '.join(SUITES)}")
    fn = SUITES[args.suite]
    accepted = inspect.signature(fn).parameters
    params: dict[str, Any] = {"threads": args.threads}
    if args.seed is not None:
        params["seed"] = args.seed
    if args.trials is not None:
        for name in ("trials", "trials_small"):
            if name in accepted:
                params[name] = args.trials
    if args.sizes is not None:
        params["sizes"] = parse_range(args.sizes)
    if args.N is not None:
        params["Ns"] = parse_range(args.N)
    unknown = [k for k in params if k not in accepted]
    if unknown:
        raise UsageError(f"suite {args.suite} does not take {', '.join('--' + k for k in unknown)}")
    rep = run_suite(args.suite, **params)
    if args.format == "csv":
        sys.stdout.write(rep.to_csv())
    else:
        sys.stdout.write(dump_json({"schema": SCHEMA, "version": __version__, **rep.to_json()}))
    if not rep.passed:
        print(f"DISCREPANCY: suite {rep.name} failed on {', '.join(rep.failures)}", file=sys.stderr)
        return EXIT_DISCREPANCY
    return EXIT_OK


def cmd_sweep(args: argparse.Namespace) -> int:
    try:
        rows = sweep(args.family, parse_range(args.N), args.threads)
    except KeyError as e:
        raise UsageError(e.args[0]) from None
    if args.format == "json":
        sys.stdout.write(dump_json({"schema": SCHEMA, "version": __version__, "family": args.family, "rows": rows}))
    else:
        sys.stdout.write(sweep_csv(rows))
    return EXIT_OK


def cmd_generate(args: argparse.Namespace) -> int:
    obj = generate(args.spec)
    if isinstance(obj, list):
        if args.format == "json":
            out: dict[str, Any] = {"schema": SCHEMA, "set": [format_scalar(a) for a in obj]}
            if args.spec.startswith("gap:"):
                parts = args.spec.split(":")
                out["gap"] = gap_report(GapSpec(parse_scalar(parts[1]),
                                                tuple(parse_scalar(s) for s in parts[2].split(",")),
                                                tuple(int(n) for n in parts[3].split(","))))
            sys.stdout.write(dump_json(out))
        else:
            sys.stdout.write("".join(format_scalar(a) + "\n" for a in obj))
    else:
        sys.stdout.write(dump_json(measure_to_json(obj)))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="commute-lab", description="Exact commuting-pair and energy counts.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("compute", help="compute quantities for one input")
    c.add_argument("--gen", help="generator spec, family:params or JSON")
    c.add_argument("--set", help="file of newline-delimited rationals (or a JSON measure)")
    c.add_argument("--measure", help="JSON measure file")
    c.add_argument("--other", help="second set for asym (spec or file); defaults to the input")
    c.add_argument("--q", default="T", help=f"comma list from {','.join(QUANTITIES)}")
    c.add_argument("--oracle", action="store_true", help="add brute-force values and an agreement verdict")
    c.add_argument("--threads", type=int, default=1)
    c.set_defaults(func=cmd_compute)

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("suite", help=", ".join(SUITES))
    v.add_argument("--seed", type=int)
    v.add_argument("--trials", type=int)
    v.add_argument("--sizes", help="a..b or comma list")
    v.add_argument("--N", help="a..b or comma list")
    v.add_argument("--threads", type=int, default=1)
    v.add_argument("--format", choices=("json", "csv"), default="json")
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("sweep", help="tabulate a family over a parameter range")
    s.add_argument("family", help="interval, geometric or gap")
    s.add_argument("--N", required=True, help="a..b or comma list")
    s.add_argument("--threads", type=int, default=1)
    s.add_argument("--format", choices=("json", "csv"), default="csv")
    s.set_defaults(func=cmd_sweep)

    g = sub.add_parser("generate", help="print a generated set or measure")
    g.add_argument("spec")
    g.add_argument("--format", choices=("json", "txt"), default="txt")
    g.set_defaults(func=cmd_generate)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "threads", 1) < 1:
        parser.error("--threads must be at least 1")
    try:
        return args.func(args)
    except CapExceeded as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_CAP
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, TypeError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
