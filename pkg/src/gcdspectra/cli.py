"""Command-line front end.

Subcommands: eval, det, spectrum, bounds, converge, verify.  Exit codes:
0 success, 1 verification failure, 2 usage or parse error, 3 hypothesis
violation.  All output is deterministic for a given config and seed —
reports carry no timestamps, floats print as shortest round-trip
decimals, exact rationals as p/q.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import asdict, dataclass
from pathlib import Path

from .arith import composite, evaluate, split_mobius
from .errors import HypothesisError
from .experiments import convergence_experiment
from .formatting import format_scalar, parse_scalar
from .matrix import IndexSet, build_gcd_matrix
from .sequences import parse_sequence
from .spectra import (
    DEFAULT_TOL,
    constant_gcd_eigenvalue_bounds,
    determinant_sandwich_bounds,
    eigenvalues_symmetric,
    rank_one_update_bounds,
)
from .syntax import FnSyntaxError, parse_fn
from .verify import run_suite, suite_names

PSD_REL_TOL = 1e-8


@dataclass(frozen=True)
class ExperimentConfig:
    """One converge run, fully determined; round-trips through JSON."""

    fn: str
    sequence: str
    q: int = 1
    n_max: int = 50
    tol: float = DEFAULT_TOL
    seed: int = 0
    out: str = "."
    format: str = "json"

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> "ExperimentConfig":
        known = set(cls.__dataclass_fields__)
        extra = set(data) - known
        if extra:
            raise ValueError(f"unknown config keys: {', '.join(sorted(extra))}")
        if "fn" not in data or "sequence" not in data:
            raise ValueError("config needs at least 'fn' and 'sequence'")
        return cls(**data)

    @classmethod
    def from_file(cls, path) -> "ExperimentConfig":
        return cls.from_dict(json.loads(Path(path).read_text()))


def parse_index_set(text: str) -> IndexSet:
    """Set specs: 'range:LO..HI' or 'list:v1,v2,...'."""
    kind, _, rest = text.partition(":")
    try:
        if kind == "range":
            lo_text, sep, hi_text = rest.partition("..")
            if not sep:
                raise ValueError("expected range:LO..HI")
            lo, hi = int(lo_text), int(hi_text)
            if hi < lo:
                raise ValueError(f"empty range {lo}..{hi}")
            return IndexSet.of(range(lo, hi + 1))
        if kind == "list":
            return IndexSet.of(int(v) for v in rest.split(","))
    except ValueError as err:
        raise ValueError(f"bad set spec {text!r}: {err}") from None
    raise ValueError(f"unknown set kind {kind!r} in {text!r} (use range: or list:)")


def _split_with_fallback(f):
    """Factor out mobius powers; a pure mobius power stays a single factor
    so hypothesis checks report its class membership honestly."""
    fs, d = split_mobius(f)
    if not fs:
        return [(f, 1)], 0
    return list(fs), d


def _fmt(args) -> str:
    return args.format if args.format is not None else "json"


def _tol(args) -> float:
    return args.tol if args.tol is not None else DEFAULT_TOL


def _emit_kv(payload: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(payload, indent=2, sort_keys=True) + "\n"
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["field", "value"])
    for key, value in payload.items():
        if isinstance(value, (list, tuple)):
            value = " ".join(str(v) for v in value)
        writer.writerow([key, value])
    return buf.getvalue()


def _deliver(text: str, args, stem: str) -> None:
    sys.stdout.write(text)
    if args.out is not None:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        (out / f"{stem}.{_fmt(args)}").write_text(text)


def cmd_eval(args) -> int:
    f = parse_fn(args.fn)
    value = evaluate(f, args.m)
    payload = {
        "function": str(f),
        "m": args.m,
        "exact": None if value.exact is None else format_scalar(value.exact),
        "float": repr(value.approx),
    }
    _deliver(_emit_kv(payload, _fmt(args)), args, "eval")
    return 0


def cmd_det(args) -> int:
    f = parse_fn(args.fn)
    idx = parse_index_set(args.set)
    fs, d = _split_with_fallback(f)
    rep = determinant_sandwich_bounds(fs, d, idx)
    spec = eigenvalues_symmetric(build_gcd_matrix(composite(fs, d), idx), _tol(args))
    smallest = spec.smallest(1)
    trace = sum(spec.eigenvalues)
    payload = {
        "function": str(f),
        "set": list(idx.elements),
        "determinant": format_scalar(rep.observed),
        "lower": format_scalar(rep.lower),
        "upper": format_scalar(rep.upper),
        "psd": smallest >= -PSD_REL_TOL * trace,
        "smallest_eigenvalue": repr(smallest),
    }
    _deliver(_emit_kv(payload, _fmt(args)), args, "det")
    return 0


def cmd_spectrum(args) -> int:
    f = parse_fn(args.fn)
    idx = parse_index_set(args.set)
    spec = eigenvalues_symmetric(build_gcd_matrix(f, idx), _tol(args))
    if _fmt(args) == "json":
        payload = {
            "function": str(f),
            "set": list(idx.elements),
            "eigenvalues": [repr(v) for v in spec.eigenvalues],
            "residual": repr(spec.residual),
            "sweeps": spec.sweeps,
        }
        text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    else:
        lines = ["index,eigenvalue"]
        lines.extend(f"{i + 1},{v!r}" for i, v in enumerate(spec.eigenvalues))
        text = "\n".join(lines) + "\n"
    _deliver(text, args, "spectrum")
    return 0


def cmd_bounds(args) -> int:
    if args.kind == "sandwich":
        fs, d = _split_with_fallback(parse_fn(args.fn))
        rep = determinant_sandwich_bounds(fs, d, parse_index_set(args.set))
    elif args.kind == "rank-one":
        r = [parse_scalar(v) for v in args.r.split(",")]
        rep = rank_one_update_bounds(r, _tol(args))
    else:  # constant-gcd
        f = parse_fn(args.fn)
        idx = parse_index_set(args.set)
        x = args.x if args.x is not None else math.gcd(*idx.elements)
        rep = constant_gcd_eigenvalue_bounds(f, x, idx, _tol(args))
    _deliver(_emit_kv(rep.to_json_dict(), _fmt(args)), args, "bounds")
    return 0


def cmd_converge(args) -> int:
    base = ExperimentConfig.from_file(args.config).to_dict() if args.config else {}
    merged = dict(base)
    for key, value in [
        ("fn", args.fn),
        ("sequence", args.sequence),
        ("q", args.q),
        ("n_max", args.n),
        ("tol", args.tol),
        ("seed", args.seed),
        ("out", args.out),
        ("format", args.format),
    ]:
        if value is not None:
            merged[key] = value
    cfg = ExperimentConfig.from_dict(merged)
    fs, d = _split_with_fallback(parse_fn(cfg.fn))
    seq = parse_sequence(cfg.sequence)
    report = convergence_experiment(fs, d, seq, q=cfg.q, n_max=cfg.n_max, tol=cfg.tol)

    from .reporting import write_convergence_outputs

    out_dir = Path(cfg.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    config_path = out_dir / "config.json"
    config_path.write_text(json.dumps(cfg.to_dict(), indent=2, sort_keys=True) + "\n")
    paths = write_convergence_outputs(report, out_dir)
    print(report.summary_line())
    for p in [config_path, *paths]:
        print(f"wrote {p}")
    return 0


def cmd_verify(args) -> int:
    results = run_suite(args.suite, args.seed if args.seed is not None else 0)
    failed = False
    for name, checks, failures in results:
        if failures:
            failed = True
            print(f"{name}: FAIL ({len(failures)} of {checks} checks)")
            for line in failures:
                print(f"  reproduce: {line}")
        else:
            print(f"{name}: pass ({checks} checks)")
    return 1 if failed else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gcdspectra",
        description=(
            "Determinants, spectra, and eigenvalue bounds of gcd matrices "
            "of arithmetical functions."
        ),
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=None, help="solver tolerance")
    common.add_argument("--seed", type=int, default=None, help="seed for randomized suites")
    common.add_argument("--out", default=None, help="directory for output files")
    common.add_argument(
        "--format", choices=("json", "csv"), default=None, help="stdout payload format"
    )
    sub = parser.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("eval", parents=[common], help="evaluate a function at one point")
    p.add_argument("fn", help="function spec, e.g. 'conv(phi^1, mu^2)'")
    p.add_argument("m", type=int, help="evaluation point (positive integer)")
    p.set_defaults(handler=cmd_eval)

    p = sub.add_parser(
        "det", parents=[common], help="exact determinant with sandwich bounds + PSD verdict"
    )
    p.add_argument("fn", help="function spec")
    p.add_argument("set", help="index set: range:LO..HI or list:v1,v2,...")
    p.set_defaults(handler=cmd_det)

    p = sub.add_parser("spectrum", parents=[common], help="all eigenvalues of a gcd matrix")
    p.add_argument("fn", help="function spec")
    p.add_argument("set", help="index set: range:LO..HI or list:v1,v2,...")
    p.set_defaults(handler=cmd_spectrum)

    p = sub.add_parser("bounds", help="eigenvalue/determinant bounds")
    kinds = p.add_subparsers(dest="kind", required=True)
    k = kinds.add_parser("sandwich", parents=[common], help="determinant bracket")
    k.add_argument("fn")
    k.add_argument("set")
    k.set_defaults(handler=cmd_bounds)
    k = kinds.add_parser("rank-one", parents=[common], help="all-ones plus diagonal")
    k.add_argument("r", help="comma-separated ascending diagonal parameters, r1 >= 1")
    k.set_defaults(handler=cmd_bounds)
    k = kinds.add_parser("constant-gcd", parents=[common], help="constant pairwise gcd set")
    k.add_argument("fn")
    k.add_argument("set")
    k.add_argument("--x", type=int, default=None, help="the common gcd (default: derived)")
    k.set_defaults(handler=cmd_bounds)

    p = sub.add_parser("converge", parents=[common], help="eigenvalue series along a growing set")
    p.add_argument("fn", nargs="?", default=None, help="function spec (or use --config)")
    p.add_argument(
        "sequence",
        nargs="?",
        default=None,
        help="sequence spec: range:a,b,e | list:... | progression:b | constgcd:x,primes",
    )
    p.add_argument("--q", type=int, default=None, help="which smallest eigenvalue (1-based)")
    p.add_argument("--n", type=int, default=None, help="largest index-set size")
    p.add_argument("--config", default=None, help="JSON config file; flags override it")
    p.set_defaults(handler=cmd_converge)

    p = sub.add_parser("verify", parents=[common], help="run a named self-check suite")
    p.add_argument("suite", choices=suite_names(), help="suite name")
    p.set_defaults(handler=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return args.handler(args)
    except FnSyntaxError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    except HypothesisError as err:
        print(f"hypothesis violation: {err}", file=sys.stderr)
        return 3
    except (ValueError, OSError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 2


def console_main() -> None:
    sys.exit(main(sys.argv[1:]))
