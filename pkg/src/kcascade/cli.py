"""Command line front end.

Exit codes: 0 success, 1 usage error, 2 verification counterexample,
3 internal-consistency error.

Settings are resolved as defaults < config file (key=value) < environment
(KCASCADE_<NAME>) < command-line flags.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import chevalley as chv
from .cascade import cascade
from .index import InternalConsistencyError, TheoremCounterexample, enumerate_equality, index_report
from .rootsys import RootSystemError, build_root_system
from .tables import cascade_rows, cascade_size_rows, maximal_rows, minimal_rows, render, report_rows
from .verify import RunConfig, expand_types, run_verify

EXIT_OK, EXIT_USAGE, EXIT_COUNTEREXAMPLE, EXIT_INTERNAL = 0, 1, 2, 3
ENV_PREFIX = "KCASCADE_"

# setting name -> (type, RunConfig field)
SETTINGS = {
    "types": (str, "types"),
    "max_enum_rank": (int, "max_enum_rank"),
    "oracle_rank_cap": (int, "oracle_rank_cap"),
    "oracle_spot_types": (str, "oracle_spot_types"),
    "oracle_spot_samples": (int, "oracle_spot_samples"),
    "trials": (int, "trials"),
    "seed": (int, "seed"),
    "format": (str, "output_format"),
    "out": (str, "output_path"),
}

TABLE_TYPES = "A1..A12,B2..B10,C2..C10,D4..D10,E6,E7,E8,F4,G2"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="key=value settings file")
    p.add_argument("--types", help=f"type list with ranges, e.g. '{TABLE_TYPES}'")
    p.add_argument("--max-enum-rank", type=int, dest="max_enum_rank")
    p.add_argument("--oracle-rank-cap", type=int, dest="oracle_rank_cap")
    p.add_argument("--oracle-spot-types", dest="oracle_spot_types")
    p.add_argument("--oracle-spot-samples", type=int, dest="oracle_spot_samples")
    p.add_argument("--trials", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--format", choices=["json", "csv", "markdown"])
    p.add_argument("--out", help="output file (directory for 'tables')")


def build_parser() -> argparse.ArgumentParser:
    env = ", ".join(ENV_PREFIX + k.upper() for k in SETTINGS)
    parser = _Parser(
        prog="kcascade",
        description="Kostant cascades and the index of parabolic subalgebras "
        "(simple roots in Bourbaki numbering, 1-based).",
        epilog=f"Environment overrides: {env}. Flags win over environment, "
        "environment over --config.",
    )
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    for name, help_ in [
        ("cascade", "cascade K(S) of a subset"),
        ("index", "index report for p_S and u_S"),
        ("oracle", "brute-force index of a subalgebra"),
    ]:
        p = sub.add_parser(name, help=help_)
        p.add_argument("type", help="e.g. E6 or A2xB3")
        p.add_argument("--subset", default="all", help="'all', 'none' or comma-separated indices")
        if name == "oracle":
            p.add_argument("--kind", default="parabolic", choices=["full", "parabolic", "nilradical", "opposite_nilradical"])
        _common(p)

    p = sub.add_parser("enumerate", help="index reports for every subset")
    p.add_argument("type")
    p.add_argument("--equality-only", action="store_true")
    _common(p)

    p = sub.add_parser("tables", help="emit the cascade-size, minimal and maximal tables")
    _common(p)

    p = sub.add_parser("verify", help="run all verification suites")
    _common(p)
    return parser


def _read_config_file(path: str) -> dict[str, str]:
    out = {}
    for n, line in enumerate(Path(path).read_text().splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{n}: expected key=value")
        k, v = (x.strip() for x in line.split("=", 1))
        k = k.replace("-", "_")
        if k not in SETTINGS:
            raise UsageError(f"{path}:{n}: unknown setting {k!r}")
        out[k] = v
    return out


def resolve_config(args: argparse.Namespace, default_types: str | None = None) -> RunConfig:
    raw: dict[str, object] = {}
    if getattr(args, "config", None):
        raw.update(_read_config_file(args.config))
    for k in SETTINGS:
        v = os.environ.get(ENV_PREFIX + k.upper())
        if v is not None:
            raw[k] = v
    for k in SETTINGS:
        v = getattr(args, k, None)
        if v is not None:
            raw[k] = v
    kwargs = {}
    for k, v in raw.items():
        typ, field_name = SETTINGS[k]
        try:
            kwargs[field_name] = typ(v)
        except ValueError:
            raise UsageError(f"bad value for {k}: {v!r}") from None
    if default_types and "types" not in kwargs:
        kwargs["types"] = default_types
    try:
        return RunConfig(**kwargs)
    except (ValueError, RootSystemError) as exc:
        raise UsageError(str(exc)) from None


def parse_subset(text: str, rank: int) -> frozenset[int]:
    text = text.strip().lower()
    if text == "all":
        return frozenset(range(rank))
    if text in ("none", ""):
        return frozenset()
    out = set()
    for tok in text.split(","):
        try:
            i = int(tok)
        except ValueError:
            raise UsageError(f"bad simple-root index {tok!r}") from None
        if not 1 <= i <= rank:
            raise UsageError(f"simple-root index {i} out of range 1..{rank}")
        out.add(i - 1)
    return frozenset(out)


def _emit(text: str, path: str | None) -> None:
    if path:
        Path(path).write_text(text)
    else:
        sys.stdout.write(text)


def _system(name: str):
    try:
        return build_root_system(name)
    except RootSystemError as exc:
        raise UsageError(str(exc)) from None


def _run(args: argparse.Namespace) -> int:
    cmd = args.command
    if cmd == "tables":
        cfg = resolve_config(args, default_types=TABLE_TYPES)
        types = expand_types(cfg.types)
        ext = {"json": "json", "csv": "csv", "markdown": "md"}[cfg.output_format]
        outputs = {
            "cascade_sizes": render(cascade_size_rows(types), cfg.output_format, "Cardinality of K(Pi)"),
            "minimal_parabolics": render(minimal_rows(types), cfg.output_format, "Minimal parabolics with chi(p)+chi(u) = rk g"),
            "maximal_parabolics_A": render(maximal_rows(types), cfg.output_format, "Maximal parabolics of type A with equality"),
        }
        if cfg.output_path:
            out = Path(cfg.output_path)
            out.mkdir(parents=True, exist_ok=True)
            for name, text in outputs.items():
                (out / f"{name}.{ext}").write_text(text)
        else:
            sys.stdout.write("\n".join(outputs.values()))
        return EXIT_OK

    cfg = resolve_config(args)
    if cmd == "verify":
        summary = run_verify(cfg)
        _emit(json.dumps(summary, sort_keys=True, indent=2) + "\n", cfg.output_path)
        return EXIT_OK if summary["ok"] else EXIT_COUNTEREXAMPLE

    rs = _system(args.type)
    if cmd == "enumerate":
        reports = [rep for _, rep in enumerate_equality(rs)]
        if args.equality_only:
            reports = [r for r in reports if r.equality]
        _emit(render(report_rows(reports), cfg.output_format, f"Index reports for {rs.name}"), cfg.output_path)
        return EXIT_OK

    s = parse_subset(args.subset, rs.rank)
    if cmd == "cascade":
        c = cascade(rs, s)
        if cfg.output_format == "json":
            text = json.dumps({"type": rs.name, "numbering": "Bourbaki", **c.to_dict()}, sort_keys=True, indent=2) + "\n"
        else:
            text = render(cascade_rows(c), cfg.output_format, f"K(S) for {rs.name}, S = {sorted(i + 1 for i in s)}")
        _emit(text, cfg.output_path)
    elif cmd == "index":
        rep = index_report(rs, s)
        if cfg.output_format == "json":
            text = json.dumps(rep.to_dict(), sort_keys=True, indent=2) + "\n"
        else:
            text = render(report_rows([rep]), cfg.output_format)
        _emit(text, cfg.output_path)
    elif cmd == "oracle":
        alg = chv.build_chevalley(rs)
        sel = chv.select(alg, args.kind, s)
        value = chv.index_oracle(sel, cfg.trials, cfg.seed)
        doc = {
            "type": rs.name,
            "subset": sorted(i + 1 for i in s),
            "kind": args.kind,
            "dim": sel.dim,
            "index": value,
            "trials": cfg.trials,
            "seed": cfg.seed,
        }
        _emit(json.dumps(doc, sort_keys=True, indent=2) + "\n", cfg.output_path)
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _run(args)
    except UsageError as exc:
        print(f"kcascade: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except TheoremCounterexample as exc:
        print(json.dumps({"counterexample": exc.payload, "message": str(exc)}, sort_keys=True), file=sys.stderr)
        return EXIT_COUNTEREXAMPLE
    except (InternalConsistencyError, chv.ChevalleyError) as exc:
        print(f"kcascade: internal consistency error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
