"""Command-line front end.

Exit codes: 0 on success, 2 when a verification reports failures, 1 on
usage errors and malformed input.
"""

import argparse
import json
import sys
from pathlib import Path
from typing import Any, Iterator

from pydantic import BaseModel, ValidationError

from ngbound.config import default_port
from ngbound.models.cli import CliConfig
from ngbound.services import bounds, graph_io, staircase, verifier
from ngbound.utils.errors import GraphFormatError, NGError
from ngbound.utils.logging import log_error, log_warning
from ngbound.utils.storage import atomic_write, render_csv

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_FAILED = 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        raise UsageError(f"{self.prog}: {message}")


# ── Rendering ──────────────────────────────────────────────────────────


def _text_cell(value: Any) -> str:
    if isinstance(value, bool) or value is None:
        return "" if value is None else str(value)
    if isinstance(value, float):
        return f"{value:.12g}"
    if isinstance(value, (list, tuple)):
        return " ".join(_text_cell(v) for v in value)
    return str(value)


def _csv_cell(value: Any) -> Any:
    if isinstance(value, (list, tuple)):
        return " ".join(str(v) for v in value)
    if isinstance(value, float):
        return repr(value)
    return value


def render_text(rows: list[dict[str, Any]], fieldnames: list[str]) -> str:
    """Aligned table, floats at 12 significant digits."""
    cells = [[_text_cell(row.get(f)) for f in fieldnames] for row in rows]
    widths = [max([len(f)] + [len(c[i]) for c in cells]) for i, f in enumerate(fieldnames)]
    lines = ["  ".join(f.ljust(w) for f, w in zip(fieldnames, widths)).rstrip()]
    for c in cells:
        lines.append("  ".join(v.ljust(w) for v, w in zip(c, widths)).rstrip())
    return "\n".join(lines) + "\n"


def _to_jsonable(payload: Any) -> Any:
    if isinstance(payload, BaseModel):
        return payload.model_dump(mode="json")
    if isinstance(payload, list):
        return [_to_jsonable(p) for p in payload]
    return payload


def render(config: CliConfig, payload: Any, rows: list[dict[str, Any]], fieldnames: list[str]) -> str:
    if config.format == "json":
        return json.dumps(_to_jsonable(payload), indent=2) + "\n"
    if config.format == "csv":
        return render_csv(({k: _csv_cell(v) for k, v in row.items()} for row in rows), fieldnames)
    return render_text(rows, fieldnames)


def _emit(config: CliConfig, text: str) -> None:
    if config.out:
        atomic_write(Path(config.out), text)
    else:
        sys.stdout.write(text)


# ── Commands ───────────────────────────────────────────────────────────


def _bounds(config: CliConfig) -> int:
    reports = [bounds.bound_report(A) for A in graph_io.load_staircases(config.input, config.input_kind)]
    rows = [
        {
            "n": r.n,
            "mu": r.mu,
            "rho": r.rho,
            "rho_bar": r.rho_bar,
            "phi": r.phi,
            "phi_bar": r.phi_bar,
            "min_phi_ell": min(r.phi_ell),
            "equality_case": r.equality_case.form if r.equality_case else None,
        }
        for r in reports
    ]
    fields = ["n", "mu", "rho", "rho_bar", "phi", "phi_bar", "min_phi_ell", "equality_case"]
    _emit(config, render(config, reports, rows, fields))
    return EXIT_OK


def _params(config: CliConfig) -> int:
    entries = [staircase.params_entry(A) for A in graph_io.load_staircases(config.input, config.input_kind)]
    rows = [{"n": e.n, "mu": e.mu, **e.params.model_dump()} for e in entries]
    fields = ["n", "mu", "c", "v", "s", "cbar", "vbar", "sbar", "T"]
    _emit(config, render(config, entries, rows, fields))
    return EXIT_OK


def _verify(config: CliConfig) -> int:
    if config.space == "all":
        report = verifier.verify_bruteforce(config.n, config.parallel, allow_large=config.allow_large)
    else:
        report = verifier.verify_staircase(config.n, config.parallel)
    row = report.model_dump()
    row["counterexamples"] = len(report.counterexamples)
    fields = ["n", "search_space", "max_value", "rho0_expected", "gap", "arg_max", "instances_checked", "counterexamples"]
    _emit(config, render(config, report, [row], fields))
    return EXIT_OK if report.passed else EXIT_FAILED


def _profiles(config: CliConfig) -> Iterator[dict[str, Any]]:
    mats = staircase.enumerate_Sstar(config.n) if config.general else staircase.enumerate_Sstar_sym(config.n)
    for A in mats:
        yield graph_io.profile_json(A)


def _enumerate(config: CliConfig) -> int:
    if config.format == "json" or config.out:
        items = list(_profiles(config))
        _emit(config, render(config, items, items, ["n", "mu"]))
        return EXIT_OK
    if config.format == "csv":
        sys.stdout.write("n,mu\n")
    for item in _profiles(config):
        mu = " ".join(str(m) for m in item["mu"])
        sys.stdout.write(f"{item['n']},{mu}\n" if config.format == "csv" else f"{mu}\n")
    return EXIT_OK


def _certificate(config: CliConfig) -> int:
    report = verifier.final_case_certificate(config.k_max, config.parallel)
    rows = [row.model_dump() for row in report.rows]
    fields = ["k", "instances", "expected_instances", "failures", "thin", "min_margin"]
    _emit(config, render(config, report, rows, fields))
    return EXIT_OK if report.passed else EXIT_FAILED


def _rho0(config: CliConfig) -> int:
    ns = [config.n] if config.n is not None else list(range(config.n_from, config.n_to + 1))
    table = [bounds.rho0(n) for n in ns]
    rows = [{"n": r.n, "k": r.k, "k_n": r.k_n, "rho0": r.rho0, "u_n": r.u_n, "best_q": r.best_q} for r in table]
    _emit(config, render(config, table, rows, ["n", "k", "k_n", "rho0", "u_n", "best_q"]))
    return EXIT_OK


def _suite(config: CliConfig) -> int:
    report = verifier.property_suite(config.n)
    rows = [check.model_dump() for check in report.checks]
    fields = ["name", "passed", "instances", "first_failure", "notes"]
    _emit(config, render(config, report, rows, fields))
    return EXIT_OK if report.passed else EXIT_FAILED


def _serve(config: CliConfig) -> int:
    import uvicorn

    uvicorn.run("ngbound.main:app", host="127.0.0.1", port=config.port or default_port())
    return EXIT_OK


COMMANDS = {
    "bounds": _bounds,
    "params": _params,
    "verify": _verify,
    "enumerate": _enumerate,
    "certificate": _certificate,
    "rho0": _rho0,
    "suite": _suite,
    "serve": _serve,
}


def run(config: CliConfig) -> int:
    """Dispatch one command and return its exit code."""
    try:
        return COMMANDS[config.command](config)
    except GraphFormatError as exc:
        log_warning(f"{config.command}: {exc.message} (token {exc.token!r}, offset {exc.offset})")
        sys.stderr.write(f"error ({exc.error_type}): {exc.message} at byte {exc.offset}: {exc.token!r}\n")
        return EXIT_USAGE
    except NGError as exc:
        log_warning(f"{config.command}: {exc.error_type} - {exc.message}")
        sys.stderr.write(f"error ({exc.error_type}): {exc.message}\n")
        return EXIT_USAGE


# ── Argument parsing ───────────────────────────────────────────────────


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=["json", "csv", "text"], default="text")
    common.add_argument("--parallel", type=int, default=None, help="worker processes (default: NG_PARALLEL or 1)")
    common.add_argument("--out", default=None, help="write the report here instead of stdout")

    parser = _Parser(prog="ngbound", description="Nordhaus-Gaddum spectral radius bounds and verification")
    sub = parser.add_subparsers(dest="command", required=True)

    for name, text in (("bounds", "bound report for threshold graphs"), ("params", "parameters (c, v, s) and barred")):
        p = sub.add_parser(name, parents=[common], help=text)
        group = p.add_mutually_exclusive_group(required=True)
        group.add_argument("--graph6", help="graph6 string or file, one graph per line")
        group.add_argument("--edges", help="edge list string or file")
        group.add_argument("--profile", help="profile JSON string or file")

    p = sub.add_parser("verify", parents=[common], help="maximize rho(G) + rho(complement)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--space", choices=["all", "staircase"], default="staircase")
    p.add_argument("--allow-large", action="store_true", help="permit the all-graphs sweep at n=8")

    p = sub.add_parser("enumerate", parents=[common], help="list staircase profiles")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--general", action="store_true", help="all of S*(n) instead of the symmetric members")

    p = sub.add_parser("certificate", parents=[common], help="final-case certificate sweep")
    p.add_argument("--k-max", type=int, required=True)

    p = sub.add_parser("rho0", parents=[common], help="rho0(n) breakdown")
    p.add_argument("--n", type=int)
    p.add_argument("--from", dest="n_from", type=int)
    p.add_argument("--to", dest="n_to", type=int)

    p = sub.add_parser("suite", parents=[common], help="property suite over staircase sweeps")
    p.add_argument("--n-max", dest="n", type=int, required=True)

    p = sub.add_parser("serve", help="start the HTTP API")
    p.add_argument("--port", type=int, default=None)
    return parser


def parse_config(argv: list[str] | None = None) -> CliConfig:
    args = vars(build_parser().parse_args(argv))
    for kind in ("graph6", "edges", "profile"):
        value = args.pop(kind, None)
        if value is not None:
            args["input"] = value
            args["input_kind"] = kind
    return CliConfig(**{k: v for k, v in args.items() if v is not None})


def main(argv: list[str] | None = None) -> int:
    try:
        config = parse_config(argv)
    except (UsageError, ValidationError) as exc:
        log_error(f"usage error: {exc}")
        sys.stderr.write(f"{exc}\n")
        return EXIT_USAGE
    return run(config)


if __name__ == "__main__":
    sys.exit(main())
