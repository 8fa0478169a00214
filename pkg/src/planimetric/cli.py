"""Command-line front end.

Subcommands::

    planimetric distance --domain '{"type":"disc"}' --z 0 --w 0.5 --metric bergman
    planimetric metric   --domain '{"type":"annulus","r":0.25}' --z 0.9
    planimetric certify  --suite prop1 --domain '{"type":"annulus","r":0.25}' --seed 7
    planimetric sweep    --suite lemma4 --format csv

Exit codes: 0 success / every certificate passed, 1 a certificate failed,
2 invalid input, 3 engine or IO error.  Reports are byte-stable for fixed
inputs: JSON keys are sorted and no timings are recorded.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import asdict, dataclass, fields

import numpy as np

from . import __version__
from ._kernels import BACKEND
from .domains import (Annulus, ConformalDomain, Disc, PuncturedDisc, domain_from_spec,
                      domain_label, domain_to_spec, pushforward_bergman_metric)
from .distances import (DEFAULT_KMAX, DEFAULT_RESOLUTION, bergman_distance,
                        caratheodory_distance, kobayashi_distance)
from .errors import (CoincidentPoints, DegenerateQuery, InvalidDomainSpec, InvalidMap,
                     PlanimetricError, PointOutsideDomain, UnsupportedDomain)
from .geometry import as_point, parse_complex
from .kernel import (_auto_degree, bergman_metric_numeric, build_basis, kernel_diagnostics,
                     series_terms)
from .verify import (CSV_COLUMNS, REGIMES, SCHEMA_VERSION, SamplePlan, corollary2_gap,
                     isolated_point_check, lemma4_enclosure, lemma4_sharpness_sweep,
                     monotonicity_check, prop1_certificate, prop3_sweep, remark_d_limit)

EXIT_OK, EXIT_FAILED, EXIT_INPUT, EXIT_ENGINE = 0, 1, 2, 3

COMMANDS = ("distance", "metric", "certify", "sweep")
METRICS = ("bergman", "kobayashi", "caratheodory")
SUITES = ("lemma4", "prop1", "cor2", "prop3", "remark_d", "monotonicity", "isolated")
FORMATS = ("json", "csv")

# pairs per rung (points for monotonicity, pairs for the lemma4 enclosure)
SUITE_COUNTS = {"lemma4": 100_000, "prop1": 8, "cor2": 8, "prop3": 3, "remark_d": 8,
                "monotonicity": 100, "isolated": 3}

# errors that mean the request itself was wrong, as opposed to an engine failure
_INPUT_ERRORS = (InvalidDomainSpec, InvalidMap, PointOutsideDomain, DegenerateQuery,
                 CoincidentPoints, UnsupportedDomain)


class InputError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    command: str
    domain: dict
    z: list | None = None
    w: list | None = None
    metric: str = "bergman"
    suite: str | None = None
    seed: int = 0
    count: int | None = None
    resolution: int = DEFAULT_RESOLUTION
    degree: int | None = None
    kmax: int = DEFAULT_KMAX
    outer: dict | None = None
    out: str = "-"
    format: str = "json"

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> "RunConfig":
        known = {f.name for f in fields(cls)}
        extra = set(data) - known
        if extra:
            raise InputError(f"unknown config field(s): {', '.join(sorted(extra))}")
        if "command" not in data or "domain" not in data:
            raise InputError("config needs 'command' and 'domain'")
        return _validate(cls(**data))


def _validate(cfg: RunConfig) -> RunConfig:
    if cfg.command not in COMMANDS:
        raise InputError(f"unknown command {cfg.command!r}")
    if cfg.metric not in METRICS:
        raise InputError(f"unknown metric {cfg.metric!r}")
    if cfg.format not in FORMATS:
        raise InputError(f"unknown format {cfg.format!r}")
    try:
        dom = domain_from_spec(cfg.domain)
        outer = domain_from_spec(cfg.outer) if cfg.outer is not None else None
    except PlanimetricError as exc:
        raise InputError(str(exc)) from None
    if cfg.command in ("distance", "metric") and cfg.z is None:
        raise InputError(f"{cfg.command} needs --z")
    if cfg.command == "distance" and cfg.w is None:
        raise InputError("distance needs --w")
    if cfg.command in ("certify", "sweep"):
        if cfg.suite not in SUITES:
            raise InputError(f"{cfg.command} needs --suite, one of {', '.join(SUITES)}")
        if cfg.count is not None and cfg.count < 1:
            raise InputError("--count must be positive")
    if cfg.resolution < 8:
        raise InputError("--resolution must be at least 8")
    if cfg.kmax < 1:
        raise InputError("--kmax must be at least 1")
    if cfg.degree is not None and not (1 <= cfg.degree <= 400):
        raise InputError("--degree must lie in [1, 400]")
    # materialise defaults so the report records exactly what ran
    changes = {"domain": domain_to_spec(dom)}
    if outer is not None:
        changes["outer"] = domain_to_spec(outer)
    if cfg.command in ("certify", "sweep"):
        if cfg.count is None:
            changes["count"] = SUITE_COUNTS[cfg.suite]
        if cfg.suite == "monotonicity" and cfg.outer is None:
            changes["outer"] = {"type": "disc"}
    for key in ("z", "w"):
        v = getattr(cfg, key)
        if v is not None:
            p = as_point(v)
            changes[key] = [p.real, p.imag]
    return RunConfig(**{**asdict(cfg), **changes})


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(message)


def _complex_arg(text: str) -> complex:
    try:
        return parse_complex(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="planimetric", description=__doc__.split("\n\n")[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--config", help="JSON file with RunConfig fields")
        p.add_argument("--domain", default=None, help="domain spec as JSON")
        p.add_argument("--z", type=_complex_arg)
        p.add_argument("--w", type=_complex_arg)
        for key in ("z", "w"):
            p.add_argument(f"--{key}-re", type=float)
            p.add_argument(f"--{key}-im", type=float)
        p.add_argument("--metric", choices=METRICS)
        p.add_argument("--suite", choices=SUITES)
        p.add_argument("--seed", type=int)
        p.add_argument("--count", type=int, help="pairs per depth rung (suite specific)")
        p.add_argument("--resolution", type=int)
        p.add_argument("--degree", type=int)
        p.add_argument("--kmax", type=int)
        p.add_argument("--outer", help="outer domain for the monotonicity suite")
        p.add_argument("--out")
        p.add_argument("--format", choices=FORMATS)
    return parser


def parse_config(argv) -> RunConfig:
    """Validated configuration from command-line arguments (and ``--config``)."""
    args = build_parser().parse_args(list(argv))
    if args.command is None:
        raise InputError("missing command; expected one of " + ", ".join(COMMANDS))
    data = {}
    if args.config:
        try:
            with open(args.config) as fh:
                data = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise InputError(f"cannot read config {args.config}: {exc}") from None
        if not isinstance(data, dict):
            raise InputError("config file must hold a JSON object")
        if data.get("command", args.command) != args.command:
            raise InputError("config command does not match the subcommand")
    data["command"] = args.command
    for key in ("z", "w"):
        v = getattr(args, key)
        re_, im_ = getattr(args, f"{key}_re"), getattr(args, f"{key}_im")
        if v is not None and (re_ is not None or im_ is not None):
            raise InputError(f"give --{key} or --{key}-re/--{key}-im, not both")
        if re_ is not None or im_ is not None:
            v = complex(re_ or 0.0, im_ or 0.0)
        if v is not None:
            data[key] = [v.real, v.imag]
    for key in ("metric", "suite", "seed", "count", "resolution", "degree", "kmax", "out", "format"):
        v = getattr(args, key)
        if v is not None:
            data[key] = v
    for key in ("domain", "outer"):
        v = getattr(args, key)
        if v is not None:
            try:
                data[key] = json.loads(v)
            except json.JSONDecodeError as exc:
                raise InputError(f"--{key} is not valid JSON: {exc.msg}") from None
    if "domain" not in data:
        if args.command in ("distance", "metric"):
            raise InputError(f"{args.command} needs --domain")
        data["domain"] = {"type": "disc"}
    return RunConfig.from_dict(data)


# --- execution ----------------------------------------------------------------------

def _diagnostics() -> dict:
    return {"backend": BACKEND, "version": __version__}


def _run_distance(cfg: RunConfig, dom):
    z, w = complex(*cfg.z), complex(*cfg.w)
    if cfg.metric == "bergman":
        est = bergman_distance(dom, z, w, cfg.resolution)
    elif cfg.metric == "kobayashi":
        est = kobayashi_distance(dom, z, w, cfg.kmax)
    else:
        est = caratheodory_distance(dom, z, w)
    row = [cfg.metric, domain_label(dom), str(cfg.seed), "0", repr(z.real), repr(z.imag),
           repr(w.real), repr(w.imag), repr(float(est.value)),
           repr(float(est.value - est.bracket[0])), repr(float(est.value + est.bracket[1])), ""]
    return {"result": est.to_dict()}, [row], True


def _run_metric(cfg: RunConfig, dom):
    z = complex(*cfg.z)
    value = bergman_metric_numeric(dom, z, cfg.degree)
    result = {"value": value, "metric": "bergman"}
    if isinstance(dom, Annulus):
        result["route"] = "series"
        result["diagnostics"] = {"series_terms": series_terms(dom.r)}
    else:
        degree = cfg.degree if cfg.degree is not None else _auto_degree(dom, z)
        result["route"] = "gram"
        result["diagnostics"] = kernel_diagnostics(build_basis(dom, degree), z).to_dict()
    if isinstance(dom, ConformalDomain):
        result["pushforward"] = pushforward_bergman_metric(dom, z)
    row = ["metric", domain_label(dom), str(cfg.seed), "0", repr(z.real), repr(z.imag),
           "", "", repr(float(value)), "", "", ""]
    return {"result": result}, [row], True


def _certificates(cfg: RunConfig, dom) -> list:
    plan = lambda: SamplePlan(dom, count=cfg.count, seed=cfg.seed,
                              resolution=cfg.resolution, kmax=cfg.kmax)
    s = cfg.suite
    if s == "lemma4":
        certs = [] if cfg.command == "sweep" else [lemma4_enclosure(cfg.count, cfg.seed)]
        return certs + [lemma4_sharpness_sweep(r) for r in REGIMES]
    if s == "prop1":
        return [prop1_certificate(plan())]
    if s == "cor2":
        return [corollary2_gap(plan())]
    if s == "prop3":
        return [prop3_sweep(plan())]
    if s == "remark_d":
        return [remark_d_limit(plan())]
    if s == "monotonicity":
        return [monotonicity_check(dom, domain_from_spec(cfg.outer), count=cfg.count, seed=cfg.seed)]
    return [isolated_point_check()]


def _run_suite(cfg: RunConfig, dom):
    if cfg.suite in ("lemma4", "isolated") and not isinstance(dom, (Disc, PuncturedDisc)):
        raise InputError(f"suite {cfg.suite} runs on the fixed disc models; got {domain_label(dom)}")
    certs = _certificates(cfg, dom)
    rows = [r for c in certs for r in c.csv_rows()]
    passed = all(c.passed for c in certs)
    return {"certificates": [c.to_dict() for c in certs], "passed": passed}, rows, passed


def run(cfg: RunConfig):
    """Execute ``cfg``; returns ``(report document, csv rows, passed)``."""
    dom = domain_from_spec(cfg.domain)
    if cfg.command == "distance":
        body, rows, ok = _run_distance(cfg, dom)
    elif cfg.command == "metric":
        body, rows, ok = _run_metric(cfg, dom)
    else:
        body, rows, ok = _run_suite(cfg, dom)
    doc = {"schema_version": SCHEMA_VERSION, "command": cfg.command, "config": cfg.to_dict(),
           "diagnostics": _diagnostics(), **body}
    return doc, rows, ok


def render(doc: dict, rows: list, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(doc, sort_keys=True, indent=2, allow_nan=False) + "\n"
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    writer.writerows(rows)
    return buf.getvalue()


def emit_report(doc: dict, rows: list, fmt: str, out: str = "-") -> None:
    """Write the report; ``out == "-"`` means stdout.  IO errors propagate as OSError."""
    text = render(doc, rows, fmt)
    if out == "-":
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    with open(out, "w", newline="") as fh:
        fh.write(text)


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        cfg = parse_config(argv)
    except (InputError, argparse.ArgumentTypeError, ValueError) as exc:
        print(f"planimetric: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    try:
        doc, rows, ok = run(cfg)
    except InputError as exc:
        print(f"planimetric: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except _INPUT_ERRORS as exc:
        print(f"planimetric: error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (PlanimetricError, ArithmeticError, np.linalg.LinAlgError) as exc:
        print(f"planimetric: engine error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_ENGINE
    try:
        emit_report(doc, rows, cfg.format, cfg.out)
    except OSError as exc:
        print(f"planimetric: io error: {exc}", file=sys.stderr)
        return EXIT_ENGINE
    return EXIT_OK if ok else EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())
