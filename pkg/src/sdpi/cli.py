"""Command-line front end.

Exit codes: 0 success, 1 usage error, 2 validation failure, 3 verification
failure.
"""
import argparse
import json
import math
import os
import sys
from dataclasses import dataclass
from typing import Optional

from . import figure as fig
from . import io
from . import oracle
from .contraction import SearchConfig, estimate
from .divergences import DivergenceSpec, divergence
from .probability import ValidationError

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VALIDATION = 2
EXIT_VERIFICATION = 3
SEED_ENV = "SDPI_SEED"
ETA_METHODS = ("auto", "spectral", "grid", "ascent", "boundary", "thm2", "closed-form")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(EXIT_USAGE)


@dataclass
class CliConfig:
    """Resolved options shared by the subcommands."""
    input: Optional[str] = None
    output: Optional[str] = None
    spec: Optional[str] = None
    method: Optional[str] = None
    seed: int = 0
    resolution: Optional[int] = None
    format: str = "json"


def env_seed(default):
    raw = os.environ.get(SEED_ENV)
    if raw is None or raw == "":
        return default
    try:
        return int(raw)
    except ValueError:
        raise ValidationError(f"{SEED_ENV} must be an integer, got {raw!r}") from None


def _positive_int(text):
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {v}")
    return v


def build_parser():
    p = _Parser(prog="sdpi", description="Divergences and contraction constants on finite alphabets.")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    d = sub.add_parser("divergence", help="evaluate D(nu || mu)")
    d.add_argument("--kind", required=True, choices=("renyi", "kl", "chi2", "tv"))
    d.add_argument("--alpha", type=float, help="Renyi order, required for --kind renyi")
    d.add_argument("--input", required=True, help='JSON file with "nu" and "mu"')
    d.add_argument("--bits", action="store_true", help="report in bits instead of nats")

    e = sub.add_parser("eta", help="estimate a contraction constant")
    e.add_argument("--spec", required=True, help="renyi:ALPHA, kl, chi2 or tv")
    e.add_argument("--method", default="auto", choices=ETA_METHODS)
    e.add_argument("--input", required=True, help="pair file, JSON or CSV")
    e.add_argument("--format", choices=("json", "csv"), help="input format; inferred from the suffix by default")
    e.add_argument("--config", help="JSON search configuration")
    e.add_argument("--output", help="write the JSON estimate here instead of stdout")

    v = sub.add_parser("verify", help="run the theorem suites against the oracle")
    v.add_argument("--theorem", required=True, choices=("1", "2", "3", "all"))
    v.add_argument("--trials", type=_positive_int, default=100)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--resolution", type=_positive_int, default=60, help="lattice resolution for theorem 3")

    f = sub.add_parser("figure", help="emit the BSC contraction curves")
    f.add_argument("--points", type=_positive_int, default=101)
    f.add_argument("--format", choices=("csv", "svg"), default="csv")
    f.add_argument("--output", help="output path, stdout by default")
    return p


def _load_config(path, seed):
    if path is None:
        return SearchConfig(seed=seed)
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise ValidationError(f"cannot read config {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise ValidationError(f"malformed config JSON at line {exc.lineno}: {exc.msg}") from None
    if not isinstance(doc, dict):
        raise ValidationError("config must be a JSON object")
    doc.setdefault("seed", seed)
    return SearchConfig.from_mapping(doc)


def cmd_divergence(args):
    if args.kind == "renyi":
        if args.alpha is None:
            raise UsageError("--alpha is required for --kind renyi")
        spec = DivergenceSpec.renyi(args.alpha)
    else:
        spec = DivergenceSpec.parse(args.kind)
    nu, mu = io.parse_divergence_input(args.input)
    value = divergence(nu, mu, spec).value
    if args.bits and args.kind != "tv" and math.isfinite(value):
        value /= math.log(2.0)
    print(io.fmt(value))
    return EXIT_OK


def cmd_eta(args):
    spec = DivergenceSpec.parse(args.spec)
    mu, K = io.parse_input(args.input, args.format, require_mu=False)
    seed = env_seed(None)
    cfg = _load_config(args.config, 0)
    if seed is not None:
        cfg = SearchConfig.from_mapping({**cfg.to_dict(), "seed": seed})
    est = estimate(mu, K, spec, args.method, cfg)
    io.write(io.estimate_to_json(est) + "\n", args.output)
    return EXIT_OK


def cmd_verify(args):
    seed = env_seed(args.seed)
    cfg = SearchConfig(seed=seed)
    runners = {
        "1": lambda: oracle.verify_theorem1(seed, args.trials, cfg),
        "2": lambda: oracle.verify_theorem2(seed, args.trials, cfg),
        "3": lambda: oracle.verify_theorem3(seed, args.trials, args.resolution, cfg),
    }
    names = ("1", "2", "3") if args.theorem == "all" else (args.theorem,)
    reports = [runners[n]() for n in names]
    if len(reports) == 1:
        doc = reports[0].to_dict()
    else:
        doc = {"reports": [r.to_dict() for r in reports], "passed": all(r.passed for r in reports)}
    print(json.dumps(doc, indent=2))
    return EXIT_OK if all(r.passed for r in reports) else EXIT_VERIFICATION


def cmd_figure(args):
    if args.points < 2:
        raise UsageError("--points must be at least 2")
    try:
        rows = fig.figure_curves(args.points)
    except fig.FigureCheckError as exc:
        print(f"sdpi: figure check failed: {exc}", file=sys.stderr)
        return EXIT_VERIFICATION
    text = fig.to_csv(rows) if args.format == "csv" else fig.to_svg(rows)
    io.write(text, args.output)
    return EXIT_OK


COMMANDS = {"divergence": cmd_divergence, "eta": cmd_eta, "verify": cmd_verify, "figure": cmd_figure}


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"sdpi: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ValidationError, ValueError) as exc:
        print(f"sdpi: invalid input: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except OSError as exc:
        print(f"sdpi: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
