"""Command-line front end: ``dnchaos <subcommand> [flags]``.

Exit codes: 0 all checks pass, 1 some check failed, 2 usage or config
error, 3 capacity or approximation error.
"""

import argparse
import json
import sys

from .errors import ApproximationError, CapacityError, ConfigError, InvalidInputError
from .experiments import SuiteConfig, default_configs, run_suite, serialize_reports

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CAPACITY = 0, 1, 2, 3

SUBCOMMANDS = {
    "norms": "norm-table",
    "eigen": "eigen",
    "growth": "growth",
    "criterion": "criterion",
    "periodic": "periodic",
    "shadow": "shadow",
    "normequiv": "norm-equivalence",
    "suite": None,
}

# flag dest -> SuiteConfig key
_FLAG_KEYS = {
    "a": "a",
    "b": "b",
    "n": "n",
    "norm": "norm",
    "p": "p",
    "eps": "epsilon",
    "kmax": "k_max",
    "nmax": "n_max",
    "seed": "seed",
    "poly": "targets",
    "lam": "lambdas",
    "op": "op",
    "count": "count",
    "max_degree": "max_degree",
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise _UsageError(f"{self.prog}: error: {message}")


class _UsageError(Exception):
    pass


def _poly(text):
    try:
        return [float(t) for t in text.split(",") if t.strip() != ""]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad polynomial {text!r}; use comma-separated coefficients") from None


def _common():
    p = _Parser(add_help=False)
    g = p.add_argument_group("common options")
    g.add_argument("--a", type=float, help="left endpoint (default 0)")
    g.add_argument("--b", type=float, help="right endpoint (default 1)")
    g.add_argument("--n", type=int, help="operator order (default 1)")
    g.add_argument("--norm", choices=("sup", "lp"), help="norm mode (default sup)")
    g.add_argument("--p", type=float, help="L_p exponent (default 2)")
    g.add_argument("--eps", type=float, help="epsilon for periodic/shadow")
    g.add_argument("--kmax", type=int, help="largest monomial degree for norms")
    g.add_argument("--nmax", type=int, help="growth horizon")
    g.add_argument("--seed", type=int, help="random seed")
    g.add_argument("--poly", type=_poly, action="append",
                   help="monomial coefficients low-to-high, e.g. 0,0,1 for x^2; repeatable")
    g.add_argument("--lam", action="append", help="eigenvalue such as 3+4i; repeatable")
    g.add_argument("--op", choices=("B", "D"), help="operator for growth (default B)")
    g.add_argument("--count", type=int, help="number of seeded random polynomials")
    g.add_argument("--max-degree", dest="max_degree", type=int, help="degree cap for random polynomials")
    g.add_argument("--config", help="JSON SuiteConfig file (object or list); flags override it")
    g.add_argument("--format", choices=("json", "csv"), default="csv", help="output format (default csv)")
    g.add_argument("--out", default="-", help="output path (default standard output)")
    g.add_argument("--no-timing", action="store_true", help="write duration_ms as 0 for byte-stable output")
    return p


def build_parser():
    parser = _Parser(prog="dnchaos", description="Derivative/Volterra operator chaos toolkit")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    common = _common()
    for name, suite in SUBCOMMANDS.items():
        helptext = f"run the {suite} suite" if suite else "run suites from --config (or the default set)"
        sub.add_parser(name, parents=[common], help=helptext)
    return parser


def _load_config_file(path):
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config {path} is not valid JSON: {exc}") from None
    items = data if isinstance(data, list) else [data]
    if not all(isinstance(d, dict) for d in items):
        raise ConfigError("config file must hold an object or a list of objects")
    return items


def _overrides(args):
    out = {}
    for dest, key in _FLAG_KEYS.items():
        value = getattr(args, dest)
        if value is not None:
            out[key] = value
    return out


def _configs(args):
    overrides = _overrides(args)
    suite = SUBCOMMANDS[args.command]
    bases = _load_config_file(args.config) if args.config else None
    if suite is None:
        if bases is None:
            seed = overrides.get("seed", 0)
            return [
                SuiteConfig.from_dict({**c.to_dict(), **overrides, "seed": seed})
                for c in default_configs(seed=seed)
            ]
        return [SuiteConfig.from_dict({**b, **overrides}) for b in bases]
    if bases is not None and len(bases) != 1:
        raise ConfigError(f"'{args.command}' takes a single config object")
    base = dict(bases[0]) if bases else {}
    base["suite"] = suite
    return [SuiteConfig.from_dict({**base, **overrides})]


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    try:
        configs = _configs(args)
        reports = [run_suite(c) for c in configs]
    except (CapacityError, ApproximationError) as exc:
        print(f"dnchaos: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except (InvalidInputError, ConfigError, TypeError) as exc:
        parser.print_usage(sys.stderr)
        print(f"dnchaos: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    payload = serialize_reports(
        reports, args.format, include_timing=not args.no_timing, single=len(reports) == 1
    )
    if args.out == "-":
        sys.stdout.buffer.write(payload)
        sys.stdout.flush()
    else:
        with open(args.out, "wb") as fh:
            fh.write(payload)
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL


def entry():  # console_scripts hook
    sys.exit(main())


if __name__ == "__main__":
    entry()
