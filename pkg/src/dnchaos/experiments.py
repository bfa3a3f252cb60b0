"""Named suites that reproduce the quantitative content, plus JSON/CSV reports."""

import csv
import io
import json
import math
import time
from dataclasses import asdict, dataclass, field, fields

import numpy as np

from .chaos import (
    NormMode,
    check_chaos_criterion,
    expected_derivative_norm,
    growth_sequence,
    norm_equivalence_ratio,
    orbit_shadow,
    periodic_point_near,
    unboundedness_table,
)
from .errors import ApproximationError, CapacityError, ConfigError, DnChaosError
from .funcspace import Interval, from_monomials, scale, sup_norm
from .operators import derivative_power, eigenfunction_basis, eigenspace_rank

__all__ = [
    "SUITES",
    "SuiteConfig",
    "Row",
    "SuiteReport",
    "run_suite",
    "run_suites",
    "default_configs",
    "serialize_report",
    "serialize_reports",
    "parse_report",
    "recheck_rows",
]

SUITES = ("norm-table", "eigen", "growth", "criterion", "periodic", "shadow", "norm-equivalence")

_DEFAULT_TARGETS = {
    "growth": [[1.0]],
    "periodic": [[1.0]],
    "shadow": [[1.0], [0.0, 1.0]],
}
_DEFAULT_LAMBDAS = [[0.0, 0.0], [1.0, 0.0], [-1.0, 0.0], [0.0, 2.0], [3.0, 4.0]]


@dataclass
class SuiteConfig:
    suite: str
    a: float = 0.0
    b: float = 1.0
    norm: str = "sup"
    p: float = 2.0
    n: int = 1
    k_max: int = 10
    n_max: int = 25
    epsilon: float = 1e-3
    # raw monomial coefficients, lowest degree first
    targets: list = None
    # eigenvalues as [re, im]
    lambdas: list = None
    op: str = "B"
    count: int = 0
    max_degree: int = 15
    seed: int = 0

    def __post_init__(self):
        if self.suite not in SUITES:
            raise ConfigError(f"unknown suite {self.suite!r}; expected one of {', '.join(SUITES)}")
        try:
            self.a, self.b, self.p, self.epsilon = float(self.a), float(self.b), float(self.p), float(self.epsilon)
            self.n, self.k_max, self.n_max = int(self.n), int(self.k_max), int(self.n_max)
            self.count, self.max_degree, self.seed = int(self.count), int(self.max_degree), int(self.seed)
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"bad numeric field: {exc}") from None
        if not self.a < self.b:
            raise ConfigError(f"need a < b, got [{self.a}, {self.b}]")
        if self.norm not in ("sup", "lp"):
            raise ConfigError(f"norm must be 'sup' or 'lp', got {self.norm!r}")
        if self.norm == "lp" and not (1.0 <= self.p < math.inf):
            raise ConfigError(f"need 1 <= p < inf, got {self.p}")
        if not self.epsilon > 0:
            raise ConfigError("epsilon must be positive")
        if self.n < 1:
            raise ConfigError("operator order n must be >= 1")
        if self.n_max < 1:
            raise ConfigError("n_max must be >= 1")
        if self.k_max < self.n:
            raise ConfigError("k_max must be >= n")
        if self.count < 0 or self.max_degree < 0:
            raise ConfigError("count and max_degree must be nonnegative")
        if self.op not in ("B", "D"):
            raise ConfigError(f"op must be 'B' or 'D', got {self.op!r}")
        if self.targets is None:
            self.targets = [list(t) for t in _DEFAULT_TARGETS.get(self.suite, [])]
        if self.lambdas is None:
            self.lambdas = [list(l) for l in _DEFAULT_LAMBDAS]
        try:
            self.targets = [[float(c) for c in t] for t in self.targets]
            self.lambdas = [_lambda_pair(l) for l in self.lambdas]
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"bad target or lambda list: {exc}") from None
        if any(len(t) == 0 for t in self.targets):
            raise ConfigError("empty target coefficient list")

    @classmethod
    def from_dict(cls, data):
        if not isinstance(data, dict):
            raise ConfigError("suite config must be a JSON object")
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ConfigError(f"unknown config keys: {', '.join(sorted(unknown))}")
        if "suite" not in data:
            raise ConfigError("config needs a 'suite' key")
        return cls(**data)

    def to_dict(self):
        return asdict(self)

    @property
    def interval(self):
        return Interval(self.a, self.b)

    @property
    def norm_mode(self):
        return NormMode(self.norm, self.p)


def _lambda_pair(value):
    if isinstance(value, (list, tuple)):
        if len(value) != 2:
            raise ValueError(f"lambda pair must have two entries, got {value!r}")
        return [float(value[0]), float(value[1])]
    if isinstance(value, str):
        value = complex(value.replace("i", "j").replace(" ", ""))
    z = complex(value)
    return [z.real, z.imag]


@dataclass
class Row:
    name: str
    measured: float
    expected: float = None
    bound: float = None
    tolerance: float = 0.0
    extra: dict = field(default_factory=dict)
    passed: bool = None

    def __post_init__(self):
        self.measured = float(self.measured)
        if self.passed is None:
            self.passed = _row_passes(self.measured, self.expected, self.bound, self.tolerance)

    def to_dict(self):
        out = {"name": self.name}
        out.update(self.extra)
        out.update(
            measured=self.measured,
            expected=self.expected,
            bound=self.bound,
            tolerance=self.tolerance,
            **{"pass": self.passed},
        )
        return out


def _row_passes(measured, expected, bound, tolerance):
    if expected is not None:
        return bool(abs(measured - expected) <= tolerance)
    if bound is not None:
        return bool(measured <= bound)
    return False


@dataclass
class SuiteReport:
    suite: str
    config: dict
    rows: list
    data: dict = field(default_factory=dict)
    duration_ms: float = 0.0

    @property
    def passed(self):
        return all(r.passed for r in self.rows)

    def to_dict(self, include_timing=True):
        return {
            "suite": self.suite,
            "config": self.config,
            "rows": [r.to_dict() for r in self.rows],
            "data": self.data,
            "duration_ms": self.duration_ms if include_timing else 0.0,
        }


# ---------------------------------------------------------------- suites


def _random_polys(cfg, interval):
    # random polynomials use the mapped basis ((x - a)/(b - a))^j
    rng = np.random.default_rng(cfg.seed)
    out = []
    for _ in range(cfg.count):
        deg = int(rng.integers(0, cfg.max_degree + 1))
        out.append(from_monomials(interval, rng.uniform(-1.0, 1.0, deg + 1), mapped=True))
    return out


def _targets(cfg, interval):
    return [from_monomials(interval, t) for t in cfg.targets]


def _suite_norm_table(cfg):
    interval, mode = cfg.interval, cfg.norm_mode
    rel = 1e-10 if mode.kind == "sup" else 1e-6
    rows = []
    for k, ratio in unboundedness_table(interval, cfg.n, cfg.k_max, mode):
        expected = expected_derivative_norm(interval, k, cfg.n, mode)
        rows.append(Row("norm_ratio", ratio, expected=expected, tolerance=rel * expected, extra={"k": k}))
    return rows, {}


def _suite_eigen(cfg):
    interval = cfg.interval
    rows = []
    for re, im in cfg.lambdas:
        lam = complex(re, im)
        basis = eigenfunction_basis(interval, lam, cfg.n)
        extra = {"lambda_re": re, "lambda_im": im}
        for i, f in enumerate(basis):
            res = sup_norm(derivative_power(f, cfg.n) - scale(f, lam)) / sup_norm(f)
            rows.append(Row("eigen_residual", res, bound=1e-8, extra={**extra, "index": i}))
        rows.append(Row("eigenspace_rank", eigenspace_rank(basis), expected=cfg.n, tolerance=0.0, extra={**extra, "index": -1}))
    return rows, {}


def _suite_growth(cfg):
    interval, mode = cfg.interval, cfg.norm_mode
    f = _targets(cfg, interval)[0]
    rep = growth_sequence(cfg.op, f, cfg.n_max, mode, order=cfg.n)
    rows = [Row("limsup_estimate", rep.limsup_estimate, bound=1.0)]
    if cfg.op == "D":
        expected = math.ceil((f.degree() + 1) / cfg.n)
        if f.is_zero():
            expected = 1
        if expected <= cfg.n_max:
            measured = rep.zero_from if rep.zero_from is not None else cfg.n_max + 1
            rows.append(Row("zero_from", measured, expected=expected, tolerance=0.0))
    data = {
        "values": list(rep.values),
        "norms": list(rep.norms),
        "alpha_hat": rep.alpha_hat,
        "c_hat": rep.c_hat,
        "zero_from": rep.zero_from,
    }
    return rows, data


def _suite_criterion(cfg):
    interval, mode = cfg.interval, cfg.norm_mode
    polys = _targets(cfg, interval) + _random_polys(cfg, interval)
    rows = []
    for i, f in enumerate(polys):
        cert = check_chaos_criterion(f, cfg.n, max(cfg.n_max, f.degree() + 2), mode)
        extra = {"poly": i, "degree": f.degree()}
        rows.append(Row("right_inverse_residual", cert.right_inverse_residual, bound=cert.tol, extra=extra))
        rows.append(Row("limsup_A", cert.growth_A.limsup_estimate, bound=1.0, extra=extra))
        rows.append(Row("limsup_B", cert.growth_B.limsup_estimate, bound=1.0, extra=extra))
    return rows, {}


def _suite_periodic(cfg):
    interval, mode = cfg.interval, cfg.norm_mode
    y = _targets(cfg, interval)[0]
    cert = periodic_point_near(y, cfg.epsilon, cfg.n, mode)
    extra = {"N": cert.period, "K": cert.truncation}
    distance = mode(cert.point - y)
    rows = [
        Row("nearness_bound", cert.nearness_bound, bound=cfg.epsilon, extra=extra),
        Row("invariance_residual", cert.invariance_residual, bound=cert.tol, extra=extra),
        Row("distance", distance, bound=cert.nearness_bound + 1e-12, extra=extra),
    ]
    return rows, {}


def _suite_shadow(cfg):
    interval, mode = cfg.interval, cfg.norm_mode
    cert = orbit_shadow(_targets(cfg, interval), cfg.epsilon, cfg.n, mode)
    rows = [
        Row("visit_error", err, bound=cfg.epsilon, extra={"target": j, "exponent": e})
        for j, (err, e) in enumerate(zip(cert.visit_errors, cert.exponents))
    ]
    return rows, {"exponents": list(cert.exponents)}


def _suite_norm_equivalence(cfg):
    interval = cfg.interval
    polys = _targets(cfg, interval) + _random_polys(cfg, interval)
    rows = []
    for i, f in enumerate(polys):
        ratio = norm_equivalence_ratio(f, cfg.n)
        rows.append(Row("one_minus_ratio", 1.0 - ratio, bound=1e-12, extra={"poly": i, "ratio": ratio}))
    return rows, {}


_RUNNERS = {
    "norm-table": _suite_norm_table,
    "eigen": _suite_eigen,
    "growth": _suite_growth,
    "criterion": _suite_criterion,
    "periodic": _suite_periodic,
    "shadow": _suite_shadow,
    "norm-equivalence": _suite_norm_equivalence,
}


def run_suite(config):
    if isinstance(config, dict):
        config = SuiteConfig.from_dict(config)
    start = time.perf_counter()
    try:
        rows, data = _RUNNERS[config.suite](config)
    except CapacityError as exc:
        raise CapacityError(f"suite {config.suite}: {exc}") from exc
    except ApproximationError as exc:
        raise ApproximationError(f"suite {config.suite}: {exc}", exc.residual) from exc
    duration = 1e3 * (time.perf_counter() - start)
    return SuiteReport(config.suite, config.to_dict(), rows, data, duration)


def run_suites(configs):
    return [run_suite(c) for c in configs]


def default_configs(seed=0, a=0.0, b=1.0):
    """One configuration per suite, the set run by ``dnchaos suite`` with no config file."""
    base = {"a": a, "b": b, "seed": seed}
    return [
        SuiteConfig("norm-table", k_max=10, **base),
        SuiteConfig("norm-table", norm="lp", p=2.0, n=2, k_max=12, **base),
        SuiteConfig("eigen", n=3, **base),
        SuiteConfig("growth", n_max=20, **base),
        SuiteConfig("criterion", count=10, n=2, **base),
        SuiteConfig("periodic", epsilon=1e-3, **base),
        SuiteConfig("shadow", epsilon=1e-6, **base),
        SuiteConfig("norm-equivalence", count=10, n=2, targets=[[0.0, 1.0]], **base),
    ]


# ---------------------------------------------------------------- serialization


def _fmt_float(x):
    if x is None or (isinstance(x, float) and not math.isfinite(x)):
        return "null"
    text = format(float(x), ".17g")
    if not any(ch in text for ch in ".en"):
        text += ".0"
    return text


def _dump(obj):
    # json.dumps cannot fix the float format, so scalars are rendered here
    if obj is None:
        return "null"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _fmt_float(obj)
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        return "{" + ", ".join(f"{json.dumps(str(k))}: {_dump(v)}" for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(_dump(v) for v in obj) + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _csv_cell(v):
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (float, np.floating)):
        return _fmt_float(v)
    return str(v)


def _csv(reports, include_timing):
    dicts = [r.to_dict(include_timing) for r in reports]
    tail = ["measured", "expected", "bound", "tolerance", "pass"]
    extras = []
    for d in dicts:
        for row in d["rows"]:
            for key in row:
                if key != "name" and key not in tail and key not in extras:
                    extras.append(key)
    header = ["suite", "name"] + extras + tail
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for d in dicts:
        for row in d["rows"]:
            full = {"suite": d["suite"], **row}
            writer.writerow([_csv_cell(full.get(k)) for k in header])
    return buf.getvalue()


def serialize_report(report, fmt="json", include_timing=True):
    """Render one report as UTF-8 bytes (``fmt`` is ``"json"`` or ``"csv"``)."""
    return serialize_reports([report], fmt, include_timing, single=True)


def serialize_reports(reports, fmt="json", include_timing=True, single=False):
    if fmt == "json":
        if single:
            text = _dump(reports[0].to_dict(include_timing))
        else:
            text = _dump([r.to_dict(include_timing) for r in reports])
        return (text + "\n").encode("utf-8")
    if fmt == "csv":
        return _csv(reports, include_timing).encode("utf-8")
    raise ConfigError(f"unknown format {fmt!r}")


def parse_report(data):
    """Inverse of the JSON rendering: bytes/str/dict -> SuiteReport."""
    if isinstance(data, (bytes, str)):
        data = json.loads(data)
    rows = []
    for r in data["rows"]:
        extra = {k: v for k, v in r.items() if k not in ("name", "measured", "expected", "bound", "tolerance", "pass")}
        rows.append(Row(r["name"], r["measured"], r["expected"], r["bound"], r["tolerance"], extra, r["pass"]))
    return SuiteReport(data["suite"], data["config"], rows, data.get("data", {}), data["duration_ms"])


def recheck_rows(report_dict):
    """Independent re-check of every row's pass flag; returns offending row indices."""
    bad = []
    for i, r in enumerate(report_dict["rows"]):
        if r["expected"] is not None:
            ok = abs(r["measured"] - r["expected"]) <= r["tolerance"]
        elif r["bound"] is not None:
            ok = r["measured"] <= r["bound"]
        else:
            ok = False
        if ok != r["pass"]:
            bad.append(i)
    return bad
