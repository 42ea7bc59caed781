"""Exact-versus-asymptotic sweeps and their CSV / JSON encodings."""

from __future__ import annotations

import csv
import io
import json
import logging
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, fields

from . import exact, limits, saddle
from .errors import (
    ConfigError,
    FeasibilityError,
    PartitionArgumentError,
    SaddleNumericalError,
    ValidityError,
)
from .saddle import ModelKind

log = logging.getLogger(__name__)

CSV_HEADER = ("E", "N", "B", "exact_ln", "asym_ln", "limit_ln", "rel_ln_err", "v", "u", "status")
DEFAULT_EXACT_CAP = 5000
DEFAULT_BOUNDED_EXACT_CAP = 2000
EXACT_CAP_ENV = "PARTASYM_EXACT_CAP"

N_RULES = ("explicit", "fixed-u", "sigma-zero")
B_RULES = ("explicit", "fixed-ratio")
FORMATS = ("csv", "json")
LIMITS = ("auto", "none", "mb", "erdos", "total", "szekeres")
STATUSES = ("ok", "infeasible", "validity-error")


def _round_half_up(x: float) -> int:
    return int(math.floor(x + 0.5))


@dataclass(frozen=True)
class SweepSpec:
    """What to sweep.  Validation errors name the offending field."""

    model: ModelKind
    E_values: tuple[int, ...]
    N_rule: str = "explicit"
    N_values: tuple[int, ...] = ()
    u: float | None = None
    B_rule: str | None = None
    B_values: tuple[int, ...] = ()
    B_ratio: float | None = None
    output_format: str = "csv"
    exact_cap: int | None = None
    limit: str = "auto"
    rel_tol: float | None = None
    jobs: int = 1

    def __post_init__(self):
        try:
            object.__setattr__(self, "model", ModelKind.parse(self.model))
        except PartitionArgumentError as exc:
            raise ConfigError("model", str(exc)) from None
        object.__setattr__(self, "E_values", _int_tuple("E_values", self.E_values, minimum=1))
        if not self.E_values:
            raise ConfigError("E_values", "at least one E is required")
        if self.N_rule not in N_RULES:
            raise ConfigError("N_rule", f"expected one of {N_RULES}, got {self.N_rule!r}")
        object.__setattr__(self, "N_values", _int_tuple("N_values", self.N_values, minimum=1))
        if self.N_rule == "explicit" and not self.N_values:
            raise ConfigError("N_values", "explicit N rule needs a list of N")
        if self.N_rule == "fixed-u" and not (isinstance(self.u, (int, float)) and self.u > 0):
            raise ConfigError("u", f"fixed-u rule needs u > 0, got {self.u!r}")
        if self.model is ModelKind.BOUNDED and self.B_rule is None:
            raise ConfigError("B_rule", "bounded model needs a B rule")
        if self.B_rule is not None:
            if self.model is not ModelKind.BOUNDED:
                raise ConfigError("B_rule", "only the bounded model takes B")
            if self.B_rule not in B_RULES:
                raise ConfigError("B_rule", f"expected one of {B_RULES}, got {self.B_rule!r}")
            object.__setattr__(self, "B_values", _int_tuple("B_values", self.B_values, minimum=1))
            if self.B_rule == "explicit" and not self.B_values:
                raise ConfigError("B_values", "explicit B rule needs a list of B")
            if self.B_rule == "fixed-ratio" and not (
                isinstance(self.B_ratio, (int, float)) and self.B_ratio > 0
            ):
                raise ConfigError("B_ratio", f"fixed-ratio rule needs r > 0, got {self.B_ratio!r}")
        if self.output_format not in FORMATS:
            raise ConfigError("output_format", f"expected one of {FORMATS}")
        if self.limit not in LIMITS:
            raise ConfigError("limit", f"expected one of {LIMITS}, got {self.limit!r}")
        if self.exact_cap is not None and (not isinstance(self.exact_cap, int) or self.exact_cap < 0):
            raise ConfigError("exact_cap", f"must be an integer >= 0, got {self.exact_cap!r}")
        if self.rel_tol is not None and not self.rel_tol > 0:
            raise ConfigError("rel_tol", f"must be > 0, got {self.rel_tol!r}")
        if not isinstance(self.jobs, int) or self.jobs < 1:
            raise ConfigError("jobs", f"must be an integer >= 1, got {self.jobs!r}")

    def resolved_exact_cap(self) -> int:
        if self.exact_cap is not None:
            return self.exact_cap
        env = os.environ.get(EXACT_CAP_ENV)
        if env:
            try:
                return int(env)
            except ValueError:
                raise ConfigError(EXACT_CAP_ENV, f"not an integer: {env!r}") from None
        return DEFAULT_BOUNDED_EXACT_CAP if self.model is ModelKind.BOUNDED else DEFAULT_EXACT_CAP

    def cells(self) -> list[tuple[int, int, int | None]]:
        """All (E, N, B) cells, deduplicated and sorted."""
        out = set()
        for E in self.E_values:
            if self.N_rule == "explicit":
                Ns = self.N_values
            elif self.N_rule == "fixed-u":
                Ns = (max(1, _round_half_up(self.u * math.sqrt(E))),)
            else:
                Ns = (limits.CONSTANTS.typical_parts(E),)
            if self.B_rule is None:
                Bs = (None,)
            elif self.B_rule == "explicit":
                Bs = self.B_values
            else:
                Bs = (max(1, _round_half_up(self.B_ratio * math.sqrt(E))),)
            out.update((E, N, B) for N in Ns for B in Bs)
        return sorted(out, key=_cell_key)


def _cell_key(cell):
    E, N, B = cell
    return (E, N, -1 if B is None else B)


def _int_tuple(name, values, minimum):
    if isinstance(values, int):
        values = (values,)
    out = []
    for val in values:
        if isinstance(val, bool) or not isinstance(val, int) or val < minimum:
            raise ConfigError(name, f"expected integers >= {minimum}, got {val!r}")
        out.append(val)
    return tuple(out)


@dataclass(frozen=True)
class ComparisonRow:
    E: int
    N: int
    B: int | None
    exact_ln: float | None
    asym_ln: float | None
    limit_ln: float | None
    rel_ln_err: float | None
    v: float | None
    u: float | None
    status: str


def relative_ln_error(asym_ln, exact_ln):
    if asym_ln is None or exact_ln is None:
        return None
    if not (math.isfinite(asym_ln) and math.isfinite(exact_ln)) or exact_ln == 0.0:
        return None
    return abs(asym_ln - exact_ln) / abs(exact_ln)


def _limit_value(model, limit, E, N, B):
    if limit == "none":
        return None
    if limit == "auto":
        limit = {
            ModelKind.UNRESTRICTED: "mb",
            ModelKind.DISTINCT: "erdos",
            ModelKind.BOUNDED: "szekeres",
        }[model]
    try:
        if limit == "mb":
            return limits.mb_limit_ln_q(E, N)
        if limit == "erdos":
            return limits.erdos_ln_q(E, N)
        if limit == "total":
            return limits.total_distinct_ln_q(E)
        return limits.szekeres_bounded_ln_q(E, N, B)
    except PartitionArgumentError:
        return None


def evaluate_cell(model, E, N, B=None, *, exact_cap=DEFAULT_EXACT_CAP, limit="auto") -> ComparisonRow:
    """One exact-versus-asymptotic comparison."""
    model = ModelKind.parse(model)
    u = N / math.sqrt(E)
    asym_ln = v = None
    try:
        est = saddle.estimate(model, E, N, B)
        asym_ln, v, status = est.ln_value, est.solution.v, "ok"
    except FeasibilityError as exc:
        log.debug("cell (%s, %s, %s) infeasible: %s", E, N, B, exc)
        status = "infeasible"
    except (ValidityError, SaddleNumericalError) as exc:
        log.debug("cell (%s, %s, %s) invalid: %s", E, N, B, exc)
        status = "validity-error"

    exact_ln = None
    if E <= exact_cap:
        exact_ln = exact.count(model.value, E, N, B).ln_value
        if exact_ln == -math.inf:
            status = "infeasible"
    return ComparisonRow(
        E=E, N=N, B=B,
        exact_ln=exact_ln,
        asym_ln=asym_ln,
        limit_ln=_limit_value(model, limit, E, N, B),
        rel_ln_err=relative_ln_error(asym_ln, exact_ln),
        v=v, u=u, status=status,
    )


def _evaluate_star(args):
    model, E, N, B, cap, limit = args
    return evaluate_cell(model, E, N, B, exact_cap=cap, limit=limit)


def run_sweep(spec: SweepSpec) -> list[ComparisonRow]:
    """Evaluate every cell of ``spec``; rows come back ordered by (E, N, B)."""
    cap = spec.resolved_exact_cap()
    tasks = [(spec.model, E, N, B, cap, spec.limit) for E, N, B in spec.cells()]
    if spec.jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=spec.jobs) as pool:
            rows = list(pool.map(_evaluate_star, tasks))
    else:
        rows = [_evaluate_star(t) for t in tasks]
    rows.sort(key=lambda r: _cell_key((r.E, r.N, r.B)))
    if spec.rel_tol is not None:
        bad = [r for r in rows if r.rel_ln_err is not None and r.rel_ln_err > spec.rel_tol]
        if bad:
            log.warning("%d of %d rows exceed rel_tol=%g", len(bad), len(rows), spec.rel_tol)
    return rows


# ---------------------------------------------------------------- encodings


def _fmt_float(x):
    if x is None:
        return ""
    if x == -math.inf:
        return "-inf"
    return format(x, ".17g")


def rows_to_csv(rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for r in rows:
        writer.writerow([
            r.E, r.N, "" if r.B is None else r.B,
            _fmt_float(r.exact_ln), _fmt_float(r.asym_ln), _fmt_float(r.limit_ln),
            _fmt_float(r.rel_ln_err), _fmt_float(r.v), _fmt_float(r.u), r.status,
        ])
    return buf.getvalue()


def _parse_float(s):
    return None if s == "" else float(s)


def rows_from_csv(text) -> list[ComparisonRow]:
    reader = csv.reader(io.StringIO(text))
    header = tuple(next(reader))
    if header != CSV_HEADER:
        raise ConfigError("csv", f"unexpected header {header}")
    rows = []
    for rec in reader:
        E, N, B, *floats, status = rec
        rows.append(ComparisonRow(int(E), int(N), None if B == "" else int(B),
                                  *map(_parse_float, floats), status))
    return rows


def _json_float(x):
    if isinstance(x, float) and math.isinf(x):
        return "-inf" if x < 0 else "inf"
    return x


def rows_to_json(rows) -> str:
    payload = [{k: _json_float(v) for k, v in asdict(r).items()} for r in rows]
    return json.dumps(payload, indent=2) + "\n"


def rows_from_json(text) -> list[ComparisonRow]:
    names = [f.name for f in fields(ComparisonRow)]
    rows = []
    for rec in json.loads(text):
        vals = {k: (float(rec[k]) if isinstance(rec[k], str) and k != "status" else rec[k])
                for k in names}
        rows.append(ComparisonRow(**vals))
    return rows


def emit(rows, output_format="csv") -> str:
    if output_format == "csv":
        return rows_to_csv(rows)
    if output_format == "json":
        return rows_to_json(rows)
    raise ConfigError("output_format", f"expected one of {FORMATS}")


# ---------------------------------------------------------------- config files

_KEY_ALIASES = {
    "E": "E_values", "N": "N_values", "B": "B_values", "r": "B_ratio",
    "format": "output_format", "B_ratio": "B_ratio",
}
_INT_LISTS = {"E_values", "N_values", "B_values"}
_FLOATS = {"u", "B_ratio", "rel_tol"}
_INTS = {"exact_cap", "jobs"}
_STRINGS = {"model", "N_rule", "B_rule", "output_format", "limit"}


def parse_int_list(name, text):
    """``"500,1000"`` or an inclusive range ``"500:2000:500"``."""
    out = []
    for chunk in str(text).split(","):
        chunk = chunk.strip()
        if not chunk:
            continue
        try:
            if ":" in chunk:
                parts = [int(x) for x in chunk.split(":")]
                start, stop = parts[0], parts[1]
                step = parts[2] if len(parts) > 2 else 1
                if step <= 0:
                    raise ValueError
                out.extend(range(start, stop + 1, step))
            else:
                out.append(int(chunk))
        except ValueError:
            raise ConfigError(name, f"bad integer list {text!r}") from None
    return tuple(out)


def spec_kwargs_from_mapping(mapping) -> dict:
    """Translate flat string key/values into :class:`SweepSpec` keyword arguments."""
    known = {f.name for f in fields(SweepSpec)}
    kwargs = {}
    for raw_key, raw in mapping.items():
        key = _KEY_ALIASES.get(raw_key, raw_key)
        if key not in known:
            raise ConfigError(raw_key, "unknown key")
        text = str(raw).strip()
        if key in _INT_LISTS:
            kwargs[key] = parse_int_list(raw_key, text)
        elif key in _FLOATS:
            try:
                kwargs[key] = float(text)
            except ValueError:
                raise ConfigError(raw_key, f"not a number: {text!r}") from None
        elif key in _INTS:
            try:
                kwargs[key] = int(text)
            except ValueError:
                raise ConfigError(raw_key, f"not an integer: {text!r}") from None
        else:
            kwargs[key] = text
    return kwargs


def read_config(path) -> dict:
    """Parse a flat ``key = value`` file; ``#`` starts a comment."""
    mapping = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigError(f"line {lineno}", f"expected key = value, got {line!r}")
            key, value = (s.strip() for s in line.split("=", 1))
            mapping[key] = value
    return mapping
