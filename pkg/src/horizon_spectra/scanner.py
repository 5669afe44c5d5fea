"""Deterministic parameter-grid scanning with machine-readable output.

A scan walks the Cartesian product of parameter value lists in ascending
lexicographic order of (Lambda, m, q, a) and evaluates one ScanRow per
point: root structure, closed-form stability spectrum at the cosmological
radius, surface area, charge and inequality margin, plus the mass-window
and lower-mass-bound verdicts.  Rows for points without the four-root
structure keep only the parameter and verdict columns and carry a reason
code.  Output is byte-identical across repeated and parallel runs: workers
may compute rows in any order, but assembly follows the grid order and
floats serialize with 17 significant digits.

For rotating points the spectrum, window and lower-bound columns evaluate
the non-rotating closed forms at the tracked cosmological radius with the
bare charge parameter; they are leading-order values in the rotation,
whereas the area, charge and margin columns are exact at any rotation.
"""

import io
import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from . import areacharge
from .errors import NotAdmissible, CHARGE_TOO_LARGE, ORDERING_VIOLATION
from .params import Parameters
from .roots import isolate_roots, mass_window, mass_hypothesis_holds
from .spectrum import index_and_flags

COLUMNS = (
    "Lambda",
    "m",
    "q",
    "a",
    "admissible",
    "r_mm",
    "r_minus",
    "r_plus",
    "r_c",
    "lambda1",
    "lambda2",
    "index",
    "degenerate",
    "stable_symmetrized",
    "area",
    "charge",
    "ac_margin",
    "mass_window_ok",
    "mass_hypothesis_ok",
    "reason",
)

_CONFIG_KEYS = ("lambda", "m", "q", "a", "out", "format", "jobs", "strict", "grid_n")


@dataclass(frozen=True)
class ScanRow:
    """One evaluated grid point in the fixed column order."""

    Lambda: float
    m: float
    q: float
    a: float
    admissible: bool
    r_mm: object = None
    r_minus: object = None
    r_plus: object = None
    r_c: object = None
    lambda1: object = None
    lambda2: object = None
    index: object = None
    degenerate: object = None
    stable_symmetrized: object = None
    area: object = None
    charge: object = None
    ac_margin: object = None
    mass_window_ok: bool = False
    mass_hypothesis_ok: bool = False
    reason: str = ""

    def as_dict(self):
        return {name: getattr(self, name) for name in COLUMNS}


@dataclass(frozen=True)
class ScanConfig:
    """Validated scan inputs: value lists, output and execution options."""

    lam_values: tuple
    m_values: tuple
    q_values: tuple
    a_values: tuple
    out: object = None
    fmt: str = "csv"
    jobs: int = 1
    strict: bool = False
    grid_n: int = 256  # reserved for solver-backed commands; scan uses closed forms

    def __post_init__(self):
        for name, vals, low_ok in (
            ("lambda", self.lam_values, False),
            ("m", self.m_values, False),
            ("q", self.q_values, True),
            ("a", self.a_values, True),
        ):
            if len(vals) < 1:
                raise ValueError("value list for %s must not be empty" % name)
            for v in vals:
                if not math.isfinite(v):
                    raise ValueError("non-finite %s value %r" % (name, v))
                if v < 0 or (v == 0 and not low_ok):
                    raise ValueError("invalid %s value %r" % (name, v))
        if self.fmt not in ("csv", "json"):
            raise ValueError("format must be csv or json, got %r" % (self.fmt,))
        if self.jobs < 1:
            raise ValueError("jobs must be at least 1")
        if self.grid_n < 16:
            raise ValueError("grid_n must be at least 16")

    @classmethod
    def from_mapping(cls, mapping) -> "ScanConfig":
        """Build a config from a flat key/value mapping, rejecting unknown keys."""
        unknown = sorted(set(mapping) - set(_CONFIG_KEYS))
        if unknown:
            raise ValueError("unknown config keys: %s" % ", ".join(unknown))
        def values(key, default=None):
            if key not in mapping or mapping[key] is None:
                if default is None:
                    raise ValueError("missing required key %r" % key)
                return default
            return tuple(as_value_list(mapping[key]))

        return cls(
            lam_values=values("lambda"),
            m_values=values("m"),
            q_values=values("q", (0.0,)),
            a_values=values("a", (0.0,)),
            out=mapping.get("out"),
            fmt=str(mapping.get("format", "csv")),
            jobs=int(mapping.get("jobs", 1)),
            strict=bool(mapping.get("strict", False)),
            grid_n=int(mapping.get("grid_n", 256)),
        )


def as_value_list(raw):
    """Coerce a config value into a list of floats.

    Accepts a number, a list/tuple of numbers, a comma-separated string,
    or a range string low:high:count (count evenly spaced values, ends
    included).
    """
    if isinstance(raw, (int, float)) and not isinstance(raw, bool):
        return [float(raw)]
    if isinstance(raw, (list, tuple)):
        return [float(v) for v in raw]
    if isinstance(raw, str):
        text = raw.strip()
        if ":" in text:
            parts = text.split(":")
            if len(parts) != 3:
                raise ValueError("range must be low:high:count, got %r" % raw)
            low, high, num = float(parts[0]), float(parts[1]), int(parts[2])
            if num < 1:
                raise ValueError("range count must be at least 1")
            if num == 1:
                return [low]
            step = (high - low) / (num - 1)
            return [low + step * i for i in range(num)]
        return [float(v) for v in text.split(",") if v.strip() != ""]
    raise ValueError("cannot interpret %r as a value list" % (raw,))


def parse_config_text(text: str) -> dict:
    """Parse flat key = value configuration text.

    Lines hold one assignment each; # starts a comment.  Values may be
    numbers, true/false, quoted strings, bracketed arrays of numbers,
    comma-separated numbers, or low:high:count range strings.
    """
    out = {}
    for lineno, raw_line in enumerate(text.splitlines(), start=1):
        line = raw_line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError("line %d: expected key = value" % lineno)
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if not key:
            raise ValueError("line %d: empty key" % lineno)
        out[key] = _parse_config_value(value, lineno)
    return out


def _parse_config_value(value: str, lineno: int):
    if value.startswith("[") and value.endswith("]"):
        inner = value[1:-1].strip()
        if not inner:
            return []
        return [float(part.strip()) for part in inner.split(",")]
    if value.startswith('"') and value.endswith('"') and len(value) >= 2:
        return value[1:-1]
    if value.lower() == "true":
        return True
    if value.lower() == "false":
        return False
    try:
        return float(value)
    except ValueError:
        return value  # bare strings: paths, formats, ranges, comma lists


def scan_point(lam: float, m: float, q: float, a: float) -> ScanRow:
    """Evaluate one parameter point into a ScanRow."""
    try:
        window = mass_window(lam, q)
        window_ok = window.contains(m)
    except NotAdmissible:
        window = None
        window_ok = False
    hypothesis_ok, _ = mass_hypothesis_holds(lam, q, m)

    try:
        horizon_set = isolate_roots(Parameters(lam=lam, m=m, q=q, a=a))
    except NotAdmissible as exc:
        reason = CHARGE_TOO_LARGE if window is None else exc.reason
        return ScanRow(
            Lambda=lam, m=m, q=q, a=a,
            admissible=False,
            mass_window_ok=window_ok,
            mass_hypothesis_ok=hypothesis_ok,
            reason=reason,
        )

    if not horizon_set.admissible:
        # zero-charge static boundary: roots exist but the charged ordering fails
        return ScanRow(
            Lambda=lam, m=m, q=q, a=a,
            admissible=False,
            mass_window_ok=window_ok,
            mass_hypothesis_ok=hypothesis_ok,
            reason=ORDERING_VIOLATION,
        )

    r_c = horizon_set.r_c
    report = index_and_flags(r_c, lam, q)
    xi = 1.0 + lam * a * a / 3.0
    area = 4.0 * math.pi * (r_c * r_c + a * a) / xi
    charge = q / xi
    margin = areacharge.check(lam, area, charge).margin
    return ScanRow(
        Lambda=lam, m=m, q=q, a=a,
        admissible=True,
        r_mm=horizon_set.r_mm,
        r_minus=horizon_set.r_minus,
        r_plus=horizon_set.r_plus,
        r_c=r_c,
        lambda1=report.lambda1,
        lambda2=report.lambda2,
        index=report.index,
        degenerate=report.degenerate,
        stable_symmetrized=report.stable_symmetrized,
        area=area,
        charge=charge,
        ac_margin=margin,
        mass_window_ok=window_ok,
        mass_hypothesis_ok=hypothesis_ok,
        reason="",
    )


def grid_points(config: ScanConfig):
    """Grid in ascending lexicographic (Lambda, m, q, a) order, deduplicated."""
    lams = sorted(set(config.lam_values))
    ms = sorted(set(config.m_values))
    qs = sorted(set(config.q_values))
    azs = sorted(set(config.a_values))
    return [
        (lam, m, q, a)
        for lam in lams
        for m in ms
        for q in qs
        for a in azs
    ]


def run_scan(config: ScanConfig):
    """Evaluate the grid, preserving row order regardless of parallelism."""
    points = grid_points(config)
    if config.jobs == 1:
        return [scan_point(*point) for point in points]
    with ThreadPoolExecutor(max_workers=config.jobs) as pool:
        return list(pool.map(lambda point: scan_point(*point), points))


def format_value(value) -> str:
    """Serialize one CSV cell: shortest exact float form, lowercase booleans."""
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return "%.17g" % value
    return str(value)


def write_csv(rows, stream) -> None:
    stream.write(",".join(COLUMNS) + "\n")
    for row in rows:
        data = row.as_dict()
        stream.write(",".join(format_value(data[name]) for name in COLUMNS) + "\n")


def write_json(rows, stream) -> None:
    payload = {"rows": [row.as_dict() for row in rows]}
    stream.write(json.dumps(payload, indent=2))
    stream.write("\n")


def render(rows, fmt: str) -> str:
    buf = io.StringIO()
    if fmt == "csv":
        write_csv(rows, buf)
    elif fmt == "json":
        write_json(rows, buf)
    else:
        raise ValueError("format must be csv or json")
    return buf.getvalue()
