"""
JSON system configurations and the built-in example set.

Schema (unknown keys are rejected at every level)::

    {
      "name":   optional string,
      "saddle": {"mu", "A", "delta", "B", "C"},
      "center": {"kind": "Q1".."Q4",
                 "affine": {"a1", "b1", "c1", "alpha1", "beta1", "gamma1"}},
      "solver":     optional {x_max, tol_root, tol_match, pos_tol, tol_tangent,
                              dedup_tol, tol_residual},
      "integrator": optional {rel_tol, abs_tol, max_arc_time, event_tol, escape_radius},
      "expected":   optional [[x, y], ...]   regression table
    }
"""

from __future__ import annotations

import dataclasses
import json
import math
from dataclasses import dataclass, field
from importlib import resources

from .fields import AffineMap, CenterKind, CenterSystem, SaddleParams, ValidationError
from .orbits import IntegratorOpts
from .solver import SolverOpts

__all__ = [
    "ParseError",
    "SystemConfig",
    "load_config",
    "config_from_dict",
    "paper_examples",
    "builtin_config",
    "BUILTIN_CASES",
]

BUILTIN_CASES = ("q1", "q2", "q3", "q4")


class ParseError(ValueError):
    """The configuration file is not readable UTF-8 JSON."""


@dataclass(frozen=True)
class SystemConfig:
    saddle: SaddleParams
    center: CenterSystem
    solver: SolverOpts = field(default_factory=SolverOpts)
    integrator: IntegratorOpts = field(default_factory=IntegratorOpts)
    expected: tuple[tuple[float, float], ...] | None = None
    name: str = ""

    def to_dict(self) -> dict:
        out = {}
        if self.name:
            out["name"] = self.name
        out["saddle"] = dataclasses.asdict(self.saddle)
        out["center"] = {"kind": self.center.kind.value,
                         "affine": dataclasses.asdict(self.center.affine)}
        out["solver"] = dataclasses.asdict(self.solver)
        out["integrator"] = dataclasses.asdict(self.integrator)
        if self.expected is not None:
            out["expected"] = [list(p) for p in self.expected]
        return out


def _number(where: str, value) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ValidationError(f"{where}: expected a number, got {value!r}")
    if not math.isfinite(value):
        raise ValidationError(f"{where}: expected a finite number")
    return float(value)


def _record(where: str, raw, names, required=True) -> dict:
    if not isinstance(raw, dict):
        raise ValidationError(f"{where}: expected an object")
    unknown = sorted(set(raw) - set(names))
    if unknown:
        raise ValidationError(f"{where}: unknown key {unknown[0]!r}")
    if required:
        missing = [n for n in names if n not in raw]
        if missing:
            raise ValidationError(f"{where}.{missing[0]}: missing")
    return {n: _number(f"{where}.{n}", raw[n]) for n in names if n in raw}


def _options(where: str, raw, cls):
    names = [f.name for f in dataclasses.fields(cls)]
    values = _record(where, raw, names, required=False)
    try:
        return cls(**values)
    except ValueError as exc:
        raise ValidationError(str(exc)) from None


def config_from_dict(raw) -> SystemConfig:
    """Validate a decoded JSON document.

    Raises
    ------
    ValidationError
        With a message naming the offending field and the constraint.
    """
    if not isinstance(raw, dict):
        raise ValidationError("config: expected a JSON object at top level")
    allowed = {"name", "saddle", "center", "solver", "integrator", "expected"}
    unknown = sorted(set(raw) - allowed)
    if unknown:
        raise ValidationError(f"config: unknown key {unknown[0]!r}")
    if "saddle" not in raw:
        raise ValidationError("saddle: missing")
    saddle = SaddleParams(**_record("saddle", raw["saddle"], ("mu", "A", "delta", "B", "C")))

    if "center" not in raw:
        raise ValidationError("center: missing")
    center_raw = raw["center"]
    if not isinstance(center_raw, dict):
        raise ValidationError("center: expected an object")
    unknown = sorted(set(center_raw) - {"kind", "affine"})
    if unknown:
        raise ValidationError(f"center: unknown key {unknown[0]!r}")
    if "kind" not in center_raw:
        raise ValidationError("center.kind: missing")
    kind = CenterKind.parse(center_raw["kind"])
    if "affine" not in center_raw:
        raise ValidationError("center.affine: missing")
    affine = AffineMap(**_record("center.affine", center_raw["affine"],
                                 ("a1", "b1", "c1", "alpha1", "beta1", "gamma1")))

    solver = _options("solver", raw.get("solver", {}), SolverOpts)
    integrator = _options("integrator", raw.get("integrator", {}), IntegratorOpts)

    expected = None
    if "expected" in raw:
        rows = raw["expected"]
        if not isinstance(rows, list):
            raise ValidationError("expected: expected a list of [x, y] pairs")
        parsed = []
        for k, row in enumerate(rows):
            if not isinstance(row, list) or len(row) != 2:
                raise ValidationError(f"expected[{k}]: expected an [x, y] pair")
            parsed.append((_number(f"expected[{k}][0]", row[0]),
                           _number(f"expected[{k}][1]", row[1])))
        expected = tuple(parsed)

    name = raw.get("name", "")
    if not isinstance(name, str):
        raise ValidationError("name: expected a string")
    return SystemConfig(saddle, CenterSystem(kind, affine), solver, integrator, expected, name)


def _decode(text: str, origin: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{origin}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from None


def load_config(path) -> SystemConfig:
    """Read and validate a JSON configuration file.

    Raises
    ------
    ParseError
        For unreadable or malformed JSON (with line and column).
    ValidationError
        For schema or invariant violations.
    OSError
        If the file cannot be opened.
    """
    with open(path, "rb") as fh:
        data = fh.read()
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise ParseError(f"{path}: not UTF-8 ({exc.reason})") from None
    return config_from_dict(_decode(text, str(path)))


def builtin_config(case: str) -> SystemConfig:
    """A configuration shipped in the package ``examples`` directory."""
    name = case.lower()
    files = resources.files("crossing_cycles") / "examples"
    target = files / f"{name}.json"
    if not target.is_file():
        choices = sorted(p.name[:-5] for p in files.iterdir() if p.name.endswith(".json"))
        raise ValidationError(f"case: unknown case {case!r} (choose from {', '.join(choices)})")
    return config_from_dict(_decode(target.read_text(encoding="utf-8"), f"examples/{name}.json"))


def paper_examples() -> dict[str, SystemConfig]:
    """The four published parameter sets with their printed solution tables."""
    return {case: builtin_config(case) for case in BUILTIN_CASES}
