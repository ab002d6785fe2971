"""Batch driver for the verification suites and table generators.

Subcommands:

* ``verify-killing``: Lie-derivative residuals of every catalogued symmetry
  generator at seeded points, with the radial derivative as a negative
  control.
* ``structure``: exact structure-constant comparison between the matrix
  model of the symmetry algebra and the vector-field realization.
* ``center``: the center lattices (kernel generators, special-unitary
  intersection, and the two fiber-lattice generators) by exact solves.
* ``curvature``: Einstein-condition diagnostics from finite-difference
  Ricci tensors at seeded points.
* ``lattice``: norm-one quaternion enumeration with unitary and
  lattice-stabilization flags, as CSV.
* ``volume-table``: fiber-volume density and tail-volume table over a rho
  grid, as CSV.

Every report embeds the tolerances it used and the full numeric
configuration, so identical configurations (including the seed) produce
byte-identical output.  The process exit status is 0 exactly when every
check in the invoked suite passes; table generators exit 0 when all row
flags verify (lattice) or unconditionally on success (volume-table).

Configuration may come from flags or from a JSON file (``--config``) whose
keys match the flag names with underscores; explicit flags win.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .fields import killing_residuals
from .geometry import ModelParams, einstein_diagnostic, seeded_points
from .liealg import (
    f_generator,
    fprime_generator,
    ker_cap_su,
    kernel_generators,
    kernel_generators_n1,
    structure_check,
)
from .quatarith import QuatParams, c_compatible, is_nonresidue, norm_one_csv
from .volume import volume_table_csv

__all__ = ["RunConfig", "ConfigError", "main"]

KILLING_TOLERANCE = 1e-6
CONTROL_THRESHOLD = 1e-2
EINSTEIN_TOLERANCE = 1e-4

_COMMANDS = (
    "verify-killing",
    "structure",
    "center",
    "curvature",
    "lattice",
    "volume-table",
)

_DEFAULT_FORMAT = {
    "verify-killing": "json",
    "structure": "json",
    "center": "json",
    "curvature": "json",
    "lattice": "csv",
    "volume-table": "csv",
}

_DEFAULTS = {
    "n": 2,
    "c": 1.0,
    "c_exact": None,
    "seed": 42,
    "points": 20,
    "step": 1e-3,
    "bound": 3,
    "out": None,
    "format": None,
    "grid": (1.0, 2.0, 4.0),
    "vd": 1.0,
}


class ConfigError(ValueError):
    """A configuration value failed validation before dispatch."""


@dataclass(frozen=True)
class RunConfig:
    """Validated inputs of one driver invocation."""

    command: str
    n: int = 2
    c: float = 1.0
    c_exact: Optional[Tuple[Fraction, int, int]] = None
    seed: int = 42
    points: int = 20
    step: float = 1e-3
    bound: int = 3
    out: Optional[str] = None
    format: Optional[str] = None
    grid: Tuple[float, ...] = (1.0, 2.0, 4.0)
    vd: float = 1.0

    def __post_init__(self):
        if self.command not in _COMMANDS:
            raise ConfigError(f"unknown command {self.command!r}")
        if not isinstance(self.n, int) or self.n < 1:
            raise ConfigError(f"n must be a positive integer, got {self.n!r}")
        if self.c < 0:
            raise ConfigError(f"c must be nonnegative, got {self.c!r}")
        if not isinstance(self.seed, int) or not 0 <= self.seed < 2**64:
            raise ConfigError(f"seed must be a 64-bit integer, got {self.seed!r}")
        if not isinstance(self.points, int) or self.points < 1:
            raise ConfigError(f"points must be a positive integer, got {self.points!r}")
        if self.step <= 0:
            raise ConfigError(f"step must be positive, got {self.step!r}")
        if not isinstance(self.bound, int) or self.bound < 1:
            raise ConfigError(f"bound must be a positive integer, got {self.bound!r}")
        if self.format is not None and self.format not in ("json", "csv"):
            raise ConfigError(f"format must be json or csv, got {self.format!r}")
        if not self.grid or any(r <= 0 for r in self.grid):
            raise ConfigError("grid must be a nonempty list of positive rho values")
        if self.vd <= 0:
            raise ConfigError(f"vd must be positive, got {self.vd!r}")
        if self.c_exact is not None:
            lam, a, b = self.c_exact
            if lam < 0:
                raise ConfigError("c-exact scaling factor must be nonnegative")
            if not (isinstance(a, int) and a > 0 and isinstance(b, int) and b > 0):
                raise ConfigError("c-exact algebra parameters must be positive integers")

    @property
    def effective_c(self) -> float:
        if self.c_exact is not None:
            lam, a, b = self.c_exact
            return c_compatible(QuatParams(a, b), lam).c
        return self.c

    @property
    def effective_format(self) -> str:
        return self.format or _DEFAULT_FORMAT[self.command]

    def echo(self) -> Dict:
        """The numeric configuration, embedded in every report."""
        payload = {
            "n": self.n,
            "c": self.effective_c,
            "seed": self.seed,
            "points": self.points,
            "step": self.step,
        }
        if self.c_exact is not None:
            lam, a, b = self.c_exact
            payload["c_exact"] = {"lam": str(lam), "a": a, "b": b}
        return payload


def _json_text(report: Dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


# ---------------------------------------------------------------------------
# commands: each returns (output text, exit code)
# ---------------------------------------------------------------------------


def cmd_verify_killing(config: RunConfig) -> Tuple[str, int]:
    params = ModelParams(n=config.n, c=config.effective_c)
    points = seeded_points(params, config.points, seed=config.seed)
    residuals, control = killing_residuals(params, points, step=config.step)
    rows = [
        {
            "generator": label,
            "max_residual": value,
            "tolerance": KILLING_TOLERANCE,
            "pass": value <= KILLING_TOLERANCE,
        }
        for label, value in residuals.items()
    ]
    control_row = {
        "generator": "radial control (d/d rho)",
        "max_residual": control,
        "threshold": CONTROL_THRESHOLD,
        "exceeds_threshold": control > CONTROL_THRESHOLD,
        "pass": False,
    }
    all_pass = all(row["pass"] for row in rows) and control_row["exceeds_threshold"]
    if config.effective_format == "csv":
        lines = ["generator,max_residual,tolerance,pass"]
        for row in rows:
            lines.append(
                f"{row['generator']},{row['max_residual']:.6e},"
                f"{row['tolerance']:.1e},{str(row['pass']).lower()}"
            )
        lines.append(
            f"{control_row['generator']},{control},{CONTROL_THRESHOLD:.1e},false"
        )
        text = "\n".join(lines) + "\n"
    else:
        text = _json_text(
            {
                "command": "verify-killing",
                "config": config.echo(),
                "rows": rows,
                "control": control_row,
                "all_pass": all_pass,
            }
        )
    return text, 0 if all_pass else 1


def cmd_structure(config: RunConfig) -> Tuple[str, int]:
    params = ModelParams(n=config.n, c=config.effective_c)
    report = structure_check(params)
    payload = {
        "command": "structure",
        "n": config.n,
        "pairs_checked": report.pairs_checked,
        "mismatch_count": len(report.mismatches),
        "mismatches": [list(pair) for pair in report.mismatches],
        "all_pass": report.ok,
    }
    return _json_text(payload), 0 if report.ok else 1


def _center_entry(vector, n1: bool) -> Dict:
    return {"human": vector.human(n1=n1), "coordinates": vector.serialize()}


def cmd_center(config: RunConfig) -> Tuple[str, int]:
    n = config.n
    positive_c = config.effective_c > 0
    n1 = n == 1
    if n1:
        kernel = [kernel_generators_n1()]
        ker_cap = None
        fprime = None
    else:
        kernel = list(kernel_generators(n))
        ker_cap = ker_cap_su(n)
        fprime = fprime_generator(n, positive_c=positive_c)
    f_vec = f_generator(n, positive_c=positive_c)
    payload = {
        "command": "center",
        "n": n,
        "c_positive": positive_c,
        "kernel": [_center_entry(v, n1) for v in kernel],
        "ker_cap_su": None if ker_cap is None else _center_entry(ker_cap, n1),
        "F": f_vec.human(n1=n1),
        "F_coordinates": f_vec.serialize(),
        "Fprime": None if fprime is None else fprime.human(n1=n1),
        "Fprime_coordinates": None if fprime is None else fprime.serialize(),
    }
    return _json_text(payload), 0


def cmd_curvature(config: RunConfig) -> Tuple[str, int]:
    params = ModelParams(n=config.n, c=config.effective_c)
    points = seeded_points(params, config.points, seed=config.seed)
    rows = []
    lambdas = []
    max_residual = 0.0
    for p in points:
        lam, residual = einstein_diagnostic(p, params, step=config.step)
        rows.append({"lambda": lam, "residual": residual})
        lambdas.append(lam)
        max_residual = max(max_residual, residual)
    mean_lambda = sum(lambdas) / len(lambdas)
    spread = (max(lambdas) - min(lambdas)) / abs(mean_lambda) if mean_lambda else float("inf")
    all_pass = (
        max_residual <= EINSTEIN_TOLERANCE
        and mean_lambda < 0
        and spread <= EINSTEIN_TOLERANCE
    )
    payload = {
        "command": "curvature",
        "config": config.echo(),
        "tolerance": EINSTEIN_TOLERANCE,
        "rows": rows,
        "lambda_mean": mean_lambda,
        "lambda_spread_relative": spread,
        "max_residual": max_residual,
        "all_pass": all_pass,
    }
    return _json_text(payload), 0 if all_pass else 1


def cmd_lattice(config: RunConfig) -> Tuple[str, int]:
    lam, a, b = config.c_exact if config.c_exact is not None else (Fraction(1), 2, 3)
    warning = None
    try:
        if not is_nonresidue(a, b):
            warning = (
                f"warning: is_nonresidue({a}, {b}) = false "
                "(division-algebra hypothesis unmet); enumeration still runs"
            )
    except ValueError as exc:
        warning = f"warning: {exc} (division-algebra hypothesis unmet); enumeration still runs"
    if warning is not None:
        print(warning, file=sys.stderr)
    csv_text = norm_one_csv(QuatParams(a, b), config.bound)
    all_pass = "false" not in csv_text
    if config.effective_format == "json":
        rows = []
        lines = csv_text.strip().split("\n")
        header = lines[0].split(",")
        for line in lines[1:]:
            values = line.split(",")
            row = dict(zip(header, values))
            rows.append(
                {
                    "q0": int(row["q0"]),
                    "q1": int(row["q1"]),
                    "q2": int(row["q2"]),
                    "q3": int(row["q3"]),
                    "norm": int(row["norm"]),
                    "su11_ok": row["su11_ok"] == "true",
                    "preserves_gamma2": row["preserves_gamma2"] == "true",
                }
            )
        text = _json_text(
            {
                "command": "lattice",
                "a": a,
                "b": b,
                "bound": config.bound,
                "nonresidue_warning": warning,
                "rows": rows,
                "all_pass": all_pass,
            }
        )
    else:
        text = csv_text
    return text, 0 if all_pass else 1


def cmd_volume_table(config: RunConfig) -> Tuple[str, int]:
    params = ModelParams(n=config.n, c=config.effective_c)
    csv_text = volume_table_csv(config.grid, params, config.vd)
    if config.effective_format == "json":
        lines = csv_text.strip().split("\n")
        header = lines[0].split(",")
        rows = [
            {key: float(value) for key, value in zip(header, line.split(","))}
            for line in lines[1:]
        ]
        text = _json_text(
            {
                "command": "volume-table",
                "config": config.echo(),
                "vd": config.vd,
                "rows": rows,
            }
        )
    else:
        text = csv_text
    return text, 0


_DISPATCH = {
    "verify-killing": cmd_verify_killing,
    "structure": cmd_structure,
    "center": cmd_center,
    "curvature": cmd_curvature,
    "lattice": cmd_lattice,
    "volume-table": cmd_volume_table,
}

_JSON_ONLY = {"structure", "center", "curvature"}


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------


def _parse_c_exact(text: str) -> Tuple[Fraction, int, int]:
    parts = text.split(":")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(
            "expected lam:a:b, e.g. 1:2:3 or 1/2:3:7"
        )
    try:
        lam = Fraction(parts[0])
        a = int(parts[1])
        b = int(parts[2])
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"bad lam:a:b value: {exc}") from exc
    return lam, a, b


def _parse_grid(text: str) -> Tuple[float, ...]:
    try:
        return tuple(float(part) for part in text.split(",") if part.strip())
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad rho grid: {exc}") from exc


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="oneloop",
        description="Verification suites and tables for the one-loop "
        "deformed metric family and its arithmetic lattices.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in _COMMANDS:
        cmd = sub.add_parser(name)
        cmd.add_argument("--n", type=int, default=None, help="complex dimension parameter")
        cmd.add_argument("--c", type=float, default=None, help="deformation parameter")
        cmd.add_argument(
            "--c-exact",
            type=_parse_c_exact,
            default=None,
            metavar="LAM:A:B",
            help="exact deformation: c solves 4*pi*c = LAM*sqrt(A*B)/2; "
            "also selects the quaternion algebra for 'lattice'",
        )
        cmd.add_argument("--seed", type=int, default=None, help="PRNG seed")
        cmd.add_argument("--points", type=int, default=None, help="seeded point count")
        cmd.add_argument("--step", type=float, default=None, help="finite-difference step")
        cmd.add_argument("--bound", type=int, default=None, help="enumeration bound")
        cmd.add_argument("--out", type=str, default=None, help="also write output to this path")
        cmd.add_argument("--format", choices=("json", "csv"), default=None)
        cmd.add_argument(
            "--grid", type=_parse_grid, default=None, metavar="R1,R2,...",
            help="rho grid for volume-table",
        )
        cmd.add_argument("--vd", type=float, default=None, help="fundamental-domain volume")
        cmd.add_argument(
            "--config", type=str, default=None,
            help="JSON file with the same keys as the flags (flags win)",
        )
    return parser


def _load_config_file(path: str) -> Dict:
    with open(path, "r", encoding="utf-8") as handle:
        data = json.load(handle)
    if not isinstance(data, dict):
        raise ConfigError("config file must contain a JSON object")
    if "c_exact" in data and data["c_exact"] is not None:
        raw = data["c_exact"]
        if isinstance(raw, str):
            data["c_exact"] = _parse_c_exact(raw)
        else:
            data["c_exact"] = (Fraction(raw["lam"]), int(raw["a"]), int(raw["b"]))
    if "grid" in data and data["grid"] is not None:
        data["grid"] = tuple(float(x) for x in data["grid"])
    return data


def build_config(argv: Sequence[str]) -> RunConfig:
    args = _build_parser().parse_args(argv)
    file_values: Dict = {}
    if args.config is not None:
        file_values = _load_config_file(args.config)
    merged = {}
    for key, default in _DEFAULTS.items():
        explicit = getattr(args, key)
        if explicit is not None:
            merged[key] = explicit
        elif key in file_values and file_values[key] is not None:
            merged[key] = file_values[key]
        else:
            merged[key] = default
    if isinstance(merged.get("grid"), list):
        merged["grid"] = tuple(float(x) for x in merged["grid"])
    config = RunConfig(command=args.command, **merged)
    if config.command in _JSON_ONLY and config.format == "csv":
        raise ConfigError(f"command {config.command!r} reports JSON only")
    return config


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        config = build_config(list(sys.argv[1:] if argv is None else argv))
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    try:
        text, code = _DISPATCH[config.command](config)
    except (ValueError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(text)
    if config.out is not None:
        with open(config.out, "w", encoding="utf-8") as handle:
            handle.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
