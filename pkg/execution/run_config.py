# execution/run_config.py
"""
Run configuration: per-command parameter tables, JSON config files and
flag overrides.

Precedence for parameters: documented default < config file < flag.
Output directory: flag > CLOCKRG_OUTPUT_DIR > config file > default.
"""

import argparse
import itertools
import json
import logging
import math
import os
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, Iterator, List, Optional, Sequence, Tuple

from config import settings
from core.errors import ConfigError, UsageError
from execution.execution_config import (
    DEFAULT_OUTPUT_DIR,
    DEFAULT_WORKERS,
    MAX_SWEEP_POINTS,
    OUTPUT_DIR_ENV,
)
from strategy.exponents import REGIMES
from strategy.rg_flow import validate_dimension, validate_phase

logger = logging.getLogger(__name__)


# ------------------------
# Parameter tables
# ------------------------
@dataclass(frozen=True)
class ParamSpec:
    name: str
    kind: str                  # float | int | str | bool | floats
    default: Any
    help: str = ""
    check: Optional[Callable[[Any], Any]] = None
    optional: bool = False     # None is an accepted value


def _choice(options: Sequence[str], what: str) -> Callable[[Any], Any]:
    def check(value):
        if value not in options:
            raise ConfigError(f"unknown {what}", **{what: value, "allowed": list(options)})
        return value
    return check


def _positive(value):
    if not value > 0:
        raise ConfigError("value must be positive", value=value)
    return value


_D = ParamSpec("d", "float", settings.DEFAULT_D, "spatial dimension, 2 or (2, 4]", validate_dimension)
_PHASE = ParamSpec("phase", "str", settings.DEFAULT_PHASE, "PT phase: symmetric | broken", validate_phase)

COMMAND_PARAMETERS: Dict[str, Tuple[ParamSpec, ...]] = {
    "toy-z": (
        ParamSpec("beta", "float", 1.0, "inverse temperature"),
        ParamSpec("J", "float", 1.0, "cosine coupling"),
        ParamSpec("K", "float", 0.5, "imaginary sine coupling"),
        ParamSpec("n_points", "int", settings.TOY_QUADRATURE_POINTS, "quadrature nodes"),
    ),
    "qm-spectrum": (
        ParamSpec("eps", "float", 1.0, "oscillator energy"),
        ParamSpec("J", "float", 2.0, "Hermitian clock coupling"),
        ParamSpec("K", "float", 1.0, "anti-Hermitian clock coupling"),
        ParamSpec("N", "int", settings.DEFAULT_CLOCK_ORDER, "clock order"),
        ParamSpec("cutoff", "int", 64, "Fock-space dimension"),
        ParamSpec("tol_imag", "float", None, "imaginary-part tolerance (default 1e-8 * spectral radius)",
                  _positive, optional=True),
        ParamSpec("transform", "bool", False, "diagonalize the similarity-transformed matrix"),
    ),
    "flow": (
        _D,
        _PHASE,
        ParamSpec("kappa", "float", 0.25, "initial stiffness"),
        ParamSpec("y", "float", 0.0, "initial Hermitian fugacity"),
        ParamSpec("ytilde", "float", 0.7, "initial clock fugacity"),
        ParamSpec("lmax", "float", 20.0, "flow length", _positive),
        ParamSpec("rel_tol", "float", settings.REL_TOL, "integrator relative tolerance", _positive),
        ParamSpec("abs_tol", "float", settings.ABS_TOL, "integrator absolute tolerance", _positive),
        ParamSpec("max_step", "float", settings.MAX_STEP, "largest integrator step", _positive),
    ),
    "fixed-points": (_D, _PHASE),
    "exponents": (
        _D,
        ParamSpec("regime", "str", "pt_broken", "hermitian_xy | pt_symmetric_clock | pt_broken",
                  _choice(REGIMES, "regime")),
        ParamSpec("y_star", "float", None, "mixed-line point for d = 2", optional=True),
    ),
    "walking-flow": (
        ParamSpec("X", "float", -0.1, "initial X = 2 - pi kappa"),
        ParamSpec("Y", "float", 0.05, "initial Y = 2 y / sqrt(pi)"),
        ParamSpec("Ytilde", "float", 0.05, "initial Ytilde = 2 y_tilde / sqrt(pi)"),
        ParamSpec("lmax", "float", 200.0, "flow length", _positive),
        ParamSpec("approximate", "bool", True, "use the truncated system"),
        ParamSpec("escape", "float", settings.WALKING_ESCAPE_RADIUS,
                  "stop once max(|X|, |Y|, |Ytilde|) exceeds this", _positive),
    ),
    "xi-scan": (
        ParamSpec("k_min", "float", settings.XI_DEFAULT_GRID[0], "smallest K - K_c", _positive),
        ParamSpec("k_max", "float", settings.XI_DEFAULT_GRID[1], "largest K - K_c", _positive),
        ParamSpec("n_k", "int", settings.XI_DEFAULT_GRID[2], "number of log-spaced K values", _positive),
        ParamSpec("threshold", "float", settings.WALKING_THRESHOLD, "|X| defining l*", _positive),
        ParamSpec("b", "float", settings.WALKING_B, "c^2 = b (K - K_c)", _positive),
        ParamSpec("x_init", "float", settings.WALKING_X_INIT, "start at X = -x_init", _positive),
        ParamSpec("sensitivity", "bool", False, "rerun at a fraction of the threshold and report the slope change"),
    ),
    "collision-scan": (
        ParamSpec("d_values", "floats", [2.1, 2.05, 2.02, 2.01, 2.005], "comma-separated d grid"),
    ),
}

COMMANDS = tuple(COMMAND_PARAMETERS) + ("sweep",)
AGGREGATIONS = ("none", "table")

SWEEP_PARAMETERS = ("point_command", "axes", "aggregation", "base")
CONFIG_KEYS = ("command", "parameters", "output_dir", "seed", "workers", "gnuplot", "log_level")


# ------------------------
# Value coercion
# ------------------------
def _coerce(spec: ParamSpec, raw: Any) -> Any:
    if raw is None:
        if spec.optional:
            return None
        raise ConfigError("parameter may not be null", key=spec.name)
    try:
        if spec.kind == "float":
            if isinstance(raw, bool):
                raise ValueError(raw)
            value = float(raw)
            if not math.isfinite(value):
                raise ValueError(raw)
        elif spec.kind == "int":
            if isinstance(raw, bool) or (isinstance(raw, float) and not raw.is_integer()):
                raise ValueError(raw)
            value = int(raw)
        elif spec.kind == "bool":
            value = _coerce_bool(raw)
        elif spec.kind == "floats":
            items = raw.split(",") if isinstance(raw, str) else list(raw)
            value = [float(v) for v in items]
            if not value:
                raise ValueError(raw)
        else:
            value = str(raw)
    except (TypeError, ValueError):
        raise ConfigError("invalid value for parameter", key=spec.name, value=raw, kind=spec.kind)
    return spec.check(value) if spec.check is not None else value


def _coerce_bool(raw: Any) -> bool:
    if isinstance(raw, bool):
        return raw
    text = str(raw).strip().lower()
    if text in ("1", "true", "yes", "on"):
        return True
    if text in ("0", "false", "no", "off"):
        return False
    raise ValueError(raw)


def parameter_spec(command: str, name: str) -> ParamSpec:
    for spec in COMMAND_PARAMETERS[command]:
        if spec.name == name:
            return spec
    raise ConfigError("unknown parameter", key=name, command=command)


def resolve_parameters(command: str, values: Dict[str, Any]) -> Dict[str, Any]:
    """Defaults overlaid with `values`, every entry validated."""
    if command not in COMMAND_PARAMETERS:
        raise ConfigError("unknown command", command=command)
    known = {spec.name for spec in COMMAND_PARAMETERS[command]}
    for key in sorted(values):
        if key not in known:
            raise ConfigError("unknown parameter", key=key, command=command)

    out = {}
    for spec in COMMAND_PARAMETERS[command]:
        out[spec.name] = _coerce(spec, values[spec.name]) if spec.name in values else spec.default
    return out


# ------------------------
# Sweep spec
# ------------------------
@dataclass(frozen=True)
class SweepSpec:
    point_command: str
    axes: Tuple[Tuple[str, Tuple[Any, ...]], ...]   # (parameter, values), first axis varies slowest
    aggregation: str = "table"                      # none | table
    base: Dict[str, Any] = field(default_factory=dict)

    @property
    def size(self) -> int:
        return math.prod(len(values) for _, values in self.axes)

    @property
    def axis_names(self) -> List[str]:
        return [name for name, _ in self.axes]

    def points(self) -> Iterator[Dict[str, Any]]:
        """Parameter dicts in grid order."""
        names = self.axis_names
        for combo in itertools.product(*(values for _, values in self.axes)):
            point = dict(self.base)
            point.update(zip(names, combo))
            yield point

    def to_dict(self) -> dict:
        return {
            "point_command": self.point_command,
            "axes": [{"name": name, "values": list(values)} for name, values in self.axes],
            "aggregation": self.aggregation,
            "base": dict(self.base),
        }


def _parse_axis(raw: Any) -> Tuple[str, List[Any]]:
    """'J=1,2' from flags or {"name": "J", "values": [1, 2]} from a file."""
    if isinstance(raw, str):
        name, sep, values = raw.partition("=")
        if not sep or not name.strip():
            raise UsageError("axis must look like NAME=v1,v2,...", axis=raw)
        return name.strip(), [v.strip() for v in values.split(",") if v.strip()]
    if isinstance(raw, dict):
        extra = set(raw) - {"name", "values"}
        if extra:
            raise ConfigError("unknown axis key", key=sorted(extra)[0])
        if "name" not in raw or "values" not in raw:
            raise UsageError("axis needs name and values", axis=raw)
        return str(raw["name"]), list(raw["values"])
    raise ConfigError("invalid axis", axis=raw)


def build_sweep_spec(values: Dict[str, Any]) -> SweepSpec:
    for key in sorted(values):
        if key not in SWEEP_PARAMETERS:
            raise ConfigError("unknown parameter", key=key, command="sweep")
    if "point_command" not in values:
        raise UsageError("sweep needs a point command")
    command = values["point_command"]
    if command not in COMMAND_PARAMETERS:
        raise ConfigError("sweep point command must be a single-point command", key="point_command",
                          point_command=command)

    axes_raw = values.get("axes") or []
    if not axes_raw:
        raise UsageError("sweep needs at least one axis")

    base = resolve_parameters(command, dict(values.get("base") or {}))
    axes = []
    seen = set()
    for raw in axes_raw:
        name, items = _parse_axis(raw)
        if name in seen:
            raise ConfigError("axis repeated", key=name)
        seen.add(name)
        spec = parameter_spec(command, name)
        if not items:
            raise UsageError("axis has no values", axis=name)
        axes.append((name, tuple(_coerce(spec, v) for v in items)))

    aggregation = values.get("aggregation", "table")
    if aggregation not in AGGREGATIONS:
        raise ConfigError("unknown aggregation", key="aggregation", aggregation=aggregation)

    sweep = SweepSpec(point_command=command, axes=tuple(axes), aggregation=aggregation, base=base)
    if sweep.size > MAX_SWEEP_POINTS:
        raise ConfigError("sweep grid too large", size=sweep.size, max_points=MAX_SWEEP_POINTS)
    return sweep


# ------------------------
# Run config
# ------------------------
@dataclass(frozen=True)
class RunConfig:
    command: str
    parameters: Dict[str, Any]
    output_dir: str
    seed: int = 0                   # reserved for randomized initial conditions
    workers: int = DEFAULT_WORKERS
    gnuplot: bool = False
    log_level: str = "WARNING"
    sweep: Optional[SweepSpec] = None

    def to_dict(self) -> dict:
        return {
            "command": self.command,
            "parameters": self.sweep.to_dict() if self.sweep is not None else dict(self.parameters),
            "output_dir": self.output_dir,
            "seed": self.seed,
            "workers": self.workers,
            "gnuplot": self.gnuplot,
        }


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--config", default=None, help="JSON run configuration")
    common.add_argument("--output-dir", dest="output_dir", default=None, help="artifact directory")
    common.add_argument("--workers", type=int, default=None, help="parallel workers for sweeps and scans")
    common.add_argument("--seed", type=int, default=None, help="seed for randomized initial conditions")
    common.add_argument("--gnuplot", action="store_true", default=None, help="also write <command>.gp")
    common.add_argument("--log-level", dest="log_level", default=None, help="DEBUG | INFO | WARNING | ERROR")

    parser = _Parser(prog="clockrg", description="RG engine for the non-Hermitian clock-anisotropic XY model.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    for command, specs in COMMAND_PARAMETERS.items():
        p = sub.add_parser(command, parents=[common])
        for spec in specs:
            p.add_argument(f"--{spec.name}", dest=f"param__{spec.name}", default=argparse.SUPPRESS,
                           help=f"{spec.help} (default: {spec.default})")

    p = sub.add_parser("sweep", parents=[common])
    p.add_argument("--point-command", dest="param__point_command", default=argparse.SUPPRESS,
                   help="command evaluated at every grid point")
    p.add_argument("--axis", dest="param__axes", action="append", default=argparse.SUPPRESS,
                   help="NAME=v1,v2,... (repeatable, first axis varies slowest)")
    p.add_argument("--aggregation", dest="param__aggregation", default=argparse.SUPPRESS,
                   help="table | none")
    p.add_argument("--param", dest="param__base", action="append", default=argparse.SUPPRESS,
                   help="fixed KEY=VALUE for every point (repeatable)")
    return parser


def _load_file(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise UsageError("cannot read config file", path=path, reason=str(exc))
    except json.JSONDecodeError as exc:
        raise ConfigError("config file is not valid JSON", path=path, reason=str(exc))
    if not isinstance(data, dict):
        raise ConfigError("config file must hold a JSON object", path=path)
    for key in sorted(data):
        if key not in CONFIG_KEYS:
            raise ConfigError("unknown config key", key=key)
    return data


def _base_pairs(items: Sequence[str]) -> Dict[str, str]:
    out = {}
    for item in items:
        key, sep, value = item.partition("=")
        if not sep or not key.strip():
            raise UsageError("--param must look like KEY=VALUE", param=item)
        out[key.strip()] = value.strip()
    return out


def parse_config(argv: Sequence[str], environ: Optional[Dict[str, str]] = None) -> RunConfig:
    environ = os.environ if environ is None else environ
    args = build_parser().parse_args(list(argv))
    flags = {k[len("param__"):]: v for k, v in vars(args).items() if k.startswith("param__")}

    file_data = _load_file(args.config) if args.config else {}
    if "command" in file_data and file_data["command"] != args.command:
        raise ConfigError("config file is for another command", key="command",
                          file_command=file_data["command"], command=args.command)
    file_params = file_data.get("parameters") or {}
    if not isinstance(file_params, dict):
        raise ConfigError("parameters must be a JSON object", key="parameters")

    sweep = None
    if args.command == "sweep":
        merged = dict(file_params)
        if "base" in flags:
            base = dict(merged.get("base") or {})
            base.update(_base_pairs(flags.pop("base")))
            merged["base"] = base
        merged.update(flags)
        sweep = build_sweep_spec(merged)
        parameters = sweep.to_dict()
    else:
        merged = dict(file_params)
        merged.update(flags)
        parameters = resolve_parameters(args.command, merged)

    output_dir = args.output_dir or environ.get(OUTPUT_DIR_ENV) or file_data.get("output_dir") or DEFAULT_OUTPUT_DIR
    workers = args.workers if args.workers is not None else file_data.get("workers", DEFAULT_WORKERS)
    seed = args.seed if args.seed is not None else file_data.get("seed", 0)
    gnuplot = bool(args.gnuplot) if args.gnuplot is not None else bool(file_data.get("gnuplot", False))
    log_level = args.log_level or file_data.get("log_level", "WARNING")

    if isinstance(workers, bool) or not isinstance(workers, int) or workers < 1:
        raise ConfigError("workers must be an integer >= 1", key="workers", workers=workers)
    if isinstance(seed, bool) or not isinstance(seed, int):
        raise ConfigError("seed must be an integer", key="seed", seed=seed)

    cfg = RunConfig(
        command=args.command,
        parameters=parameters,
        output_dir=str(output_dir),
        seed=seed,
        workers=workers,
        gnuplot=gnuplot,
        log_level=str(log_level),
        sweep=sweep,
    )
    logger.info("parse_config: command=%s output_dir=%s workers=%d", cfg.command, cfg.output_dir, cfg.workers)
    return cfg
