"""YAML run configuration.

Schema (every key optional; defaults in brackets). Energies may be given in
any unit: they are divided by ``couplings.jz`` on load, so everything
downstream works with ``J_z = 1``. Times are in units of ``1/J_z``.

.. code-block:: yaml

    case: i                  # preset i | ii | iii; explicit keys below override it
    lattice:
      rows: 1                # [1] hexagon rows
      cols: 1                # [1] hexagon columns
      boundary: open         # [open] open | closed
    couplings: {jx: 0.3, jy: 0.3, jz: 1.0}
    spin_orbit: {c: [0, 0, 0], d: [0, 0, 0]}
    hyperfine:
      mode: uniform          # [uniform] uniform | random
      dh: [0, 0, 0]          # field (uniform) or per-axis sigma (random)
      seed: null             # required when mode is random
    schemes: [efficient]     # efficient | standard (aliases efc, std)
    bch_reps: [1]            # positive integers
    t_grid: {start: 0.0, stop: 1.5, points: 16}
    propagator: {method: exact, order: 6}   # exact | chebyshev
    standard_time: matched   # matched | full
    overhead: {tau_rot: 0.01, tau: 1.0}
    measurement: {j_meas: 2.0}
    pattern_file: null       # lattice text file with pulse records
    output: {dir: out}
    threads: 1
    dense_cap: 12
"""

from __future__ import annotations

import copy
import math
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np
import yaml

from .errors import ConfigError
from .pauli import DENSE_SITE_CAP

PRESETS = {
    "i": {"couplings": {"jx": 0.3, "jy": 0.3, "jz": 1.0}},
    "ii": {
        "couplings": {"jx": 0.3, "jy": 0.3, "jz": 1.0},
        "spin_orbit": {"d": [0.1, 0.1, 0.1]},
        "hyperfine": {"dh": [0.1, 0.1, 0.1]},
    },
    "iii": {
        "couplings": {"jx": 1.0, "jy": 1.0, "jz": 1.0},
        "spin_orbit": {"d": [0.3, 0.3, 0.3]},
        "hyperfine": {"dh": [0.3, 0.3, 0.3]},
    },
}

_SCHEME_ALIASES = {"efficient": "efficient", "efc": "efficient", "standard": "standard", "std": "standard"}


@dataclass
class LatticeSpec:
    rows: int = 1
    cols: int = 1
    boundary: str = "open"


@dataclass
class TimeGrid:
    start: float = 0.0
    stop: float = 1.5
    points: int = 16

    def values(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, self.points)


@dataclass
class RunConfig:
    case: str = "custom"
    lattice: LatticeSpec = field(default_factory=LatticeSpec)
    jx: float = 0.3
    jy: float = 0.3
    jz: float = 1.0
    so_c: tuple[float, float, float] = (0.0, 0.0, 0.0)
    so_d: tuple[float, float, float] = (0.0, 0.0, 0.0)
    hf_mode: str = "uniform"
    hf_dh: tuple[float, float, float] = (0.0, 0.0, 0.0)
    seed: int | None = None
    schemes: tuple[str, ...] = ("efficient",)
    bch_reps: tuple[int, ...] = (1,)
    t_grid: TimeGrid = field(default_factory=TimeGrid)
    method: str = "exact"
    order: int = 6
    standard_time: str = "matched"
    tau_rot: float = 0.01
    tau: float = 1.0
    j_meas: float = 2.0
    pattern_file: str | None = None
    out_dir: str = "out"
    threads: int = 1
    dense_cap: int = DENSE_SITE_CAP
    energy_unit: float = 1.0  # raw J_z before normalization

    def to_dict(self) -> dict:
        return asdict(self)


def _merge(base: dict, over: dict) -> dict:
    out = copy.deepcopy(base)
    for k, v in over.items():
        if isinstance(v, dict) and isinstance(out.get(k), dict):
            out[k] = _merge(out[k], v)
        else:
            out[k] = v
    return out


def _section(raw: dict, name: str, keys: set[str]) -> dict:
    sec = raw.get(name) or {}
    if not isinstance(sec, dict):
        raise ConfigError(name, "expected a mapping")
    extra = set(sec) - keys
    if extra:
        raise ConfigError(f"{name}.{sorted(extra)[0]}", "unknown key")
    return sec


def _number(value, name: str, *, positive=False, nonneg=False) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(name, f"expected a number, got {value!r}")
    x = float(value)
    if not math.isfinite(x):
        raise ConfigError(name, "must be finite")
    if positive and x <= 0:
        raise ConfigError(name, "must be positive")
    if nonneg and x < 0:
        raise ConfigError(name, "must be non-negative")
    return x


def _integer(value, name: str, minimum: int) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(name, f"expected an integer, got {value!r}")
    if value < minimum:
        raise ConfigError(name, f"must be at least {minimum}")
    return value


def _vector(value, name: str) -> tuple[float, float, float]:
    if not isinstance(value, (list, tuple)) or len(value) != 3:
        raise ConfigError(name, "expected a list of three numbers")
    return tuple(_number(v, f"{name}[{k}]") for k, v in enumerate(value))


def _choice(value, name: str, options) -> str:
    if value not in options:
        raise ConfigError(name, f"must be one of {sorted(options)}, got {value!r}")
    return value


_TOP = {
    "case", "lattice", "couplings", "spin_orbit", "hyperfine", "schemes", "bch_reps",
    "t_grid", "propagator", "standard_time", "overhead", "measurement",
    "pattern_file", "output", "threads", "dense_cap",
}


def parse_config(raw: dict | None, base_dir: Path | None = None) -> RunConfig:
    """Validate a raw mapping and return a normalized :class:`RunConfig`.

    Raises:
        ConfigError: naming the first offending field.
    """
    raw = dict(raw or {})
    extra = set(raw) - _TOP
    if extra:
        raise ConfigError(sorted(extra)[0], "unknown key")
    case = raw.get("case")
    if case is not None:
        _choice(str(case), "case", PRESETS)
        raw = _merge(PRESETS[str(case)], raw)
        case = str(case)

    lat = _section(raw, "lattice", {"rows", "cols", "boundary"})
    boundary = _choice(lat.get("boundary", "open"), "lattice.boundary", {"open", "closed"})
    rows = _integer(lat.get("rows", 1), "lattice.rows", 2 if boundary == "closed" else 1)
    cols = _integer(lat.get("cols", 1), "lattice.cols", 2 if boundary == "closed" else 1)

    cp = _section(raw, "couplings", {"jx", "jy", "jz"})
    jz = _number(cp.get("jz", 1.0), "couplings.jz", positive=True)
    jx = _number(cp.get("jx", 0.3), "couplings.jx") / jz
    jy = _number(cp.get("jy", 0.3), "couplings.jy") / jz

    so = _section(raw, "spin_orbit", {"c", "d"})
    so_c = tuple(v / jz for v in _vector(so.get("c", [0, 0, 0]), "spin_orbit.c"))
    so_d = tuple(v / jz for v in _vector(so.get("d", [0, 0, 0]), "spin_orbit.d"))

    hf = _section(raw, "hyperfine", {"mode", "dh", "seed"})
    mode = _choice(hf.get("mode", "uniform"), "hyperfine.mode", {"uniform", "random"})
    dh = tuple(v / jz for v in _vector(hf.get("dh", [0, 0, 0]), "hyperfine.dh"))
    seed = hf.get("seed")
    if seed is not None:
        seed = _integer(seed, "hyperfine.seed", 0)
    if mode == "random":
        if seed is None:
            raise ConfigError("hyperfine.seed", "required when hyperfine.mode is random")
        if min(dh) < 0:
            raise ConfigError("hyperfine.dh", "random-field widths must be non-negative")

    schemes = raw.get("schemes", ["efficient"])
    if isinstance(schemes, str):
        schemes = [schemes]
    if not isinstance(schemes, list) or not schemes:
        raise ConfigError("schemes", "expected a non-empty list")
    schemes = tuple(_SCHEME_ALIASES[_choice(s, "schemes", _SCHEME_ALIASES)] for s in schemes)

    reps = raw.get("bch_reps", [1])
    if isinstance(reps, int) and not isinstance(reps, bool):
        reps = [reps]
    if not isinstance(reps, list) or not reps:
        raise ConfigError("bch_reps", "expected a non-empty list")
    reps = tuple(_integer(r, "bch_reps", 1) for r in reps)

    tg = _section(raw, "t_grid", {"start", "stop", "points"})
    grid = TimeGrid(
        _number(tg.get("start", 0.0), "t_grid.start", nonneg=True),
        _number(tg.get("stop", 1.5), "t_grid.stop", nonneg=True),
        _integer(tg.get("points", 16), "t_grid.points", 1),
    )
    if grid.stop < grid.start:
        raise ConfigError("t_grid.stop", "must not be below t_grid.start")

    pr = _section(raw, "propagator", {"method", "order"})
    method = _choice(pr.get("method", "exact"), "propagator.method", {"exact", "chebyshev"})
    order = _integer(pr.get("order", 6), "propagator.order", 1)
    standard_time = _choice(raw.get("standard_time", "matched"), "standard_time", {"matched", "full"})

    ov = _section(raw, "overhead", {"tau_rot", "tau"})
    tau_rot = _number(ov.get("tau_rot", 0.01), "overhead.tau_rot", nonneg=True)
    tau = _number(ov.get("tau", 1.0), "overhead.tau", positive=True)
    ms = _section(raw, "measurement", {"j_meas"})
    j_meas = _number(ms.get("j_meas", 2.0), "measurement.j_meas", positive=True) / jz

    pattern_file = raw.get("pattern_file")
    if pattern_file is not None:
        path = Path(pattern_file)
        if base_dir is not None and not path.is_absolute():
            path = base_dir / path
        if not path.is_file():
            raise ConfigError("pattern_file", f"no such file: {path}")
        pattern_file = str(path)

    outp = _section(raw, "output", {"dir"})
    out_dir = outp.get("dir", "out")
    if not isinstance(out_dir, str) or not out_dir:
        raise ConfigError("output.dir", "expected a non-empty path")

    return RunConfig(
        case=case or "custom",
        lattice=LatticeSpec(rows, cols, boundary),
        jx=jx, jy=jy, jz=1.0,
        so_c=so_c, so_d=so_d,
        hf_mode=mode, hf_dh=dh, seed=seed,
        schemes=schemes, bch_reps=reps, t_grid=grid,
        method=method, order=order, standard_time=standard_time,
        tau_rot=tau_rot, tau=tau, j_meas=j_meas,
        pattern_file=pattern_file, out_dir=out_dir,
        threads=_integer(raw.get("threads", 1), "threads", 1),
        dense_cap=_integer(raw.get("dense_cap", DENSE_SITE_CAP), "dense_cap", 1),
        energy_unit=jz,
    )


def load_config(path) -> RunConfig:
    """Read and validate a YAML config file; ``None`` gives the defaults."""
    if path is None:
        return parse_config({})
    path = Path(path)
    try:
        raw = yaml.safe_load(path.read_text())
    except OSError as exc:
        raise ConfigError("<file>", str(exc)) from exc
    except yaml.YAMLError as exc:
        raise ConfigError("<file>", f"invalid YAML: {exc}") from exc
    if raw is not None and not isinstance(raw, dict):
        raise ConfigError("<file>", "top level must be a mapping")
    return parse_config(raw, path.parent)
