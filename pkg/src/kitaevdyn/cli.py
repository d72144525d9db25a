"""Command-line front end.

Every subcommand reads one YAML config (see :mod:`kitaevdyn.config`),
writes its outputs under ``output.dir`` and records a ``<command>.manifest.json``
next to them. Exit codes: 0 success, 1 verification failure, 2 config
error, 3 resource cap.
"""

from __future__ import annotations

import argparse
import dataclasses
import sys
import time
from pathlib import Path

import numpy as np

from . import __version__
from .analysis.budgets import (
    hyperfine_correlation,
    measurement_report,
    perturbation_budgets,
    phase_classify,
    refresh_overhead,
)
from .analysis.fidelity import ModelCase, engineered_target, fidelity_sweep, sequence_for
from .analysis.spectrum import spectrum_sweep
from .analysis.toric import toric_coupling
from .config import RunConfig, load_config
from .errors import ConfigError, ResourceError, SynthesisError
from .hamiltonians import (
    Couplings,
    SpinOrbitParams,
    effective_bch_hamiltonian,
    heisenberg,
    kitaev,
)
from .io import (
    dump_hamiltonian,
    dump_json,
    dump_lattice,
    fidelity_csv,
    read_lattice,
    sha256_file,
    spectrum_csv,
)
from .lattice import build_patch
from .pauli import commutator
from .pulses import (
    averaged_hamiltonian,
    efficient_sequence,
    link_report,
    rotated_hamiltonian,
    verify_target,
)

EXIT_OK, EXIT_VERIFY, EXIT_CONFIG, EXIT_RESOURCE = 0, 1, 2, 3


@dataclasses.dataclass
class RunManifest:
    command: str
    version: str
    config: dict
    wall_clock_seconds: float
    outputs: dict  # file name -> sha256

    def write(self, out_dir: Path) -> Path:
        path = out_dir / f"{self.command}.manifest.json"
        path.write_text(dump_json(dataclasses.asdict(self)))
        return path


# -- model construction ------------------------------------------------------


def lattice_and_pattern(cfg: RunConfig):
    if cfg.pattern_file is not None:
        try:
            lf = read_lattice(cfg.pattern_file)
        except ValueError as exc:
            raise ConfigError("pattern_file", str(exc)) from exc
        return lf.lattice, lf.pattern
    lat = cfg.lattice
    return build_patch(lat.rows, lat.cols, lat.boundary), None


def model_case(cfg: RunConfig) -> ModelCase:
    return ModelCase(
        cfg.case,
        Couplings(cfg.jx, cfg.jy, cfg.jz),
        SpinOrbitParams(cfg.so_c, cfg.so_d),
        cfg.hf_dh,
        cfg.hf_mode,
        cfg.seed,
    )


def _check_cap(cfg: RunConfig, n_sites: int):
    if n_sites > cfg.dense_cap:
        raise ResourceError(f"{n_sites} sites exceed the dense cap of {cfg.dense_cap}")


def _sequence(cfg, lattice, pattern, scheme):
    if scheme == "efficient" and pattern is not None:
        return efficient_sequence(lattice, pattern)
    return sequence_for(lattice, scheme)


def _write(out_dir: Path, name: str, text: str, outputs: dict):
    path = out_dir / name
    path.write_text(text)
    outputs[name] = sha256_file(path)


# -- subcommands ---------------------------------------------------------------


def cmd_verify_pulses(cfg: RunConfig, out_dir: Path, outputs: dict) -> int:
    lattice, pattern = lattice_and_pattern(cfg)
    j = Couplings(cfg.jx, cfg.jy, cfg.jz)
    h_s, target = heisenberg(lattice, j), kitaev(lattice, j)
    lines, status = [], EXIT_OK
    for scheme in cfg.schemes:
        try:
            seq = _sequence(cfg, lattice, pattern, scheme)
        except SynthesisError as exc:
            lines.append(f"[{scheme}] synthesis failed: {exc}")
            lines += [f"  unsatisfiable {i}-{k} ({t})" for i, k, t in exc.certificate]
            status = EXIT_VERIFY
            continue
        report = verify_target(h_s, seq, target)
        lines.append(f"[{scheme}] {'PASS' if report else 'FAIL'} ({len(seq.stages)} stage(s))")
        for st in seq.stages:
            lines.append(f"  pattern {st.label}: {st.pattern}")
        for (i, k, t), ok in link_report(lattice, report.residual):
            lines.append(f"  link {i}-{k} {t}: {'ok' if ok else 'FAIL'}")
        if not report:
            status = EXIT_VERIFY
            lines.append("  residual:")
            lines += ["    " + ln for ln in dump_hamiltonian(report.residual).splitlines()]
        if scheme == "efficient":
            _write(out_dir, "pattern.txt", dump_lattice(lattice, seq.stages[0].pattern), outputs)
    text = "\n".join(lines) + "\n"
    print(text, end="")
    _write(out_dir, "verify_pulses.txt", text, outputs)
    return status


def cmd_fidelity(cfg: RunConfig, out_dir: Path, outputs: dict) -> int:
    lattice, pattern = lattice_and_pattern(cfg)
    _check_cap(cfg, lattice.n_sites)
    case = model_case(cfg)
    grid = cfg.t_grid.values()
    curves = []
    for scheme in cfg.schemes:
        seq = _sequence(cfg, lattice, pattern, scheme)
        for n in cfg.bch_reps:
            curves.append(
                fidelity_sweep(
                    lattice, case, scheme, n, grid,
                    method=cfg.method, order=cfg.order, standard_time=cfg.standard_time,
                    sequence=seq, threads=cfg.threads, cap=cfg.dense_cap,
                )
            )
    _write(out_dir, "fidelity.csv", fidelity_csv(curves), outputs)
    for c in curves:
        print(f"{c.scheme} BCH-{c.n}: F(t_end) = {c.values[-1]:.6f}")
    return EXIT_OK


def cmd_spectrum(cfg: RunConfig, out_dir: Path, outputs: dict) -> int:
    """Clean spectrum always; a perturbed one as well when SO/HF terms are present."""
    lattice, pattern = lattice_and_pattern(cfg)
    _check_cap(cfg, lattice.n_sites)
    case = model_case(cfg)
    pattern = efficient_sequence(lattice, pattern).stages[0].pattern
    grid = cfg.t_grid.values()
    runs = {"clean": heisenberg(lattice, case.couplings)}
    perturbation = case.perturbation(lattice)
    if perturbation.terms:
        runs["perturbed"] = runs["clean"] + perturbation
    for label, h_s in runs.items():
        curve = spectrum_sweep(h_s, rotated_hamiltonian(h_s, pattern), grid, cap=cfg.dense_cap)
        _write(out_dir, f"spectrum_{label}.csv", spectrum_csv(curve), outputs)
        print(f"{label}: gap(t=0) = {curve.gaps[0]:.6f}, min gap = {curve.gaps.min():.6f}")
    return EXIT_OK


def constraints_report(cfg: RunConfig) -> dict:
    lattice, _ = lattice_and_pattern(cfg)
    case = model_case(cfg)
    fields = case.hyperfine_field(lattice.n_sites)
    hf_xy = hyperfine_correlation(fields, lattice)
    hf_mag = float(np.max(np.abs(fields.dh))) if fields.dh.size else 0.0
    report = perturbation_budgets(case.couplings, case.spin_orbit, hf_xy, hf_magnitude=hf_mag)
    out = report.to_dict()
    out["all_ok"] = bool(report.so_ok and report.hf_ok and report.hierarchy_ok)
    out["phase"] = phase_classify(case.couplings) if min(case.couplings.as_tuple()) >= 0 else None
    out["hf_correlation"] = hf_xy
    out["overhead"] = overhead_report(cfg)
    return out


def overhead_report(cfg: RunConfig) -> dict:
    eff = refresh_overhead(cfg.tau_rot, cfg.tau, "efficient")
    std = refresh_overhead(cfg.tau_rot, cfg.tau, "standard")
    return {
        "tau_rot": cfg.tau_rot,
        "tau": cfg.tau,
        "efficient": eff,
        "standard": std,
        "measurement": measurement_report(cfg.j_meas, cfg.jz),
        "j_eff": toric_coupling(Couplings(cfg.jx, cfg.jy, cfg.jz)),
    }


def cmd_constraints(cfg: RunConfig, out_dir: Path, outputs: dict) -> int:
    text = dump_json(constraints_report(cfg))
    print(text, end="")
    _write(out_dir, "constraints.json", text, outputs)
    return EXIT_OK


def cmd_overhead(cfg: RunConfig, out_dir: Path, outputs: dict) -> int:
    text = dump_json(overhead_report(cfg))
    print(text, end="")
    _write(out_dir, "overhead.json", text, outputs)
    return EXIT_OK


HAMILTONIANS = ("heisenberg", "kitaev", "rotated", "averaged", "perturbation", "evolved",
                "commutator", "effective")


def cmd_dump_hamiltonian(cfg: RunConfig, out_dir: Path, outputs: dict, which: str, t: float) -> int:
    lattice, pattern = lattice_and_pattern(cfg)
    case = model_case(cfg)
    seq = efficient_sequence(lattice, pattern)
    h_s = heisenberg(lattice, case.couplings)
    h_r = rotated_hamiltonian(h_s, seq.stages[0].pattern)
    op = {
        "heisenberg": lambda: h_s,
        "kitaev": lambda: kitaev(lattice, case.couplings),
        "rotated": lambda: h_r,
        "averaged": lambda: averaged_hamiltonian(h_s, seq),
        "perturbation": lambda: case.perturbation(lattice),
        "evolved": lambda: case.hamiltonian(lattice),
        "commutator": lambda: commutator(h_s, h_r),
        "effective": lambda: effective_bch_hamiltonian(h_s, h_r, t),
    }[which]()
    text = dump_hamiltonian(op)
    print(text, end="")
    _write(out_dir, f"hamiltonian_{which}.txt", text, outputs)
    return EXIT_OK


# -- entry point ---------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="kitaevdyn", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ("verify-pulses", "fidelity", "spectrum", "constraints", "overhead", "dump-hamiltonian"):
        p = sub.add_parser(name)
        p.add_argument("config", nargs="?", help="YAML run config (defaults if omitted)")
        p.add_argument("--seed", type=int, help="override hyperfine.seed")
        p.add_argument("--out", help="override output.dir")
        p.add_argument("--threads", type=int, help="override threads")
        if name == "dump-hamiltonian":
            p.add_argument("--which", choices=HAMILTONIANS, default="averaged")
            p.add_argument("--time", type=float, default=0.0, help="t for --which effective")
    return parser


def _apply_overrides(cfg: RunConfig, args) -> RunConfig:
    if args.seed is not None:
        if args.seed < 0:
            raise ConfigError("--seed", "must be non-negative")
        cfg = dataclasses.replace(cfg, seed=args.seed)
    if args.out is not None:
        cfg = dataclasses.replace(cfg, out_dir=args.out)
    if args.threads is not None:
        if args.threads < 1:
            raise ConfigError("--threads", "must be at least 1")
        cfg = dataclasses.replace(cfg, threads=args.threads)
    return cfg


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    start = time.perf_counter()
    outputs: dict[str, str] = {}
    try:
        cfg = _apply_overrides(load_config(args.config), args)
        out_dir = Path(cfg.out_dir)
        out_dir.mkdir(parents=True, exist_ok=True)
        handler = {
            "verify-pulses": cmd_verify_pulses,
            "fidelity": cmd_fidelity,
            "spectrum": cmd_spectrum,
            "constraints": cmd_constraints,
            "overhead": cmd_overhead,
        }.get(args.command)
        if handler is None:
            status = cmd_dump_hamiltonian(cfg, out_dir, outputs, args.which, args.time)
        else:
            status = handler(cfg, out_dir, outputs)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except ResourceError as exc:
        print(f"resource cap: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except SynthesisError as exc:
        print(f"pulse synthesis failed: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    manifest = RunManifest(
        args.command, __version__, cfg.to_dict(), time.perf_counter() - start, outputs
    )
    manifest.write(out_dir)
    return status


if __name__ == "__main__":
    sys.exit(main())
