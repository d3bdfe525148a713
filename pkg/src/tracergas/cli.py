"""Experiment runner: presets, flat-file configuration, CSV and manifest output.

Experiments fall into two families.  Single-collision runs hit a cat state
with one fixed gas packet and emit the Wigner density before, after and
their difference.  Sweep runs scan temperature or horizon, estimating the
decoherence per collision by Monte Carlo at each point alongside the
closed-form curve, and emit averaged post-collision grids per point.

Configuration is resolved as preset defaults < config file < command-line
flags.  The config file is flat "key = value" text; unknown keys are
rejected with their line number.  Runs are deterministic: a root seed
fixes every stream (per sweep point and purpose via SeedSequence tuples),
and repeated runs produce byte-identical files.
"""

from __future__ import annotations

import argparse
import hashlib
import math
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import __version__, _kernels
from .collisions import CollisionSample, collide_cat
from .engine import (
    DecoherenceCurve,
    _collide_batch,
    mc_decoherence,
    momentum_decoherence_per_collision,
    position_decoherence_per_collision,
)
from .phase_space import CatState, GaussianPacket, Tracer, cat_descriptors
from .thermal import GasEnvironment, RegimeReport, regime_report
from .wigner import GridSpec, WignerGrid, wigner_grid, write_grid_csv

EXPERIMENTS = (
    "wigner_single_collision",
    "wigner_light_gas",
    "position_sweep",
    "high_temperature_sweep",
    "momentum_sweep",
    "custom",
)

# per-experiment defaults; cat and collision parameters of the demo runs
_BASE_DEFAULTS = {
    "seed": 1,
    "samples": 10000,
    "grid_samples": 200,
    "workers": 1,
    "coherence": 1.0,
    "phase": 0.0,
    "mass": 1.0,
    "gas_sigma": None,
    "out_dir": "runs",
}

_SINGLE_COLLISION = {
    "x_a": 15.0,
    "p_a": 0.0,
    "x_b": 0.0,
    "p_b": 1.5,
    "sigma": 4.0,
    "alpha": 0.04,
    "gas_x": 100.0,
    "gas_p": -1.0,
    "temperature": 0.5,
    "density": 1e-3,
    "horizon": 20.0,
    "sweep_axis": "none",
    "sweep_values": [],
    "grid": "128,128,-20,40,-3,3",
}

_POSITION_CAT = {
    "x_a": 20.0,
    "p_a": 0.0,
    "x_b": -20.0,
    "p_b": 0.0,
    "sigma": 4.0,
    "alpha": 1e-4,
    "gas_x": 0.0,
    "gas_p": 0.0,
    "temperature": 0.2,
    "density": 1e-5,
    "horizon": 20.0,
    "sweep_axis": "temperature",
    "grid": "128,128,-30,30,-1.5,1.5",
}

PRESETS = {
    "wigner_single_collision": dict(_SINGLE_COLLISION),
    "wigner_light_gas": {
        **_SINGLE_COLLISION,
        "gas_p": -0.2,
        "gas_x": 500.0,
        "alpha": 0.002,
    },
    "position_sweep": {
        **_POSITION_CAT,
        "sweep_values": [0.05, 0.1, 0.2, 0.35, 0.5, 0.75, 1.0, 1.25, 1.5],
    },
    "high_temperature_sweep": {
        **_POSITION_CAT,
        "sweep_values": [0.5, 1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0, 10.0],
    },
    "momentum_sweep": {
        "x_a": 0.0,
        "p_a": 1.2,
        "x_b": 0.0,
        "p_b": -1.2,
        "sigma": 4.0,
        "alpha": 1e-4,
        "gas_x": 0.0,
        "gas_p": 0.0,
        "temperature": 0.5,
        "density": 1e-5,
        "horizon": 20.0,
        "sweep_axis": "horizon",
        "sweep_values": [2.0, 5.0, 10.0, 15.0, 20.0, 30.0, 40.0, 50.0],
        "grid": "128,128,-20,20,-3,3",
    },
    "custom": dict(_SINGLE_COLLISION),
}

_FLOAT_KEYS = (
    "x_a",
    "p_a",
    "x_b",
    "p_b",
    "sigma",
    "coherence",
    "phase",
    "mass",
    "alpha",
    "gas_x",
    "gas_p",
    "temperature",
    "density",
    "horizon",
)
_INT_KEYS = ("seed", "samples", "grid_samples", "workers")
_STR_KEYS = ("experiment", "sweep_axis", "out_dir", "grid")
_OPTIONAL_FLOAT_KEYS = ("gas_sigma",)
_LIST_KEYS = ("sweep_values",)
_ALL_KEYS = _FLOAT_KEYS + _INT_KEYS + _STR_KEYS + _OPTIONAL_FLOAT_KEYS + _LIST_KEYS


@dataclass(frozen=True)
class ExperimentConfig:
    """Fully resolved run description; see PRESETS for the default values."""

    experiment: str
    seed: int
    samples: int
    grid_samples: int
    workers: int
    x_a: float
    p_a: float
    x_b: float
    p_b: float
    sigma: float
    coherence: float
    phase: float
    mass: float
    alpha: float
    gas_sigma: float | None
    gas_x: float
    gas_p: float
    temperature: float
    density: float
    horizon: float
    sweep_axis: str
    sweep_values: list[float]
    grid: GridSpec
    out_dir: str

    def validate(self):
        problems = []
        if self.experiment not in EXPERIMENTS:
            problems.append(f"unknown experiment {self.experiment!r}")
        for name in ("sigma", "mass", "alpha", "temperature", "density", "horizon"):
            if not getattr(self, name) > 0:
                problems.append(f"{name} must be strictly positive")
        if not 0.0 <= self.coherence <= 1.0:
            problems.append("coherence must lie in [0, 1]")
        if self.samples < 2:
            problems.append("samples must be at least 2")
        if self.grid_samples < 1:
            problems.append("grid_samples must be at least 1")
        if self.workers < 1:
            problems.append("workers must be at least 1")
        if self.sweep_axis not in ("none", "temperature", "horizon"):
            problems.append(f"sweep_axis must be none/temperature/horizon, got {self.sweep_axis!r}")
        if self.sweep_axis != "none" and not self.sweep_values:
            problems.append("sweep_values must be non-empty for a sweep experiment")
        if any(v <= 0 for v in self.sweep_values):
            problems.append("sweep values must be strictly positive")
        if self.gas_sigma is not None and not self.gas_sigma > 0:
            problems.append("gas_sigma must be strictly positive when given")
        if problems:
            raise ValueError("invalid configuration: " + "; ".join(problems))

    def resolved_gas_sigma(self) -> float:
        # width matching m sigma^2 = m_g sigma_g^2 unless overridden
        if self.gas_sigma is not None:
            return self.gas_sigma
        return self.sigma / math.sqrt(self.alpha)

    def tracer(self) -> Tracer:
        return Tracer(self.mass)

    def cat(self) -> CatState:
        return CatState(
            GaussianPacket(self.x_a, self.p_a, self.sigma),
            GaussianPacket(self.x_b, self.p_b, self.sigma),
            c=self.coherence,
            phi=self.phase,
        )

    def environment(self, temperature: float | None = None) -> GasEnvironment:
        return GasEnvironment(
            m_g=self.alpha * self.mass,
            T=self.temperature if temperature is None else temperature,
            n_g=self.density,
            sigma_g=self.resolved_gas_sigma(),
        )


@dataclass(frozen=True)
class RunManifest:
    """Resolved configuration, regime report, version, seed and checksums."""

    config: ExperimentConfig
    regime: RegimeReport
    version: str
    seed: int
    checksums: dict[str, str] = field(default_factory=dict)


def parse_grid(text: str) -> GridSpec:
    """Parse NX,NP,XMIN,XMAX,PMIN,PMAX into a GridSpec."""
    parts = text.split(",")
    if len(parts) != 6:
        raise ValueError(f"grid needs 6 comma-separated values, got {text!r}")
    try:
        n_x, n_p = int(parts[0]), int(parts[1])
        x_min, x_max, p_min, p_max = (float(v) for v in parts[2:])
    except ValueError as exc:
        raise ValueError(f"malformed grid {text!r}: {exc}") from None
    return GridSpec(x_min=x_min, x_max=x_max, p_min=p_min, p_max=p_max, n_x=n_x, n_p=n_p)


def _parse_value(key: str, raw: str, where: str):
    try:
        if key in _INT_KEYS:
            return int(raw)
        if key in _FLOAT_KEYS or key in _OPTIONAL_FLOAT_KEYS:
            return float(raw)
        if key in _LIST_KEYS:
            return [float(v) for v in raw.split(",") if v.strip()]
        return raw
    except ValueError:
        raise ValueError(f"{where}: cannot parse value {raw!r} for key {key!r}") from None


def read_config_file(path) -> dict:
    """Read flat key = value text; '#' comments; unknown keys rejected."""
    values = {}
    with open(path) as fh:
        for lineno, line in enumerate(fh, start=1):
            body = line.split("#", 1)[0].strip()
            if not body:
                continue
            if "=" not in body:
                raise ValueError(f"{path}:{lineno}: expected 'key = value', got {line.rstrip()!r}")
            key, raw = (part.strip() for part in body.split("=", 1))
            if key not in _ALL_KEYS:
                raise ValueError(f"{path}:{lineno}: unknown key {key!r}")
            values[key] = _parse_value(key, raw, f"{path}:{lineno}")
    return values


def load_config(path=None, flags: dict | None = None) -> ExperimentConfig:
    """Resolve preset defaults, then file values, then flag overrides."""
    file_values = read_config_file(path) if path else {}
    flag_values = {k: v for k, v in (flags or {}).items() if v is not None}
    experiment = flag_values.get("experiment") or file_values.get("experiment")
    if experiment is None:
        raise ValueError("no experiment selected (use --experiment or the config file)")
    if experiment not in EXPERIMENTS:
        raise ValueError(f"unknown experiment {experiment!r}; choose from {EXPERIMENTS}")
    merged = {**_BASE_DEFAULTS, **PRESETS[experiment], **file_values, **flag_values}
    merged["experiment"] = experiment
    grid = merged.pop("grid")
    config = ExperimentConfig(grid=parse_grid(grid) if isinstance(grid, str) else grid, **merged)
    config.validate()
    return config


def _derive_seed(*entropy: int) -> int:
    """Deterministic child seed from a tuple of integers."""
    return int(np.random.SeedSequence(entropy).generate_state(1, np.uint64)[0])


def _sha256(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


def _write_sweep_csv(path: Path, curve: DecoherenceCurve):
    with open(path, "w", newline="\n") as fh:
        fh.write("abscissa,analytic,mc_mean,mc_se,n\n")
        for absc, ana, mc in zip(curve.abscissa, curve.analytic, curve.mc):
            fh.write(f"{absc:.17g},{ana:.17g},{mc.mean:.17g},{mc.std_error:.17g},{mc.n_samples}\n")


def _write_regime_report(path: Path, report: RegimeReport):
    with open(path, "w", newline="\n") as fh:
        fh.write(f"quantum_width_ratio = {report.quantum_width_ratio:.17g}\n")
        fh.write(f"dilution_ratio = {report.dilution_ratio:.17g}\n")
        fh.write(f"degeneracy_ratio = {report.degeneracy_ratio:.17g}\n")
        fh.write(f"collision_time = {report.collision_time:.17g}\n")
        fh.write(f"width_match_residual = {report.width_match_residual:.17g}\n")
        for message in report.warnings:
            fh.write(f"warning = {message}\n")


def _config_lines(config: ExperimentConfig):
    # out_dir is environmental, not part of the physics; leaving it out keeps
    # manifests byte-identical across output locations
    for key in _ALL_KEYS:
        if key == "out_dir":
            continue
        if key == "grid":
            g = config.grid
            value = f"{g.n_x},{g.n_p},{g.x_min:.17g},{g.x_max:.17g},{g.p_min:.17g},{g.p_max:.17g}"
        elif key == "sweep_values":
            value = ",".join(f"{v:.17g}" for v in config.sweep_values)
        else:
            value = getattr(config, key)
            if isinstance(value, float):
                value = f"{value:.17g}"
        yield f"{key} = {value}"


def write_manifest(manifest: RunManifest, path: Path):
    with open(path, "w", newline="\n") as fh:
        fh.write("# tracergas run manifest\n")
        fh.write(f"version = {manifest.version}\n")
        fh.write(f"seed = {manifest.seed}\n")
        fh.write(f"kernels = {_kernels.BACKEND}\n")
        for line in _config_lines(manifest.config):
            fh.write(line + "\n")
        r = manifest.regime
        fh.write(f"regime.quantum_width_ratio = {r.quantum_width_ratio:.17g}\n")
        fh.write(f"regime.dilution_ratio = {r.dilution_ratio:.17g}\n")
        fh.write(f"regime.degeneracy_ratio = {r.degeneracy_ratio:.17g}\n")
        fh.write(f"regime.collision_time = {r.collision_time:.17g}\n")
        fh.write(f"regime.width_match_residual = {r.width_match_residual:.17g}\n")
        for message in r.warnings:
            fh.write(f"regime.warning = {message}\n")
        for name, digest in manifest.checksums.items():
            fh.write(f"file {name} sha256 {digest}\n")


def verify_manifest(path) -> bool:
    """Re-hash every file listed in a manifest; True when all match."""
    base = Path(path).parent
    ok = True
    with open(path) as fh:
        for line in fh:
            if line.startswith("file "):
                _, name, _, digest = line.split()
                ok = ok and _sha256(base / name) == digest
    return ok


def _analytic_value(config: ExperimentConfig, temperature: float, horizon: float, tracer):
    desc = cat_descriptors(config.cat())
    env = config.environment(temperature)
    if desc.p_sep == 0.0:
        return position_decoherence_per_collision(desc.x_sep, env)
    if desc.x_sep == 0.0:
        return momentum_decoherence_per_collision(desc.p_sep, tracer, horizon, env)
    return float("nan")


def _mean_collided_grid(config, cat, env, horizon, spec, point_index):
    """Average post-collision Wigner density over freshly sampled collisions."""
    from .thermal import sample_collisions

    rng = np.random.Generator(
        np.random.PCG64(np.random.SeedSequence((config.seed, point_index, 1)))
    )
    x_g, p_g = sample_collisions(env, horizon, config.grid_samples, rng)
    alpha = env.m_g / config.mass
    xa, pa, xb, pb, c, phi = _collide_batch(cat, x_g, p_g, alpha, env.consts.hbar)
    xg_mesh, pg_mesh = np.meshgrid(spec.x_axis(), spec.p_axis(), indexing="ij")
    values = _kernels.wigner_mean_on_points(
        np.ascontiguousarray(xg_mesh),
        np.ascontiguousarray(pg_mesh),
        xa,
        pa,
        xb,
        pb,
        c,
        phi,
        cat.sigma,
        env.consts.hbar,
    )
    if cat.is_single_packet:
        values = 0.5 * values
    return WignerGrid(spec, values)


def run_experiment(config: ExperimentConfig, stderr=None) -> RunManifest:
    """Execute one experiment; emits CSVs, a regime report and a manifest.

    Regime warnings go to standard error and into the report; they never
    change the outcome.  Raises on I/O failure or quadrature breakdown.
    """
    stderr = stderr if stderr is not None else sys.stderr
    config.validate()
    out = Path(config.out_dir)
    out.mkdir(parents=True, exist_ok=True)

    tracer = config.tracer()
    cat = config.cat()
    base_temperature = (
        config.sweep_values[0] if config.sweep_axis == "temperature" else config.temperature
    )
    report = regime_report(
        config.environment(base_temperature), tracer, config.sigma, config.horizon
    )
    for message in report.warnings:
        print(f"warning: {message}", file=stderr)

    emitted: list[Path] = []

    before = wigner_grid(cat, config.grid)
    before_path = out / "wigner_before.csv"
    write_grid_csv(before, before_path)
    emitted.append(before_path)

    if config.sweep_axis == "none":
        sample = CollisionSample(config.gas_x, config.gas_p)
        after_cat = collide_cat(cat, sample, config.alpha)
        after = wigner_grid(after_cat, config.grid)
        diff = WignerGrid(config.grid, after.values - before.values)
        for name, grid in (("wigner_after.csv", after), ("wigner_diff.csv", diff)):
            path = out / name
            write_grid_csv(grid, path)
            emitted.append(path)
    else:
        abscissa, analytic, estimates = [], [], []
        for idx, value in enumerate(config.sweep_values):
            temperature = value if config.sweep_axis == "temperature" else config.temperature
            horizon = value if config.sweep_axis == "horizon" else config.horizon
            env = config.environment(temperature)
            estimate = mc_decoherence(
                cat,
                env,
                tracer,
                horizon,
                config.samples,
                seed=_derive_seed(config.seed, idx, 0),
                n_workers=config.workers,
            )
            abscissa.append(value)
            analytic.append(_analytic_value(config, temperature, horizon, tracer))
            estimates.append(estimate)

            after = _mean_collided_grid(config, cat, env, horizon, config.grid, idx)
            diff = WignerGrid(config.grid, after.values - before.values)
            for stem, grid in (("wigner_after", after), ("wigner_diff", diff)):
                path = out / f"{stem}_{idx:03d}.csv"
                write_grid_csv(grid, path)
                emitted.append(path)
        curve = DecoherenceCurve(abscissa=abscissa, analytic=analytic, mc=estimates)
        sweep_path = out / "sweep.csv"
        _write_sweep_csv(sweep_path, curve)
        emitted.append(sweep_path)

    regime_path = out / "regime.txt"
    _write_regime_report(regime_path, report)
    emitted.append(regime_path)

    checksums = {path.name: _sha256(path) for path in emitted}
    manifest = RunManifest(
        config=config,
        regime=report,
        version=__version__,
        seed=config.seed,
        checksums=checksums,
    )
    write_manifest(manifest, out / "manifest.txt")
    return manifest


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tracergas",
        description="Collisional decoherence experiments for a 1D tracer particle",
    )
    parser.add_argument("--experiment", choices=EXPERIMENTS, help="experiment preset to run")
    parser.add_argument("--config", help="flat key = value configuration file")
    parser.add_argument("--seed", type=int, help="root seed for all random streams")
    parser.add_argument("--samples", type=int, help="Monte-Carlo samples per sweep point")
    parser.add_argument("--horizon", type=float, help="collision time window length")
    parser.add_argument("--grid", help="Wigner grid as NX,NP,XMIN,XMAX,PMIN,PMAX")
    parser.add_argument("--out-dir", dest="out_dir", help="output directory")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    flags = {
        "experiment": args.experiment,
        "seed": args.seed,
        "samples": args.samples,
        "horizon": args.horizon,
        "grid": args.grid,
        "out_dir": args.out_dir,
    }
    try:
        config = load_config(args.config, flags)
        run_experiment(config)
    except (ValueError, OSError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
