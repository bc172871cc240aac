"""Experiment orchestration: config parsing, seeding, Monte Carlo, CSV.

Every metric cell is a pure function of (config, master seed): each trial
derives its own random streams from the master seed by counter, so trials
can run serially or on a thread pool with identical results, and a run
executed twice writes byte-identical CSV.

Config files are flat ``key = value`` text with ``#`` comments and an
``include <path>`` directive (resolved relative to the including file;
later keys override earlier ones).  Comma-separated values feed the
sweepable list fields.
"""

from __future__ import annotations

import dataclasses
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from pathlib import Path
from time import perf_counter

import numpy as np

from .arrays import array_factor
from .channel import (
    ArrayGeometry,
    ChannelMatrix,
    PathSet,
    draw_path_set,
    uplink_channel,
    user_channels,
)
from .downlink import downlink_se, mrt_precoder, nmse, zf_precoder
from .econ import Architecture, HardwareProfile, cost, energy_efficiency, power
from .transfer import (
    TransferConfig,
    default_threshold,
    dft_transfer,
    mnomp_transfer,
)
from .uplink import (
    NoiseModel,
    SnrLossInputs,
    composite_angle,
    estimate_lmmse,
    estimate_ls,
    generate_pilots,
    make_selection,
    received_pilot,
    resolved_path_count,
    snr_loss_closed_form,
    snr_loss_numeric,
    uplink_sinr,
)

EXPERIMENTS = (
    "beam-pattern",
    "snr-loss",
    "transfer-nmse",
    "se",
    "ee",
    "cost-table",
)
SYSTEMS = ("asym", "full_digital_m", "full_digital_n", "perfect_csi_m")


@dataclass(frozen=True)
class ExperimentConfig:
    """Flat experiment description; list-valued fields sweep."""

    experiment: str
    num_transmit: int = 128
    num_receive: tuple[int, ...] = (32,)
    num_users: int = 10
    paths_per_user: int = 3
    path_powers: tuple[float, ...] | None = None
    selection: tuple[str, ...] = ("random",)
    algorithm: tuple[str, ...] = ("mnomp",)
    pilot_length: int | None = None
    angle_min_deg: float = -60.0
    angle_max_deg: float = 60.0
    snr_db: tuple[float, ...] = (10.0,)
    pilot_snr_db: float | None = None
    data_snr_db: float | None = None
    downlink_snr_db: float | None = None
    trials: int = 1000
    oversampling_dft: int = 8
    oversampling_mnomp: int = 4
    newton_rounds: int = 2
    cyclic_rounds: int = 2
    threshold: float | None = None
    max_paths: int = 10
    regularizer: float = 1e-4
    detector: str = "zf"
    precoder: str = "zf"
    estimator: str = "lmmse"
    link: str = "downlink"
    systems: tuple[str, ...] = SYSTEMS
    master_seed: int = 0
    slot_ratio: float = 1.0 / 3.0
    bandwidth_hz: float = 500e6
    spacing: float = 0.5
    phase_points: int = 65
    theta1_deg: float = 51.315
    theta2_deg: float = 54.285
    grid_points: int = 4096
    pinned_random: bool = False
    measure_runtime: bool = False
    workers: int = 1

    def __post_init__(self) -> None:
        _require(self.experiment in EXPERIMENTS, "experiment",
                 f"must be one of {', '.join(EXPERIMENTS)}")
        _require(self.num_transmit >= 1, "num_transmit", "must be positive")
        for n in self.num_receive:
            _require(1 <= n <= self.num_transmit, "num_receive",
                     "entries must lie in [1, num_transmit]")
        _require(self.num_users >= 1, "num_users", "must be positive")
        _require(self.paths_per_user >= 1, "paths_per_user", "must be positive")
        if self.path_powers is not None:
            _require(len(self.path_powers) == self.paths_per_user,
                     "path_powers", "needs one fraction per path")
            _require(all(p >= 0 for p in self.path_powers)
                     and abs(sum(self.path_powers) - 1.0) < 1e-9,
                     "path_powers", "fractions must be >= 0 and sum to 1")
        for kind in self.selection:
            _require(kind in ("random", "successive", "comb"), "selection",
                     f"unknown kind {kind!r}")
        for alg in self.algorithm:
            _require(alg in ("dft", "mnomp"), "algorithm",
                     f"unknown algorithm {alg!r}")
        _require(self.angle_min_deg <= self.angle_max_deg, "angle_min_deg",
                 "angle range is empty")
        _require(self.trials >= 1, "trials", "must be positive")
        _require(self.oversampling_dft >= 1, "oversampling_dft", "must be >= 1")
        _require(self.oversampling_mnomp >= 1, "oversampling_mnomp",
                 "must be >= 1")
        _require(self.threshold is None or self.threshold > 0, "threshold",
                 "must be positive (or omitted for the N/rho default)")
        _require(self.detector in ("mrc", "zf"), "detector",
                 "must be 'mrc' or 'zf'")
        _require(self.precoder in ("mrt", "zf"), "precoder",
                 "must be 'mrt' or 'zf'")
        _require(self.estimator in ("ls", "lmmse", "perfect"), "estimator",
                 "must be 'ls', 'lmmse' or 'perfect'")
        _require(self.link in ("uplink", "downlink"), "link",
                 "must be 'uplink' or 'downlink'")
        for system in self.systems:
            _require(system in SYSTEMS, "systems", f"unknown system {system!r}")
        _require(0.0 <= self.slot_ratio <= 1.0, "slot_ratio",
                 "must lie in [0, 1]")
        _require(self.bandwidth_hz > 0, "bandwidth_hz", "must be positive")
        _require(self.phase_points >= 2, "phase_points", "must be >= 2")
        _require(self.grid_points >= 16, "grid_points", "must be >= 16")
        _require(self.workers >= 1, "workers", "must be positive")
        _require(self.master_seed >= 0, "master_seed", "must be non-negative")


@dataclass(frozen=True)
class ExperimentResult:
    """Metric rows plus the column schema they follow."""

    experiment: str
    columns: tuple[str, ...]
    rows: tuple[tuple, ...]

    def csv_text(self) -> str:
        lines = [",".join(self.columns)]
        for row in self.rows:
            lines.append(",".join(_format_cell(v) for v in row))
        return "\n".join(lines) + "\n"

    def write_csv(self, out_dir: str | Path) -> Path:
        out = Path(out_dir)
        out.mkdir(parents=True, exist_ok=True)
        path = out / f"{self.experiment.replace('-', '_')}.csv"
        path.write_bytes(self.csv_text().encode("utf-8"))
        return path


class ConfigError(ValueError):
    """Config-file or config-field problem, with the offending field path."""


def seed_stream(
    master_seed: int, trial_index: int, user_index: int = 0
) -> np.random.Generator:
    """Independent, reproducible stream for one (trial, user) cell.

    The triple seeds a SeedSequence directly, so streams are decorrelated
    by construction and derivable in any order (counter style, no state
    shared between trials).
    """
    seq = np.random.SeedSequence((master_seed, trial_index, user_index))
    return np.random.Generator(np.random.PCG64(seq))


def parse_config_text(
    text: str, base_dir: Path | None = None
) -> dict[str, str]:
    """Flat key=value parse with include resolution; later keys win."""
    values: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("include"):
            target = line[len("include"):].strip()
            if not target:
                raise ConfigError(f"line {lineno}: include needs a path")
            path = Path(target)
            if base_dir is not None and not path.is_absolute():
                path = base_dir / path
            values.update(load_config_values(path))
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected key = value")
        key, _, value = line.partition("=")
        values[key.strip()] = value.strip()
    return values


def load_config_values(path: str | Path) -> dict[str, str]:
    p = Path(path)
    if not p.is_file():
        raise ConfigError(f"config file not found: {p}")
    return parse_config_text(p.read_text(), base_dir=p.parent)


_LIST_STR_FIELDS = {"selection", "algorithm", "systems"}
_LIST_INT_FIELDS = {"num_receive"}
_LIST_FLOAT_FIELDS = {"snr_db", "path_powers"}
_OPTIONAL_FIELDS = {"pilot_length", "threshold", "pilot_snr_db",
                    "data_snr_db", "downlink_snr_db", "path_powers"}
_BOOL_FIELDS = {"pinned_random", "measure_runtime"}


def config_from_values(values: dict[str, str]) -> ExperimentConfig:
    """Coerce raw strings onto ExperimentConfig, reporting the field path."""
    fields = {f.name: f for f in dataclasses.fields(ExperimentConfig)}
    kwargs: dict = {}
    for key, raw in values.items():
        if key not in fields:
            raise ConfigError(f"config.{key}: unknown key")
        kwargs[key] = _coerce(key, raw, fields[key].type)
    if "experiment" not in kwargs:
        raise ConfigError("config.experiment: required key is missing")
    try:
        return ExperimentConfig(**kwargs)
    except ConfigError:
        raise
    except (TypeError, ValueError) as exc:
        raise ConfigError(str(exc)) from exc


def load_config(path: str | Path) -> ExperimentConfig:
    return config_from_values(load_config_values(path))


def _coerce(key: str, raw: str, annotation: str):
    try:
        if key in _OPTIONAL_FIELDS and raw.lower() in ("none", "auto", ""):
            return None
        if key in _BOOL_FIELDS:
            low = raw.lower()
            if low in ("true", "1", "yes", "on"):
                return True
            if low in ("false", "0", "no", "off"):
                return False
            raise ValueError("expected a boolean")
        if key in _LIST_STR_FIELDS:
            return tuple(part.strip() for part in raw.split(",") if part.strip())
        if key in _LIST_INT_FIELDS:
            return tuple(int(part) for part in raw.split(",") if part.strip())
        if key in _LIST_FLOAT_FIELDS:
            return tuple(float(part) for part in raw.split(",") if part.strip())
        if key in ("experiment", "detector", "precoder", "estimator", "link"):
            return raw
        if "int" in annotation:
            return int(raw)
        if "float" in annotation:
            return float(raw)
        return raw
    except ValueError as exc:
        raise ConfigError(f"config.{key}: cannot parse {raw!r} ({exc})") from exc


def run(
    config: ExperimentConfig, out_dir: str | Path | None = None
) -> ExperimentResult:
    """Execute one experiment; optionally write its CSV into out_dir."""
    runner = {
        "beam-pattern": _run_beam_pattern,
        "snr-loss": _run_snr_loss,
        "transfer-nmse": _run_transfer_nmse,
        "se": _run_se,
        "ee": _run_ee,
        "cost-table": _run_cost_table,
    }[config.experiment]
    result = runner(config)
    if out_dir is not None:
        result.write_csv(out_dir)
    return result


# --------------------------------------------------------------------------
# experiment pipelines


def _run_cost_table(cfg: ExperimentConfig) -> ExperimentResult:
    profile = HardwareProfile()
    n = cfg.num_receive[0]
    rows = []
    for kind in ("adbn", "dbm", "hbfn", "hbsn"):
        # the conventional full digital BS pairs a receive chain with every
        # transmit chain; the others use the configured receive count
        arch = Architecture(kind, cfg.num_transmit,
                            cfg.num_transmit if kind == "dbm" else n)
        rows.append((
            kind,
            arch.num_transmit,
            arch.num_receive,
            cost(arch, profile),
            power(arch, profile, cfg.slot_ratio),
        ))
    return ExperimentResult(
        "cost-table",
        ("architecture", "num_transmit", "num_receive", "cost_usd", "power_w"),
        tuple(rows),
    )


def _run_beam_pattern(cfg: ExperimentConfig) -> ExperimentResult:
    n = cfg.num_receive[0]
    grid = np.linspace(-1.0, 1.0, cfg.grid_points)
    rows = []
    for kind in cfg.selection:
        rng = seed_stream(cfg.master_seed, 0, 0)
        sel = make_selection(kind, cfg.num_transmit, n, rng, cfg.pinned_random)
        mags = array_factor(sel, grid, cfg.spacing)
        for w, mag in zip(grid, mags):
            angle = float(np.degrees(np.arcsin(np.clip(w, -1.0, 1.0))))
            mag = float(max(mag, 1e-300))
            rows.append((kind, float(w), angle, mag,
                         float(20.0 * np.log10(mag))))
    return ExperimentResult(
        "beam-pattern",
        ("selection", "w", "angle_deg", "magnitude", "magnitude_db"),
        tuple(rows),
    )


def _run_snr_loss(cfg: ExperimentConfig) -> ExperimentResult:
    n = cfg.num_receive[0]
    geometry = ArrayGeometry(cfg.num_transmit, cfg.spacing)
    sel = make_selection("successive", cfg.num_transmit, n)
    theta1 = np.deg2rad(cfg.theta1_deg)
    theta2 = np.deg2rad(cfg.theta2_deg)
    w_mid = 0.5 * (np.sin(theta1) + np.sin(theta2))
    phases = np.linspace(0.0, 2.0 * np.pi, cfg.phase_points)
    rows = []
    for phase in phases:
        theta_s = composite_angle(theta1, theta2, 0.0, float(phase),
                                  sel, geometry)
        inputs = SnrLossInputs(theta1, theta2, theta_s, 0.0, float(phase),
                               n, cfg.spacing)
        paths = PathSet(np.array([1.0, np.exp(1j * phase)]),
                        np.array([theta1, theta2]))
        h = uplink_channel(paths, sel, geometry)
        rows.append((
            float(phase),
            snr_loss_closed_form(inputs),
            snr_loss_numeric(inputs),
            resolved_path_count(h, sel, geometry, w_mid),
        ))
    return ExperimentResult(
        "snr-loss",
        ("phase_diff_rad", "loss_closed", "loss_numeric",
         "resolved_path_count"),
        tuple(rows),
    )


def _transfer_config(cfg: ExperimentConfig, algorithm: str,
                     num_receive: int, pilot_power: float) -> TransferConfig:
    threshold = cfg.threshold
    if threshold is None:
        threshold = default_threshold(num_receive, pilot_power)
    oversampling = (cfg.oversampling_dft if algorithm == "dft"
                    else cfg.oversampling_mnomp)
    return TransferConfig(
        oversampling=oversampling,
        threshold=threshold,
        newton_rounds=cfg.newton_rounds,
        cyclic_rounds=cfg.cyclic_rounds,
        max_paths=cfg.max_paths,
        regularizer=cfg.regularizer,
    )


def _linear(db: float) -> float:
    return float(10.0 ** (db / 10.0))


def _powers(cfg: ExperimentConfig, snr_db: float) -> tuple[float, float, float]:
    """(pilot, uplink data, downlink) powers for one sweep point."""
    pilot = _linear(cfg.pilot_snr_db if cfg.pilot_snr_db is not None else snr_db)
    data = _linear(cfg.data_snr_db if cfg.data_snr_db is not None else snr_db)
    down = _linear(cfg.downlink_snr_db if cfg.downlink_snr_db is not None
                   else snr_db)
    return pilot, data, down


def _user_paths(cfg: ExperimentConfig, trial: int) -> list[PathSet]:
    lo, hi = np.deg2rad(cfg.angle_min_deg), np.deg2rad(cfg.angle_max_deg)
    powers = (np.asarray(cfg.path_powers)
              if cfg.path_powers is not None else None)
    return [
        draw_path_set(cfg.paths_per_user, lo, hi,
                      seed_stream(cfg.master_seed, trial, 1 + user), powers)
        for user in range(cfg.num_users)
    ]


def _estimate(cfg: ExperimentConfig, h_up: ChannelMatrix, pilot_power: float,
              rng: np.random.Generator) -> ChannelMatrix:
    if cfg.estimator == "perfect":
        return h_up
    pilots = generate_pilots(cfg.num_users,
                             cfg.pilot_length or cfg.num_users, pilot_power)
    y = received_pilot(h_up, pilots, NoiseModel(), rng)
    if cfg.estimator == "ls":
        return estimate_ls(y, pilots)
    return estimate_lmmse(y, pilots)


def _map_trials(fn, trials: int, workers: int) -> list:
    if workers <= 1:
        return [fn(t) for t in range(trials)]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, range(trials)))


def _mean_stderr(samples: np.ndarray) -> tuple[float, float]:
    samples = np.asarray(samples, dtype=float)
    mean = float(samples.mean())
    if samples.size < 2:
        return mean, 0.0
    return mean, float(samples.std(ddof=1) / np.sqrt(samples.size))


def _run_transfer_nmse(cfg: ExperimentConfig) -> ExperimentResult:
    geometry = ArrayGeometry(cfg.num_transmit, cfg.spacing)
    combos = [
        (snr, alg, kind, n)
        for snr in cfg.snr_db
        for alg in cfg.algorithm
        for kind in cfg.selection
        for n in cfg.num_receive
    ]
    rows = []
    for combo_index, (snr, alg, kind, n) in enumerate(combos):
        pilot_power, _, _ = _powers(cfg, snr)
        tconf = _transfer_config(cfg, alg, n, pilot_power)
        transfer = dft_transfer if alg == "dft" else mnomp_transfer

        def one_trial(trial: int) -> tuple[float, float, float]:
            rng = seed_stream(cfg.master_seed, trial, 1000 + combo_index)
            sel = make_selection(kind, cfg.num_transmit, n, rng,
                                 cfg.pinned_random)
            paths = _user_paths(cfg, trial)
            h_up, h_down = user_channels(paths, sel, geometry)
            est = _estimate(cfg, h_up, pilot_power, rng)
            ratios = np.zeros(cfg.num_users)
            found = np.zeros(cfg.num_users)
            start = perf_counter() if cfg.measure_runtime else 0.0
            for user in range(cfg.num_users):
                result = transfer(est.data[:, user], sel, geometry, tconf)
                ratios[user] = nmse(result.downlink_estimate,
                                    h_down.data[user])
                found[user] = result.paths_found
            elapsed_us = ((perf_counter() - start) * 1e6 / cfg.num_users
                          if cfg.measure_runtime else np.nan)
            return float(ratios.mean()), float(found.mean()), elapsed_us

        outcomes = _map_trials(one_trial, cfg.trials, cfg.workers)
        ratios = np.array([o[0] for o in outcomes])
        found = np.array([o[1] for o in outcomes])
        runtimes = np.array([o[2] for o in outcomes])
        mean_ratio, ratio_err = _mean_stderr(ratios)
        # delta-method transfer of the linear-domain error into dB
        nmse_db_err = (10.0 / np.log(10.0) * ratio_err / mean_ratio
                       if mean_ratio > 0 else 0.0)
        rows.append((
            float(snr), alg, kind, n,
            float(10.0 * np.log10(mean_ratio)),
            float(found.mean()),
            float(np.mean(runtimes)) if cfg.measure_runtime else float("nan"),
            float(nmse_db_err),
            cfg.trials,
        ))
    return ExperimentResult(
        "transfer-nmse",
        ("snr_db", "algorithm", "selection", "N", "nmse_db",
         "mean_paths_found", "mean_runtime_us", "nmse_db_stderr", "trials"),
        tuple(rows),
    )


def _uplink_se_trial(cfg: ExperimentConfig, trial: int, stream_index: int,
                     kind: str, num_receive: int, pilot_power: float,
                     data_power: float) -> float:
    geometry = ArrayGeometry(cfg.num_transmit, cfg.spacing)
    rng = seed_stream(cfg.master_seed, trial, stream_index)
    sel = make_selection(kind, cfg.num_transmit, num_receive, rng,
                         cfg.pinned_random)
    paths = _user_paths(cfg, trial)
    h_up, _ = user_channels(paths, sel, geometry)
    est = _estimate(cfg, h_up, pilot_power, rng)
    sinr = uplink_sinr(est, h_up, data_power, cfg.detector)
    return float(np.log2(1.0 + sinr).sum())


def _run_se(cfg: ExperimentConfig) -> ExperimentResult:
    if cfg.link == "uplink":
        return _run_se_uplink(cfg)
    return _run_se_downlink(cfg)


def _run_se_uplink(cfg: ExperimentConfig) -> ExperimentResult:
    rows = []
    combos = [(snr, kind) for snr in cfg.snr_db for kind in cfg.selection]
    n = cfg.num_receive[0]
    for combo_index, (snr, kind) in enumerate(combos):
        pilot_power, data_power, _ = _powers(cfg, snr)

        def one_trial(trial: int) -> float:
            return _uplink_se_trial(cfg, trial, 1000 + combo_index, kind, n,
                                    pilot_power, data_power)

        mean, err = _mean_stderr(
            np.array(_map_trials(one_trial, cfg.trials, cfg.workers))
        )
        rows.append((float(snr), kind, cfg.detector, mean, err, cfg.trials))
    return ExperimentResult(
        "se",
        ("snr_db", "selection", "detector", "se_bits", "se_bits_stderr",
         "trials"),
        tuple(rows),
    )


def _downlink_se_system(cfg: ExperimentConfig, system: str, trial: int,
                        stream_index: int, snr: float) -> float:
    """One trial's downlink system SE for one architecture under test."""
    pilot_power, _, down_power = _powers(cfg, snr)
    rng = seed_stream(cfg.master_seed, trial, stream_index)
    paths = _user_paths(cfg, trial)
    m, n = cfg.num_transmit, cfg.num_receive[0]
    precode = zf_precoder if cfg.precoder == "zf" else mrt_precoder

    if system in ("full_digital_n",):
        # the N-antenna full digital BS is a smaller array; its own channel
        geometry = ArrayGeometry(n, cfg.spacing)
        sel = make_selection("successive", n, n)
    else:
        geometry = ArrayGeometry(m, cfg.spacing)
        sel = None
    if system == "asym":
        sel = make_selection(cfg.selection[0], m, n, rng, cfg.pinned_random)
    elif system == "full_digital_m":
        sel = make_selection("successive", m, m)

    if system == "perfect_csi_m":
        _, h_down = user_channels(paths, make_selection("successive", m, m),
                                  geometry)
        w = precode(h_down)
        _, system_se = downlink_se(h_down, w, down_power)
        return system_se

    h_up, h_down = user_channels(paths, sel, geometry)
    est = _estimate(cfg, h_up, pilot_power, rng)
    if system == "asym":
        tconf = _transfer_config(cfg, cfg.algorithm[0], n, pilot_power)
        transfer = dft_transfer if cfg.algorithm[0] == "dft" else mnomp_transfer
        rows = [transfer(est.data[:, k], sel, geometry, tconf).downlink_estimate
                for k in range(cfg.num_users)]
        down_est = ChannelMatrix(np.stack(rows, axis=0), "downlink")
    else:
        # full digital: the uplink estimate is the downlink estimate
        down_est = ChannelMatrix(est.data.T, "downlink")
    # a user whose estimate fell below the transfer threshold gets no
    # beam and zero rate; the rest are precoded as usual
    active = np.linalg.norm(down_est.data, axis=1) > 0.0
    if not np.any(active):
        return 0.0
    if not np.all(active):
        w = precode(ChannelMatrix(down_est.data[active], "downlink"))
        _, system_se = downlink_se(h_down.data[active], w, down_power)
        return system_se
    w = precode(down_est)
    _, system_se = downlink_se(h_down, w, down_power)
    return system_se


def _run_se_downlink(cfg: ExperimentConfig) -> ExperimentResult:
    rows = []
    combos = [(snr, system) for snr in cfg.snr_db for system in cfg.systems]
    for combo_index, (snr, system) in enumerate(combos):

        def one_trial(trial: int) -> float:
            return _downlink_se_system(cfg, system, trial,
                                       1000 + combo_index, snr)

        mean, err = _mean_stderr(
            np.array(_map_trials(one_trial, cfg.trials, cfg.workers))
        )
        algorithm = cfg.algorithm[0] if system == "asym" else "none"
        rows.append((float(snr), system, cfg.precoder, algorithm, mean, err,
                     cfg.trials))
    return ExperimentResult(
        "se",
        ("snr_db", "system", "precoder", "transfer_algorithm", "se_bits",
         "se_bits_stderr", "trials"),
        tuple(rows),
    )


def _run_ee(cfg: ExperimentConfig) -> ExperimentResult:
    """Energy efficiency of the asymmetrical BS vs both full digital sizes."""
    profile = HardwareProfile()
    m, n = cfg.num_transmit, cfg.num_receive[0]
    arch_map = {
        "asym": Architecture("adbn", m, n),
        "full_digital_m": Architecture("dbm", m, m),
        "full_digital_n": Architecture("dbm", n, n),
    }
    uplink_setup = {
        # (selection kind, M, N) driving each system's uplink
        "asym": (cfg.selection[0], m, n),
        "full_digital_m": ("successive", m, m),
        "full_digital_n": ("successive", n, n),
    }
    rows = []
    combo_index = 0
    for snr in cfg.snr_db:
        pilot_power, data_power, _ = _powers(cfg, snr)
        for system, arch in arch_map.items():
            kind, sys_m, sys_n = uplink_setup[system]
            up_cfg = replace(cfg, num_transmit=sys_m, num_receive=(sys_n,))
            up_index = 1000 + combo_index

            def one_up(trial: int) -> float:
                return _uplink_se_trial(up_cfg, trial, up_index, kind, sys_n,
                                        pilot_power, data_power)

            dn_index = 1000 + combo_index + 1

            def one_dn(trial: int) -> float:
                return _downlink_se_system(cfg, system, trial, dn_index, snr)

            se_up, up_err = _mean_stderr(
                np.array(_map_trials(one_up, cfg.trials, cfg.workers)))
            se_dn, dn_err = _mean_stderr(
                np.array(_map_trials(one_dn, cfg.trials, cfg.workers)))
            p_bs = power(arch, profile, cfg.slot_ratio)
            ee = energy_efficiency(se_up, se_dn, cfg.slot_ratio, p_bs,
                                   cfg.bandwidth_hz)
            ee_err = (cfg.bandwidth_hz / p_bs) * float(np.hypot(
                cfg.slot_ratio * up_err, (1.0 - cfg.slot_ratio) * dn_err))
            rows.append((float(snr), system, se_up, se_dn, p_bs, ee, up_err,
                         dn_err, ee_err, cfg.trials))
            combo_index += 2
    return ExperimentResult(
        "ee",
        ("snr_db", "system", "se_uplink", "se_downlink", "power_w",
         "ee_bits_per_joule", "se_uplink_stderr", "se_downlink_stderr",
         "ee_stderr", "trials"),
        tuple(rows),
    )


# --------------------------------------------------------------------------
# formatting helpers


def _format_cell(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        v = float(value)
        if np.isnan(v):
            return "nan"
        if np.isinf(v):
            return "inf" if v > 0 else "-inf"
        return f"{v:.9g}"
    return str(value)


def _require(condition: bool, fieldname: str, message: str) -> None:
    if not condition:
        raise ConfigError(f"config.{fieldname}: {message}")
