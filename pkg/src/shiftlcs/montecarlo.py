"""Reproducible Monte Carlo experiments over random and shifted words.

Each experiment is described by an ExperimentConfig; trial i draws all of
its randomness from SeedSpec(master_seed, i), so runs replay bit-identically
for any worker count: trials fan out by index and records are reduced in
index order. Records serialize to CSV and summaries to JSON with the full
config embedded for replay.
"""

from __future__ import annotations

import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, replace
from typing import Any

from .bounds import (
    GammaTable,
    boris_bound,
    boriseasy_bound,
    gamma_bracket,
    theorem1_bound,
    theorem2_bound,
)
from .geometry import classify_min_span, span_of
from .lcs import KERNELS, lcs_witness
from .words import SeedSpec, make_shifted_pair, random_word

CONFIG_VERSION = 1

KIND_LN = "ln"
KIND_SHIFT = "shift"
KIND_GAMMA_SWEEP = "gamma_sweep"
KIND_TAILS = "tails"
KIND_BLOCKSUM = "blocksum"
KIND_LEMMA4 = "lemma4"

KINDS = (KIND_LN, KIND_SHIFT, KIND_GAMMA_SWEEP, KIND_TAILS, KIND_BLOCKSUM, KIND_LEMMA4)

# Expected ceiling for sample std of the LCS length divided by sqrt(n).
DEFAULT_STD_SCALE_LIMIT = 2.0

# Per-trial sub-stream ids. The baseline lanes are disjoint from the primary
# ones so a baseline never reuses randomness from the run it is compared to.
_LANE_PRIMARY = 0
_LANE_SECOND = 1
_LANE_BASELINE_V = 2
_LANE_BASELINE_W = 3


class ConfigError(ValueError):
    """Invalid or inconsistent experiment configuration."""


class InternalCheckError(RuntimeError):
    """A per-record invariant failed during an experiment."""


@dataclass(frozen=True)
class ExperimentConfig:
    kind: str
    k: int = 2
    n: int = 100
    s: int = 0
    trials: int = 100
    master_seed: int = 0
    eps: float = 0.01
    kernel: str = "bitparallel"
    block_len: int = 0
    m: int = 0
    lam_grid: tuple[float, ...] = ()
    thresholds: tuple[float, ...] = ()
    gamma: float | None = None
    c_k: float = 1.0
    ks: tuple[int, ...] = ()
    emit_alignment: bool = False
    baseline: bool = False

    def validate(self) -> None:
        if self.kind not in KINDS:
            raise ConfigError(f"unknown experiment kind {self.kind!r}")
        if self.trials < 1:
            raise ConfigError("trials must be at least 1")
        if not 0 <= self.master_seed < 2**64:
            raise ConfigError("master_seed must be a 64-bit unsigned integer")
        if self.kernel not in KERNELS:
            raise ConfigError(f"unknown kernel {self.kernel!r}")
        if not 0 < self.eps < 1:
            raise ConfigError("eps must lie in (0, 1)")
        if self.c_k <= 0:
            raise ConfigError("c_k must be positive")
        if self.kind in (KIND_LN, KIND_SHIFT, KIND_TAILS, KIND_BLOCKSUM):
            if self.k < 1 or self.n < 0:
                raise ConfigError("require k >= 1 and n >= 0")
        if self.kind in (KIND_SHIFT, KIND_TAILS, KIND_BLOCKSUM):
            if not 0 <= self.s <= self.n:
                raise ConfigError("shift must satisfy 0 <= s <= n")
        if self.kind == KIND_BLOCKSUM and self.block_len < 1:
            raise ConfigError("block_len must be at least 1")
        if self.kind == KIND_LEMMA4:
            if self.m < 1 or self.k < 1:
                raise ConfigError("lemma4 requires m >= 1 and k >= 1")
            if any(lam < 0 for lam in self.lam_grid):
                raise ConfigError("lambda grid entries must be nonnegative")
        if self.kind == KIND_GAMMA_SWEEP:
            if not self.ks:
                raise ConfigError("gamma_sweep requires a nonempty ks list")
            if any(k < 1 for k in self.ks):
                raise ConfigError("alphabet sizes must be at least 1")
            if 4.0 * math.sqrt(math.log(max(self.n, 2)) / max(self.n, 2)) >= 0.5:
                raise ConfigError("n too small for a meaningful bracket")
        if self.gamma is not None and not 0 < self.gamma <= 1:
            raise ConfigError("gamma must lie in (0, 1]")

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {"version": CONFIG_VERSION}
        out.update(asdict(self))
        for key in ("lam_grid", "thresholds", "ks"):
            out[key] = list(out[key])
        return out

    @classmethod
    def from_dict(cls, raw: dict[str, Any]) -> "ExperimentConfig":
        data = dict(raw)
        version = data.pop("version", None)
        if version != CONFIG_VERSION:
            raise ConfigError(f"unsupported config version {version!r}")
        known = set(cls.__dataclass_fields__)
        unknown = set(data) - known
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        if "kind" not in data:
            raise ConfigError("config requires a kind")
        for key in ("lam_grid", "thresholds", "ks"):
            if key in data:
                data[key] = tuple(data[key])
        try:
            config = cls(**data)
        except TypeError as exc:
            raise ConfigError(str(exc)) from exc
        config.validate()
        return config


@dataclass(frozen=True)
class TrialRecord:
    """One Monte Carlo observation, replayable from its seed echo."""

    trial_index: int
    values: dict[str, Any]
    seed: str


@dataclass
class SummaryStats:
    count: int
    mean: float
    std: float
    min: float
    max: float
    std_degenerate: bool = False
    tail_freqs: dict[str, float] | None = None
    gamma_bracket: tuple[float, float] | None = None
    extras: dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {
            "count": self.count,
            "mean": self.mean,
            "std": self.std,
            "std_degenerate": self.std_degenerate,
            "min": self.min,
            "max": self.max,
        }
        if self.tail_freqs is not None:
            out["tail_freqs"] = self.tail_freqs
        if self.gamma_bracket is not None:
            out["gamma_bracket"] = list(self.gamma_bracket)
        out.update(self.extras)
        return out


def _basic_stats(xs: list[float]) -> tuple[float, float, bool]:
    mean = math.fsum(xs) / len(xs)
    if len(xs) < 2:
        return mean, 0.0, True
    var = math.fsum((x - mean) ** 2 for x in xs) / (len(xs) - 1)
    return mean, math.sqrt(var), False


def record_columns(config: ExperimentConfig) -> list[str]:
    """CSV column order for one experiment kind."""
    if config.kind == KIND_BLOCKSUM:
        return ["trial", "block_sum", "full_length", "seed"]
    if config.kind == KIND_LEMMA4:
        return ["trial", "wait_sum", "seed"]
    cols = ["trial", "length"]
    if config.kind == KIND_SHIFT and config.emit_alignment:
        cols += ["min_span", "case"]
    return cols + ["seed"]


def _trial_ln(config: ExperimentConfig, t: int) -> TrialRecord:
    seed = SeedSpec(config.master_seed, t)
    v = random_word(config.k, config.n, seed.child(_LANE_PRIMARY))
    w = random_word(config.k, config.n, seed.child(_LANE_SECOND))
    length = KERNELS[config.kernel](v, w)
    return TrialRecord(t, {"length": length}, seed.echo())


def _trial_shift(config: ExperimentConfig, t: int) -> TrialRecord:
    seed = SeedSpec(config.master_seed, t)
    pair = make_shifted_pair(config.k, config.n, config.s, seed.child(_LANE_PRIMARY))
    length = KERNELS[config.kernel](pair.v, pair.w)
    values: dict[str, Any] = {"length": length}
    if config.emit_alignment:
        witness = lcs_witness(pair.v, pair.w)
        if witness.edges:
            values["min_span"] = min(span_of(e, config.s) for e in witness.edges)
            values["case"] = classify_min_span(
                witness, config.s, config.n, config.eps
            ).value
        else:
            values["min_span"] = ""
            values["case"] = "empty"
    return TrialRecord(t, values, seed.echo())


def _trial_baseline_ln(config: ExperimentConfig, t: int) -> int:
    seed = SeedSpec(config.master_seed, t)
    v = random_word(config.k, config.n, seed.child(_LANE_BASELINE_V))
    w = random_word(config.k, config.n, seed.child(_LANE_BASELINE_W))
    return KERNELS[config.kernel](v, w)


def _trial_blocksum(config: ExperimentConfig, t: int) -> TrialRecord:
    seed = SeedSpec(config.master_seed, t)
    pair = make_shifted_pair(config.k, config.n, config.s, seed.child(_LANE_PRIMARY))
    kernel = KERNELS[config.kernel]
    n, bl = config.n, config.block_len
    block_sum = 0
    for start in range(0, n, bl):
        stop = min(start + bl, n)
        block_sum += kernel(pair.v.window(start, stop), pair.w.window(start, stop))
    full = kernel(pair.v, pair.w)
    if block_sum > full:
        raise InternalCheckError(
            f"trial {t}: block sum {block_sum} exceeds full LCS {full}"
        )
    return TrialRecord(t, {"block_sum": block_sum, "full_length": full}, seed.echo())


def _trial_lemma4(config: ExperimentConfig, t: int) -> TrialRecord:
    seed = SeedSpec(config.master_seed, t)
    rng = seed.child(_LANE_PRIMARY).rng()
    wait_sum = int(rng.geometric(1.0 / config.k, size=config.m).sum())
    return TrialRecord(t, {"wait_sum": wait_sum}, seed.echo())


_TRIAL_FNS = {
    KIND_LN: _trial_ln,
    KIND_SHIFT: _trial_shift,
    KIND_TAILS: _trial_shift,
    KIND_BLOCKSUM: _trial_blocksum,
    KIND_LEMMA4: _trial_lemma4,
}


def _run_one(args: tuple[ExperimentConfig, int]) -> TrialRecord:
    config, t = args
    return _TRIAL_FNS[config.kind](config, t)


def _collect_records(config: ExperimentConfig, workers: int) -> list[TrialRecord]:
    tasks = [(config, t) for t in range(config.trials)]
    if workers <= 1 or config.trials == 1:
        return [_run_one(task) for task in tasks]
    chunk = max(1, config.trials // (workers * 4))
    with ProcessPoolExecutor(max_workers=workers) as pool:
        records = list(pool.map(_run_one, tasks, chunksize=chunk))
    records.sort(key=lambda r: r.trial_index)
    return records


def _summarize_lengths(config: ExperimentConfig, records: list[TrialRecord]) -> SummaryStats:
    xs = [float(r.values["length"]) for r in records]
    mean, std, degenerate = _basic_stats(xs)
    return SummaryStats(
        count=len(xs),
        mean=mean,
        std=std,
        std_degenerate=degenerate,
        min=min(xs),
        max=max(xs),
    )


def run_experiment(
    config: ExperimentConfig, workers: int = 1
) -> tuple[list[TrialRecord], SummaryStats]:
    """Run any per-trial experiment kind and reduce it to summary statistics."""
    config.validate()
    if config.kind == KIND_GAMMA_SWEEP:
        raise ConfigError("gamma_sweep runs through run_gamma_sweep")
    records = _collect_records(config, workers)

    if config.kind == KIND_LN:
        summary = _summarize_lengths(config, records)
        if config.n >= 2:
            summary.gamma_bracket = gamma_bracket(config.n, summary.mean)
        return records, summary

    if config.kind in (KIND_SHIFT, KIND_TAILS):
        overlap = config.n - config.s
        floor_violations = [
            r.trial_index for r in records if r.values["length"] < overlap
        ]
        if floor_violations:
            raise InternalCheckError(
                f"SHIFT floor violated at trials {floor_violations[:5]}"
            )
        summary = _summarize_lengths(config, records)
        summary.extras["overlap"] = overlap
        summary.extras["mean_minus_overlap"] = summary.mean - overlap
        if config.baseline:
            base = [float(_trial_baseline_ln(config, t)) for t in range(config.trials)]
            bmean, bstd, _ = _basic_stats(base)
            summary.extras["baseline_mean"] = bmean
            summary.extras["baseline_std"] = bstd
            summary.extras["mean_minus_baseline"] = summary.mean - bmean
        if config.kind == KIND_TAILS:
            summary.extras["tail_table"] = _tail_table(config, records)
        return records, summary

    if config.kind == KIND_BLOCKSUM:
        xs = [float(r.values["block_sum"]) for r in records]
        fulls = [float(r.values["full_length"]) for r in records]
        mean, std, degenerate = _basic_stats(xs)
        fmean, _, _ = _basic_stats(fulls)
        summary = SummaryStats(
            count=len(xs),
            mean=mean,
            std=std,
            std_degenerate=degenerate,
            min=min(xs),
            max=max(xs),
            extras={"mean_full": fmean, "mean_gap": fmean - mean},
        )
        return records, summary

    # lemma4
    xs = [float(r.values["wait_sum"]) for r in records]
    mean, std, degenerate = _basic_stats(xs)
    summary = SummaryStats(
        count=len(xs),
        mean=mean,
        std=std,
        std_degenerate=degenerate,
        min=min(xs),
        max=max(xs),
        extras={"curve": _lemma4_curve(config, records)},
    )
    return records, summary


def run_ln(config: ExperimentConfig, workers: int = 1):
    if config.kind != KIND_LN:
        raise ConfigError("run_ln requires kind='ln'")
    return run_experiment(config, workers)


def run_shift(config: ExperimentConfig, workers: int = 1):
    if config.kind != KIND_SHIFT:
        raise ConfigError("run_shift requires kind='shift'")
    return run_experiment(config, workers)


def run_blocksum(config: ExperimentConfig, workers: int = 1):
    if config.kind != KIND_BLOCKSUM:
        raise ConfigError("run_blocksum requires kind='blocksum'")
    return run_experiment(config, workers)


def run_lemma4(config: ExperimentConfig, workers: int = 1):
    if config.kind != KIND_LEMMA4:
        raise ConfigError("run_lemma4 requires kind='lemma4'")
    return run_experiment(config, workers)


def _default_tail_thresholds(n: int) -> tuple[float, ...]:
    t1 = math.ceil(6.0 * math.sqrt(n))
    t2 = math.ceil(5.0 * n**0.75 * math.sqrt(math.log(n)))
    return (float(t1), float(2 * t1), float(t2))


def _tail_table(config: ExperimentConfig, records: list[TrialRecord]) -> list[dict]:
    gamma = config.gamma
    if gamma is None:
        gamma = GammaTable().midpoint(config.k)
    thresholds = config.thresholds or _default_tail_thresholds(config.n)
    lengths = [r.values["length"] for r in records]
    n, s = config.n, config.s
    rows = []
    for t in thresholds:
        upper_cut = max(n - s + 1, gamma * n + t)
        lower_cut = gamma * n - t
        upper_freq = sum(1 for x in lengths if x >= upper_cut) / len(lengths)
        lower_freq = sum(1 for x in lengths if x <= lower_cut) / len(lengths)
        ub = theorem1_bound(n, t, config.c_k)
        lb = theorem2_bound(n, t, config.c_k)
        rows.append(
            {
                "t": t,
                "gamma": gamma,
                "upper_cut": upper_cut,
                "upper_freq": upper_freq,
                "upper_bound": ub.value,
                "upper_in_regime": ub.in_regime,
                "lower_cut": lower_cut,
                "lower_freq": lower_freq,
                "lower_bound": lb.value,
                "lower_in_regime": lb.in_regime,
            }
        )
    return rows


def run_tails(
    config: ExperimentConfig,
    thresholds: tuple[float, ...] | None = None,
    workers: int = 1,
):
    """SHIFT experiment plus empirical-vs-bound tail table."""
    if config.kind != KIND_TAILS:
        raise ConfigError("run_tails requires kind='tails'")
    if thresholds is not None:
        config = replace(config, thresholds=tuple(thresholds))
    return run_experiment(config, workers)


def _lemma4_curve(config: ExperimentConfig, records: list[TrialRecord]) -> list[dict]:
    xs = [r.values["wait_sum"] for r in records]
    grid = config.lam_grid or (0.0, 0.25, 0.5, 1.0)
    rows = []
    for lam in grid:
        cut = config.m * (config.k - lam)
        freq = sum(1 for x in xs if x <= cut) / len(xs)
        rows.append(
            {
                "lambda": lam,
                "cut": cut,
                "empirical": freq,
                "boris": boris_bound(config.m, config.k, lam),
                "boriseasy": boriseasy_bound(config.m, config.k, lam),
            }
        )
    return rows


@dataclass(frozen=True)
class GammaSweepRow:
    k: int
    gamma_low: float
    gamma_high: float
    gamma_sqrtk: float


def run_gamma_sweep(
    ks,
    n: int,
    trials: int,
    master_seed: int,
    kernel: str = "bitparallel",
    workers: int = 1,
) -> list[GammaSweepRow]:
    """Bracket the limit constant per alphabet size and scale by sqrt(k)."""
    # Validates the sweep-level constraints (nonempty ks, n large enough for
    # a bracket narrower than 0.5) before any trials run.
    ExperimentConfig(
        kind=KIND_GAMMA_SWEEP,
        n=n,
        trials=trials,
        master_seed=master_seed,
        kernel=kernel,
        ks=tuple(ks),
    ).validate()
    rows = []
    for k in ks:
        config = ExperimentConfig(
            kind=KIND_LN,
            k=k,
            n=n,
            trials=trials,
            master_seed=master_seed,
            kernel=kernel,
        )
        _, summary = run_experiment(config, workers)
        low, high = summary.gamma_bracket
        rows.append(GammaSweepRow(k, low, high, low * math.sqrt(k)))
    return rows


def format_records_csv(records: list[TrialRecord], columns: list[str]) -> str:
    """Serialize records with LF endings and '.' decimal points."""
    lines = [",".join(columns)]
    for r in records:
        row = []
        for col in columns:
            if col == "trial":
                row.append(str(r.trial_index))
            elif col == "seed":
                row.append(r.seed)
            else:
                row.append(str(r.values[col]))
        lines.append(",".join(row))
    return "\n".join(lines) + "\n"


def write_records_csv(path, records: list[TrialRecord], columns: list[str]) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(format_records_csv(records, columns))


def summary_document(config: ExperimentConfig, summary: SummaryStats) -> str:
    """JSON summary with stable key order, embedding the config for replay."""
    payload = {
        "config": config.to_dict(),
        "summary": summary.to_dict(),
    }
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def write_summary(path, config: ExperimentConfig, summary: SummaryStats) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(summary_document(config, summary))


def load_config(text: str) -> ExperimentConfig:
    """Parse a config JSON document, or the config embedded in a summary."""
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config is not valid JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise ConfigError("config JSON must be an object")
    if "config" in raw and isinstance(raw["config"], dict):
        raw = raw["config"]
    return ExperimentConfig.from_dict(raw)
