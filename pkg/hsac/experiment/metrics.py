"""
Learning-curve rows, run records, moving averages and per-cell summaries.

A grid that sweeps alpha or tau_gumbel adds `alpha` and `tau_gumbel`
columns after `ng` in every CSV file; otherwise the files carry only
the base columns.
"""

import logging
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from ..agents.enums import AgentVariant
from ..env.oracle import optimal_return_oracle
from ..env.sdp import EnvConfig
from ..utils.csvio import parse_optional_float, read_csv, write_csv

logger = logging.getLogger("hsac")

METRICS_HEADER = ("variant", "ng", "seed", "episode", "reward", "moving_avg", "partial_window", "env_steps", "ms")
SUMMARY_HEADER = ("variant", "ng", "mean_final", "stderr", "oracle_ratio", "failed_runs")
RUNS_HEADER = (
    "variant",
    "ng",
    "seed",
    "run_seed",
    "episodes",
    "env_steps",
    "truncated_episodes",
    "skipped_updates",
    "status",
    "error",
)
SWEEP_COLUMNS = ("alpha", "tau_gumbel")

STATUS_COMPLETED = "completed"
STATUS_FAILED = "failed"

# (variant, ng, alpha, tau_gumbel)
Cell = Tuple[str, int, Optional[float], Optional[float]]


def variant_rank(variant: str) -> int:
    """Position of a variant in declaration order, used for row ordering"""
    return [v.value for v in AgentVariant].index(variant)


def with_sweep_columns(header: Sequence[str], sweep: bool) -> Tuple[str, ...]:
    if not sweep:
        return tuple(header)
    at = header.index("ng") + 1
    return tuple(header[:at]) + SWEEP_COLUMNS + tuple(header[at:])


def _axis(value: Optional[float]) -> float:
    return -1.0 if value is None else value


def _sweep_from_csv(row: Dict[str, str]) -> Dict[str, Optional[float]]:
    return {name: parse_optional_float(row.get(name, "")) for name in SWEEP_COLUMNS}


@dataclass(frozen=True)
class MetricRow:
    """One episode of one run"""

    variant: str
    ng: int
    seed: int
    episode: int
    reward: float
    moving_avg: float
    partial_window: bool
    env_steps: int
    ms: int
    alpha: Optional[float] = None
    tau_gumbel: Optional[float] = None

    @property
    def cell(self) -> Cell:
        return (self.variant, self.ng, self.alpha, self.tau_gumbel)

    def sort_key(self) -> Tuple[int, int, float, float, int, int]:
        return (
            variant_rank(self.variant),
            self.ng,
            _axis(self.alpha),
            _axis(self.tau_gumbel),
            self.seed,
            self.episode,
        )

    @classmethod
    def from_csv(cls, row: Dict[str, str]) -> "MetricRow":
        return cls(
            variant=row["variant"],
            ng=int(row["ng"]),
            seed=int(row["seed"]),
            episode=int(row["episode"]),
            reward=float(row["reward"]),
            moving_avg=float(row["moving_avg"]),
            partial_window=row["partial_window"] == "1",
            env_steps=int(row["env_steps"]),
            ms=int(row["ms"]),
            **_sweep_from_csv(row),
        )


@dataclass(frozen=True)
class RunRecord:
    """Bookkeeping of one (variant, n_g, alpha, tau, seed) run"""

    variant: str
    ng: int
    seed: int
    run_seed: int
    episodes: int
    env_steps: int
    truncated_episodes: int
    skipped_updates: int
    status: str
    error: str = ""
    alpha: Optional[float] = None
    tau_gumbel: Optional[float] = None

    @property
    def completed(self) -> bool:
        return self.status == STATUS_COMPLETED

    @property
    def cell(self) -> Cell:
        return (self.variant, self.ng, self.alpha, self.tau_gumbel)

    def sort_key(self) -> Tuple[int, int, float, float, int]:
        return (variant_rank(self.variant), self.ng, _axis(self.alpha), _axis(self.tau_gumbel), self.seed)

    @classmethod
    def from_csv(cls, row: Dict[str, str]) -> "RunRecord":
        return cls(
            variant=row["variant"],
            ng=int(row["ng"]),
            seed=int(row["seed"]),
            run_seed=int(row["run_seed"]),
            episodes=int(row["episodes"]),
            env_steps=int(row["env_steps"]),
            truncated_episodes=int(row["truncated_episodes"]),
            skipped_updates=int(row["skipped_updates"]),
            status=row["status"],
            error=row["error"],
            **_sweep_from_csv(row),
        )


@dataclass(frozen=True)
class SummaryRow:
    """Final performance of one grid cell; None when no seed completed"""

    variant: str
    ng: int
    mean_final: Optional[float]
    stderr: Optional[float]
    oracle_ratio: Optional[float]
    failed_runs: int
    alpha: Optional[float] = None
    tau_gumbel: Optional[float] = None

    @classmethod
    def from_csv(cls, row: Dict[str, str]) -> "SummaryRow":
        return cls(
            variant=row["variant"],
            ng=int(row["ng"]),
            mean_final=parse_optional_float(row["mean_final"]),
            stderr=parse_optional_float(row["stderr"]),
            oracle_ratio=parse_optional_float(row["oracle_ratio"]),
            failed_runs=int(row["failed_runs"]),
            **_sweep_from_csv(row),
        )


def moving_average(series: Sequence[float], window: int) -> List[float]:
    """
    Trailing mean: element i averages the last min(i + 1, window) values

    Raises:
        ValueError: If window < 1
    """
    if window < 1:
        raise ValueError(f"window must be >= 1, got {window}")
    values = np.asarray(series, dtype=np.float64)
    return [float(values[max(0, i + 1 - window) : i + 1].mean()) for i in range(len(values))]


def default_oracle(n_g: int) -> float:
    return optimal_return_oracle(EnvConfig(n_g))


def summarize(
    rows: Iterable[MetricRow],
    runs: Optional[Iterable[RunRecord]] = None,
    oracle: Callable[[int], float] = default_oracle,
) -> List[SummaryRow]:
    """
    Mean and standard error of the final moving average across seeds

    Failed runs are excluded from the mean and counted. A cell whose
    runs all failed is reported with empty statistics.

    Args:
        rows: Learning-curve rows
        runs: Run records; every seed present in rows counts as completed when omitted
        oracle: Optimal expected return per n_g, for the normalized score
    """
    final: Dict[Tuple[Cell, int], MetricRow] = {}
    for row in rows:
        key = (row.cell, row.seed)
        if key not in final or row.episode > final[key].episode:
            final[key] = row

    failed: Dict[Cell, int] = {}
    completed_seeds: Optional[set] = None
    if runs is not None:
        completed_seeds = set()
        for run in runs:
            failed.setdefault(run.cell, 0)
            if run.completed:
                completed_seeds.add((run.cell, run.seed))
            else:
                failed[run.cell] += 1

    finals: Dict[Cell, List[Tuple[int, float]]] = {cell: [] for cell in failed}
    for (cell, seed), row in final.items():
        if completed_seeds is not None and (cell, seed) not in completed_seeds:
            continue
        finals.setdefault(cell, []).append((seed, row.moving_avg))

    summaries = []
    order = sorted(finals, key=lambda c: (variant_rank(c[0]), c[1], _axis(c[2]), _axis(c[3])))
    for cell in order:
        variant, ng, alpha, tau = cell
        values = np.array([v for _, v in sorted(finals[cell])])
        n_failed = failed.get(cell, 0)
        if values.size == 0:
            logger.warning(f"[Harness] No completed run for {variant} ng={ng}; summary left empty")
            summaries.append(SummaryRow(variant, ng, None, None, None, n_failed, alpha, tau))
            continue
        mean = float(values.mean())
        stderr = float(values.std(ddof=1) / np.sqrt(values.size)) if values.size > 1 else 0.0
        summaries.append(SummaryRow(variant, ng, mean, stderr, mean / oracle(ng), n_failed, alpha, tau))
    return summaries


def write_metrics(path: Path, rows: Iterable[MetricRow], sweep: bool = False) -> Path:
    return write_csv(path, with_sweep_columns(METRICS_HEADER, sweep), (asdict(r) for r in rows))


def write_summary(path: Path, rows: Iterable[SummaryRow], sweep: bool = False) -> Path:
    return write_csv(path, with_sweep_columns(SUMMARY_HEADER, sweep), (asdict(r) for r in rows))


def write_runs(path: Path, runs: Iterable[RunRecord], sweep: bool = False) -> Path:
    return write_csv(path, with_sweep_columns(RUNS_HEADER, sweep), (asdict(r) for r in runs))


def read_metrics(path: Path) -> List[MetricRow]:
    return [MetricRow.from_csv(row) for row in read_csv(path)]


def read_summary(path: Path) -> List[SummaryRow]:
    return [SummaryRow.from_csv(row) for row in read_csv(path)]


def read_runs(path: Path) -> List[RunRecord]:
    return [RunRecord.from_csv(row) for row in read_csv(path)]
