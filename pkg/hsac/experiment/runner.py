"""
Seeded training runs and the experiment grid.

Each (variant, n_g, alpha, tau, seed) run is a training_run job; the job
manager runs up to `workers` of them concurrently and a single collector
orders the rows and writes the CSV files once every run has finished.
Swept cells share the seed of their (variant, n_g, seed) coordinates, so
the runs along an alpha or tau axis see the same random streams.
"""

import asyncio
import logging
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import IO, TYPE_CHECKING, Dict, List, Optional

from ..agents.enums import AgentVariant
from ..agents.factory import AgentFactory
from ..agents.rollout import run_episode
from ..env.sdp import EnvConfig, TraceWriter
from ..errors import ConfigurationError
from ..utils.seeding import derive_run_seed, spawn_generators
from .config import ExperimentConfig
from .metrics import (
    STATUS_COMPLETED,
    STATUS_FAILED,
    MetricRow,
    RunRecord,
    SummaryRow,
    moving_average,
    summarize,
    write_metrics,
    write_runs,
    write_summary,
)

if TYPE_CHECKING:
    from ..jobs.base import TrainingRunJob

logger = logging.getLogger("hsac")

METRICS_FILE = "metrics.csv"
SUMMARY_FILE = "summary.csv"
RUNS_FILE = "runs.csv"
TRACES_DIR = "traces"


@dataclass
class RunResult:
    """Rows and bookkeeping of one run; rows are partial when the run failed"""

    record: RunRecord
    rows: List[MetricRow] = field(default_factory=list)

    @property
    def completed(self) -> bool:
        return self.record.completed

    def to_dict(self) -> Dict[str, object]:
        """Compact view for job results"""
        final = self.rows[-1].moving_avg if self.rows else None
        return {
            "variant": self.record.variant,
            "ng": self.record.ng,
            "seed": self.record.seed,
            "alpha": self.record.alpha,
            "tau_gumbel": self.record.tau_gumbel,
            "run_seed": self.record.run_seed,
            "episodes": self.record.episodes,
            "env_steps": self.record.env_steps,
            "truncated_episodes": self.record.truncated_episodes,
            "skipped_updates": self.record.skipped_updates,
            "status": self.record.status,
            "error": self.record.error,
            "final_moving_avg": final,
        }


def trace_path(
    output_dir: Path,
    variant: AgentVariant,
    n_g: int,
    seed_index: int,
    alpha: Optional[float] = None,
    tau_gumbel: Optional[float] = None,
) -> Path:
    sweep = ""
    if alpha is not None or tau_gumbel is not None:
        sweep = f"_alpha{alpha!r}_tau{tau_gumbel!r}"
    return output_dir / TRACES_DIR / f"{variant.value}_ng{n_g}{sweep}_seed{seed_index}.tsv"


def execute_training_run(
    variant: AgentVariant,
    n_g: int,
    seed_index: int,
    config: ExperimentConfig,
    run_seed: Optional[int] = None,
    alpha: Optional[float] = None,
    tau_gumbel: Optional[float] = None,
) -> RunResult:
    """
    Train one fresh agent for episodes_per_run episodes

    An exception raised while training aborts the run: the rows produced
    so far are kept and the record carries the failure marker. A
    non-finite loss is the expected cause.

    Args:
        variant: Agent to train
        n_g: Chain length
        seed_index: Index of the seed within the grid
        config: Experiment configuration
        run_seed: Seed of the run; derived from the grid coordinates when omitted
        alpha: Sweep point on the alpha axis; config.hyperparams.alpha when omitted
        tau_gumbel: Sweep point on the tau axis; config.hyperparams.tau_gumbel when omitted
    """
    if run_seed is None:
        run_seed = derive_run_seed(config.base_seed, variant.value, n_g, seed_index)
    alpha = config.hyperparams.alpha if alpha is None else alpha
    tau_gumbel = config.hyperparams.tau_gumbel if tau_gumbel is None else tau_gumbel
    hyperparams = config.cell_hyperparams(alpha, tau_gumbel)
    # Rows carry the sweep point only when the grid has a swept axis
    row_alpha = alpha if config.sweeps else None
    row_tau = tau_gumbel if config.sweeps else None

    label = f"[{variant.value}:ng={n_g}:seed={seed_index}]"
    if config.sweeps:
        label = f"[{variant.value}:ng={n_g}:alpha={alpha!r}:tau={tau_gumbel!r}:seed={seed_index}]"
    env_config = EnvConfig(n_g, config.step_cap_factor * n_g)
    agent_rng, env_rng = spawn_generators(run_seed)
    agent = AgentFactory.create_agent(variant, n_g, hyperparams, agent_rng)

    rewards: List[float] = []
    env_steps: List[int] = []
    elapsed_ms: List[int] = []
    truncated = 0
    status = STATUS_COMPLETED
    error = ""
    start = time.perf_counter()

    trace_stream: Optional[IO[str]] = None
    trace: Optional[TraceWriter] = None
    if config.dump_traces:
        path = trace_path(config.output_path, variant, n_g, seed_index, row_alpha, row_tau)
        path.parent.mkdir(parents=True, exist_ok=True)
        trace_stream = path.open("w", encoding="utf-8", newline="")
        trace = TraceWriter(trace_stream)

    logger.info(f"{label} Starting run (run_seed={run_seed}, {config.episodes_per_run} episodes)")
    try:
        total_steps = 0
        for episode in range(config.episodes_per_run):
            result = run_episode(agent, env_config, env_rng, train=True, trace=trace, episode=episode)
            total_steps += result.steps
            truncated += int(result.truncated)
            rewards.append(result.reward)
            env_steps.append(total_steps)
            elapsed_ms.append(int((time.perf_counter() - start) * 1000) if config.record_timing else 0)
            logger.debug(f"{label} episode {episode}: reward={result.reward!r} steps={result.steps}")
    except Exception as e:
        status = STATUS_FAILED
        error = f"{type(e).__name__}: {e}"
        outcome = "diverged" if isinstance(e, ArithmeticError) else "failed"
        logger.error(f"{label} Run {outcome} after {len(rewards)} episodes: {error}", exc_info=True)
    finally:
        if trace_stream is not None:
            trace_stream.close()

    averages = moving_average(rewards, config.window)
    rows = [
        MetricRow(
            variant=variant.value,
            ng=n_g,
            seed=seed_index,
            episode=i,
            reward=rewards[i],
            moving_avg=averages[i],
            partial_window=i + 1 < config.window,
            env_steps=env_steps[i],
            ms=elapsed_ms[i],
            alpha=row_alpha,
            tau_gumbel=row_tau,
        )
        for i in range(len(rewards))
    ]
    record = RunRecord(
        variant=variant.value,
        ng=n_g,
        seed=seed_index,
        run_seed=run_seed,
        episodes=len(rewards),
        env_steps=env_steps[-1] if env_steps else 0,
        truncated_episodes=truncated,
        skipped_updates=agent.skipped_updates,
        status=status,
        error=error,
        alpha=row_alpha,
        tau_gumbel=row_tau,
    )
    if truncated:
        logger.warning(f"{label} {truncated} episodes hit the step cap")
    if agent.skipped_updates:
        logger.warning(f"{label} {agent.skipped_updates} Adam updates skipped on non-finite gradients")
    if rows:
        logger.info(f"{label} Finished {status}: final window mean {rows[-1].moving_avg:.4f}")
    return RunResult(record, rows)


def failed_run(job: "TrainingRunJob", config: ExperimentConfig) -> RunResult:
    """Failure record for a job that produced no run at all"""
    assert job.variant is not None
    return RunResult(
        RunRecord(
            variant=job.variant.value,
            ng=job.n_g,
            seed=job.seed_index,
            run_seed=job.run_seed,
            episodes=0,
            env_steps=0,
            truncated_episodes=0,
            skipped_updates=0,
            status=STATUS_FAILED,
            error=job.error or "Job produced no run",
            alpha=job.alpha if config.sweeps else None,
            tau_gumbel=job.tau_gumbel if config.sweeps else None,
        )
    )


@dataclass
class ExperimentOutcome:
    """What run_experiment wrote"""

    metrics_path: Path
    summary_path: Path
    runs_path: Path
    rows: List[MetricRow]
    runs: List[RunRecord]
    summary: List[SummaryRow]


def prepare_output_dir(config: ExperimentConfig) -> Path:
    """
    Create the output directory and check that it is writable

    Raises:
        ConfigurationError: If the directory cannot be created or written
    """
    out = config.output_path
    try:
        out.mkdir(parents=True, exist_ok=True)
        marker = out / ".write_check"
        marker.write_text("", encoding="utf-8")
        marker.unlink()
    except OSError as e:
        raise ConfigurationError(f"Output directory {out} is not writable: {e}")
    return out


def collect(results: List[RunResult], out: Path, sweep: bool = False) -> ExperimentOutcome:
    """Order every row by (variant, n_g, alpha, tau, seed, episode) and write the CSV files"""
    rows = sorted((row for result in results for row in result.rows), key=MetricRow.sort_key)
    runs = sorted((result.record for result in results), key=RunRecord.sort_key)
    summary = summarize(rows, runs)
    outcome = ExperimentOutcome(
        metrics_path=write_metrics(out / METRICS_FILE, rows, sweep),
        summary_path=write_summary(out / SUMMARY_FILE, summary, sweep),
        runs_path=write_runs(out / RUNS_FILE, runs, sweep),
        rows=rows,
        runs=runs,
        summary=summary,
    )
    failed = sum(1 for run in runs if not run.completed)
    logger.info(
        f"[Harness] Wrote {len(rows)} rows for {len(runs)} runs ({failed} failed) to {out}"
    )
    return outcome


async def run_experiment(config: ExperimentConfig) -> ExperimentOutcome:
    """
    Run every cell of the grid and write the outputs

    A job that fails outright is recorded as a failed run with the job
    error as its reason; the other runs are written as usual.

    Raises:
        ConfigurationError: If the output directory is unusable
    """
    # Import here to avoid circular imports
    from ..jobs.base import TrainingRunJob
    from ..jobs.enums import JobType
    from ..jobs.manager import JobManager
    from ..processors import register_processors

    out = prepare_output_dir(config)
    register_processors()
    manager = JobManager(max_history=config.total_runs, workers=config.workers)
    logger.info(
        f"[Harness] Starting {config.total_runs} runs with {config.workers} worker(s): "
        f"variants={[v.value for v in config.variants]} ng={list(config.ng_values)} "
        f"alpha={list(config.alpha_grid)} tau={list(config.tau_grid)} seeds={config.seeds}"
    )

    jobs = []
    for variant in config.variants:
        for n_g in config.ng_values:
            for alpha in config.alpha_grid:
                for tau_gumbel in config.tau_grid:
                    for seed_index in range(config.seeds):
                        jobs.append(
                            manager.submit_job(
                                JobType.TRAINING_RUN,
                                variant=variant,
                                n_g=n_g,
                                seed_index=seed_index,
                                run_seed=derive_run_seed(config.base_seed, variant.value, n_g, seed_index),
                                config=config,
                                alpha=alpha,
                                tau_gumbel=tau_gumbel,
                            )
                        )
    await manager.wait_all()

    results = []
    for job in jobs:
        assert isinstance(job, TrainingRunJob)
        if job.run is None:
            logger.error(f"{job.label} produced no run: {job.error}")
            results.append(failed_run(job, config))
        else:
            results.append(job.run)
    return collect(results, out, config.sweeps)


def run_experiment_sync(config: ExperimentConfig) -> ExperimentOutcome:
    """Blocking wrapper around run_experiment"""
    return asyncio.run(run_experiment(config))
