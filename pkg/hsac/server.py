"""
MCP server implementation for HSAC.
"""

import logging
from collections.abc import AsyncIterator
from contextlib import asynccontextmanager
from typing import Any, Dict, List, Optional

from mcp.server.fastmcp import Context, FastMCP

from .agents.enums import AgentVariant
from .env.oracle import optimal_return_oracle
from .env.sdp import EnvConfig
from .errors import ConfigurationError
from .experiment.config import load_config
from .jobs.enums import JobStatus, JobType
from .jobs.manager import JobManager
from .processors import register_processors
from .utils.seeding import derive_run_seed

logger = logging.getLogger("hsac")


@asynccontextmanager
async def server_lifespan(server: FastMCP) -> AsyncIterator[Dict[str, Any]]:
    """
    Manage server startup and shutdown lifecycle.

    Yields:
        Dictionary with initialized resources
    """
    job_manager = JobManager()
    logger.info("[Server] Job manager initialized")

    try:
        yield {"job_manager": job_manager}
    finally:
        logger.info("[Server] Shutting down")


def create_server() -> FastMCP:
    """
    Create and configure the HSAC MCP server

    Returns:
        Configured FastMCP server instance
    """
    mcp = FastMCP("HSAC", lifespan=server_lifespan)

    register_processors()

    @mcp.tool()
    async def submit_training_run(
        variant: str,
        ng: int,
        ctx: Context,
        seed: int = 0,
        episodes: int = 500,
        base_seed: int = 0,
        alpha: Optional[float] = None,
        tau_gumbel: Optional[float] = None,
        learning_rate: Optional[float] = None,
        hidden_width: Optional[int] = None,
    ) -> Dict[str, Any]:
        """
        Submit one seeded training run

        Args:
            variant: "hdqn", "entropy_sac", "mi_sac" or "adversarial_mi_sac"
            ng: Chain length (>= 3)
            seed: Seed index within the grid
            episodes: Number of training episodes
            base_seed: Base seed the run seed is derived from
            alpha: Optional entropy / information temperature
            tau_gumbel: Optional Gumbel-Softmax temperature
            learning_rate: Optional Adam learning rate
            hidden_width: Optional hidden layer width

        Returns:
            Dictionary with job ID for checking results later
        """
        job_manager = ctx.request_context.lifespan_context["job_manager"]

        try:
            variant_enum = AgentVariant.from_string(variant)
            overrides: Dict[str, Any] = {
                "variants": (variant_enum,),
                "ng_values": (ng,),
                "seeds": seed + 1,
                "episodes_per_run": episodes,
                "base_seed": base_seed,
            }
            for key, value in (
                ("alpha", alpha),
                ("tau_gumbel", tau_gumbel),
                ("learning_rate", learning_rate),
                ("hidden_width", hidden_width),
            ):
                if value is not None:
                    overrides[key] = value
            config = load_config(overrides=overrides)
        except (ValueError, ConfigurationError) as e:
            logger.warning(f"[Server] Invalid training run request: {e}")
            return {"status": "error", "message": str(e)}

        job = job_manager.submit_job(
            JobType.TRAINING_RUN,
            variant=variant_enum,
            n_g=ng,
            seed_index=seed,
            run_seed=derive_run_seed(base_seed, variant_enum.value, ng, seed),
            config=config,
        )
        logger.info(f"{job.label} Submitted training run ({variant_enum.value}, ng={ng}, seed={seed})")

        return {
            "status": "accepted",
            "job_id": job.id,
            "job_type": job.job_type.value,
            "message": "Training run submitted. Use get_job_results to check status.",
        }

    @mcp.tool()
    async def submit_gradcheck(ctx: Context, instances: int = 10, seed: int = 0) -> Dict[str, Any]:
        """
        Submit a finite-difference check of every agent objective

        Args:
            instances: Number of random network instances
            seed: Seed of the instance generator

        Returns:
            Dictionary with job ID for checking results later
        """
        job_manager = ctx.request_context.lifespan_context["job_manager"]

        if instances < 1:
            logger.warning(f"[Server] Invalid instance count: {instances}")
            return {"status": "error", "message": "instances must be a positive integer"}

        job = job_manager.submit_job(JobType.GRADCHECK, instances=instances, seed=seed)
        logger.info(f"{job.label} Submitted gradient check ({instances} instances)")

        return {
            "status": "accepted",
            "job_id": job.id,
            "job_type": job.job_type.value,
            "message": "Gradient check submitted. Use get_job_results to check status.",
        }

    @mcp.tool()
    async def get_job_results(job_id: str, ctx: Context) -> Dict[str, Any]:
        """
        Get the results of a previously submitted job

        Args:
            job_id: ID of the job

        Returns:
            Dictionary with job status and results if available
        """
        job_manager = ctx.request_context.lifespan_context["job_manager"]
        job = job_manager.get_job(job_id)

        if not job:
            logger.warning(f"[Job] Requested unknown job: {job_id}")
            return {"status": "error", "message": f"No job found with ID: {job_id}"}

        logger.info(f"{job.label} Status check: {job.status.value}")

        if job.status == JobStatus.COMPLETED:
            return {
                "status": "completed",
                "job_type": job.job_type.value,
                "results": job.result,
                "execution_time": job.execution_time,
            }
        elif job.status == JobStatus.FAILED:
            return {
                "status": "failed",
                "job_type": job.job_type.value,
                "error": job.error,
                "execution_time": job.execution_time,
            }
        return {
            "status": job.status.value,
            "job_type": job.job_type.value,
            "message": f"Job is {job.status.value}. Please check again later.",
        }

    @mcp.tool()
    async def list_jobs(ctx: Context, job_type: Optional[str] = None) -> Dict[str, Any]:
        """
        List all jobs and their statuses

        Args:
            job_type: Optional filter for job type

        Returns:
            Dictionary with list of jobs and their statuses
        """
        job_manager = ctx.request_context.lifespan_context["job_manager"]

        job_type_enum = None
        if job_type:
            try:
                job_type_enum = JobType.from_string(job_type)
            except ValueError:
                return {"status": "error", "message": f"Invalid job type: {job_type}"}

        return {
            "jobs": job_manager.list_jobs(job_type_enum),
            "stats": job_manager.get_stats(),
        }

    @mcp.tool()
    async def oracle_values(ng_values: List[int]) -> Dict[str, Any]:
        """
        Optimal expected external reward from the start state

        Args:
            ng_values: Chain lengths to solve

        Returns:
            Dictionary mapping each n_g to its optimal return
        """
        try:
            values = {str(n): optimal_return_oracle(EnvConfig(n)) for n in ng_values}
        except ConfigurationError as e:
            return {"status": "error", "message": str(e)}
        logger.info(f"[Oracle] Solved ng={list(ng_values)}")
        return {"status": "completed", "values": values}

    return mcp
