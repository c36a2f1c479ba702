#!/usr/bin/env python3
"""
HSAC - hierarchical soft actor-critic testbed

Trains the HDQN baseline and the entropy, mutual-information and
adversarial mutual-information soft actor-critic agents on the
stochastic decision process, writes seeded learning curves as CSV, and
serves the same harness as MCP tools.
"""

import argparse
import logging
import os
import signal
import sys


# Handle SIGINT (Ctrl+C) gracefully
def signal_handler(sig, frame):
    print("Shutting down gracefully...")
    sys.exit(0)


signal.signal(signal.SIGINT, signal_handler)

# Configure logging
logging.basicConfig(
    level=logging.INFO,
    format="[%(asctime)s] [%(levelname)s] [%(name)s] %(message)s",
    datefmt="%Y-%m-%d %H:%M:%S",
)
logger = logging.getLogger("hsac")

# Create a file handler for persistent logs if running in a writable directory
try:
    os.makedirs("logs", exist_ok=True)
    file_handler = logging.FileHandler("logs/hsac.log")
    file_handler.setFormatter(
        logging.Formatter("[%(asctime)s] [%(levelname)s] [%(name)s] %(message)s")
    )
    logger.addHandler(file_handler)
except (PermissionError, OSError):
    # Skip file logging if we can't write to the directory
    logger.warning("Could not create log directory. File logging disabled.")

from hsac.agents.enums import AgentVariant
from hsac.env.oracle import optimal_return_oracle
from hsac.env.sdp import EnvConfig
from hsac.errors import HsacError
from hsac.experiment.config import load_config
from hsac.experiment.gradcheck_suite import run_gradient_suite
from hsac.experiment.runner import run_experiment_sync
from hsac.server import create_server

# Create the server at module level with a standard name that MCP CLI can find
server = create_server()


def _int_list(text: str):
    return tuple(int(item) for item in text.split(",") if item.strip())


def _float_list(text: str):
    return tuple(float(item) for item in text.split(",") if item.strip())


def _variant_list(text: str):
    return tuple(AgentVariant.from_string(item) for item in text.split(",") if item.strip())


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(description="HSAC - hierarchical soft actor-critic testbed")
    parser.add_argument("--debug", action="store_true", help="Enable debug logging")
    commands = parser.add_subparsers(dest="command", required=True)

    run = commands.add_parser("run", help="Run the (variant x n_g x alpha x tau x seed) experiment grid")
    run.add_argument("--config", help="Flat key = value config file")
    run.add_argument("--variant", type=_variant_list, help="Comma-separated agent variants")
    run.add_argument("--ng", type=_int_list, help="Comma-separated chain lengths")
    run.add_argument("--seeds", type=int, help="Seeds per (variant, n_g) cell")
    run.add_argument("--episodes", type=int, help="Episodes per run")
    run.add_argument("--alpha", type=_float_list, help="Comma-separated temperatures; several values sweep them")
    run.add_argument("--tau", type=_float_list, help="Comma-separated Gumbel temperatures; several values sweep them")
    run.add_argument("--out", help="Output directory")
    run.add_argument("--workers", type=int, help="Concurrent runs")
    run.add_argument("--dump-traces", action="store_true", default=None, help="Write per-step traces")

    oracle = commands.add_parser("oracle", help="Print the optimal expected return per n_g")
    oracle.add_argument("--ng", type=_int_list, default=(6, 8, 12, 18), help="Comma-separated chain lengths")

    gradcheck = commands.add_parser("gradcheck", help="Run the finite-difference gradient suite")
    gradcheck.add_argument("--instances", type=int, default=100, help="Random instances (default: 100)")
    gradcheck.add_argument("--seed", type=int, default=0, help="Instance seed (default: 0)")

    serve = commands.add_parser("serve", help="Serve the harness as MCP tools")
    serve.add_argument("--streamable-http", action="store_true", help="Run with streamable-http transport")
    serve.add_argument("--host", default="0.0.0.0", help="Host to bind (default: 0.0.0.0)")
    serve.add_argument("--port", type=int, default=8000, help="Port to bind (default: 8000)")
    return parser


def command_run(args: argparse.Namespace) -> int:
    flags = {
        "variants": args.variant,
        "ng_values": args.ng,
        "seeds": args.seeds,
        "episodes_per_run": args.episodes,
        "alpha": args.alpha,
        "tau_gumbel": args.tau,
        "output_dir": args.out,
        "workers": args.workers,
        "dump_traces": args.dump_traces,
    }
    config = load_config(args.config, {k: v for k, v in flags.items() if v is not None})
    outcome = run_experiment_sync(config)
    for row in outcome.summary:
        mean = "n/a" if row.mean_final is None else f"{row.mean_final:.4f} +/- {row.stderr:.4f}"
        sweep = "" if row.alpha is None else f" alpha={row.alpha!r} tau={row.tau_gumbel!r}"
        print(f"{row.variant:>20} ng={row.ng:<3}{sweep} final={mean} failed={row.failed_runs}")
    return 0


def command_oracle(args: argparse.Namespace) -> int:
    for n_g in args.ng:
        print(f"ng={n_g} optimal_return={optimal_return_oracle(EnvConfig(n_g))!r}")
    return 0


def command_gradcheck(args: argparse.Namespace) -> int:
    report = run_gradient_suite(args.instances, args.seed)
    for name, error in report.max_errors.items():
        print(f"{name:>26} max_rel_error={error:.3e} failures={report.failures[name]}")
    print(f"passed={report.passed} rejected={report.rejected} seconds={report.seconds:.1f}")
    return 0 if report.passed else 1


def command_serve(args: argparse.Namespace) -> int:
    if args.streamable_http:
        server.settings.host = args.host
        server.settings.port = args.port
        server.run(transport="streamable-http")
    else:
        logger.info("[Server] Starting HSAC MCP server with stdio transport")
        server.run()
    return 0


def main():
    """Main entry point for the HSAC command line"""
    args = build_parser().parse_args()

    # Set debug logging if requested
    if args.debug:
        logger.setLevel(logging.DEBUG)
        logger.debug("Debug logging enabled")

    handlers = {
        "run": command_run,
        "oracle": command_oracle,
        "gradcheck": command_gradcheck,
        "serve": command_serve,
    }
    try:
        sys.exit(handlers[args.command](args))
    except HsacError as e:
        logger.error(f"[Harness] {e}")
        sys.exit(2)
    except Exception as e:
        logger.critical(f"[Harness] Fatal error: {str(e)}", exc_info=True)
        sys.exit(1)


if __name__ == "__main__":
    main()
