"""
Finite-difference verification of every trained objective.

Each instance draws small random networks and a random batch, freezes
the Gumbel noise, and compares tape gradients with central differences
for the critic residuals and the policy objectives of every variant.
"""

import logging
import time
from dataclasses import dataclass, field
from typing import Callable, Dict, List

import numpy as np

from ..agents.base import NUM_ACTIONS, Encoder
from ..agents.enums import AgentVariant, Reparameterization
from ..agents.hyperparams import Hyperparams
from ..agents.objectives import (
    ControllerPolicyBatch,
    MetaPolicyBatch,
    controller_policy_objective,
    meta_policy_objective,
    q_regression_objective,
)
from ..autodiff.gradcheck import grad_check
from ..autodiff.mlp import Head, MlpParams, evaluate_logits, hidden_preactivations, init_mlp
from ..autodiff.tape import Tape, Var
from ..dist.categorical import log_softmax_of, softmax_of

logger = logging.getLogger("hsac")

DEFAULT_TOLERANCE = 1e-4
DEFAULT_EPS = 1e-5
KINK_MARGIN = 1e-3
# below this scale, rounding in the loss dominates the central difference
SUITE_FLOOR = 1e-7
MAX_ATTEMPTS = 1000

OBJECTIVES = (
    "controller_q",
    "controller_policy_entropy",
    "controller_policy_mi",
    "meta_q",
    "meta_policy_entropy",
    "meta_policy_adversarial",
)


@dataclass
class GradcheckReport:
    """Worst relative error per objective over the checked instances"""

    instances: int
    tolerance: float
    max_errors: Dict[str, float] = field(default_factory=dict)
    failures: Dict[str, int] = field(default_factory=dict)
    rejected: int = 0
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return all(count == 0 for count in self.failures.values())

    def to_dict(self) -> Dict[str, object]:
        return {
            "instances": self.instances,
            "tolerance": self.tolerance,
            "max_errors": dict(self.max_errors),
            "failures": dict(self.failures),
            "rejected": self.rejected,
            "seconds": self.seconds,
            "passed": self.passed,
        }


@dataclass
class _Instance:
    encoder: Encoder
    q1: MlpParams
    phi: MlpParams
    q2: MlpParams
    nu: MlpParams
    positions: np.ndarray
    goals: np.ndarray
    actions: np.ndarray
    q1_targets: np.ndarray
    q2_targets: np.ndarray
    controller_batch: ControllerPolicyBatch
    meta_batch: MetaPolicyBatch


def _near_kink(params: MlpParams, inputs: np.ndarray) -> bool:
    return any(np.any(np.abs(z) < KINK_MARGIN) for z in hidden_preactivations(params, inputs))


def draw_instance(rng: np.random.Generator, hidden: int = 5, batch: int = 3) -> _Instance:
    """Random tiny networks over a random small chain, with a random batch"""
    n_g = int(rng.integers(3, 6))
    encoder = Encoder(n_g, observe_visited=bool(rng.integers(2)))
    c_in, m_in = encoder.controller_input_size, encoder.observation_size
    q1 = init_mlp([c_in, hidden, hidden, NUM_ACTIONS], Head.LINEAR, rng)
    phi = init_mlp([c_in, hidden, hidden, NUM_ACTIONS], Head.SOFTMAX, rng)
    q2 = init_mlp([m_in, hidden, hidden, n_g], Head.LINEAR, rng)
    nu = init_mlp([m_in, hidden, hidden, n_g], Head.SOFTMAX, rng)
    for params in (q1, phi, q2, nu):
        # non-zero biases keep one-hot inputs away from exact ReLU kinks
        for layer in params.layers:
            layer.bias[...] = rng.normal(0.0, 0.5, size=layer.bias.shape)

    positions = rng.integers(1, n_g + 1, size=batch)
    goals = rng.integers(1, n_g + 1, size=batch)
    visited = rng.integers(0, 2, size=batch).astype(bool)
    actions = rng.integers(0, NUM_ACTIONS, size=batch)

    controller_inputs = encoder.controller_inputs(positions, goals, visited)
    all_goal_inputs = encoder.all_goal_inputs(positions, visited)
    observations = encoder.observations(positions, visited)
    table_logits = evaluate_logits(phi, all_goal_inputs).reshape(batch, n_g, NUM_ACTIONS)

    return _Instance(
        encoder=encoder,
        q1=q1,
        phi=phi,
        q2=q2,
        nu=nu,
        positions=positions,
        goals=goals,
        actions=actions,
        q1_targets=rng.normal(size=batch),
        q2_targets=rng.normal(size=batch),
        controller_batch=ControllerPolicyBatch(
            inputs=controller_inputs,
            all_goal_inputs=all_goal_inputs,
            goal_probs=softmax_of(rng.normal(size=(batch, n_g))),
            q_values=rng.normal(size=(batch, NUM_ACTIONS)),
            noise=rng.gumbel(size=(batch, NUM_ACTIONS)),
        ),
        meta_batch=MetaPolicyBatch(
            inputs=observations,
            q_values=rng.normal(size=(batch, n_g)),
            noise=rng.gumbel(size=(batch, n_g)),
            controller_probs=softmax_of(table_logits),
            controller_log_probs=log_softmax_of(table_logits),
        ),
    )


def instance_is_smooth(instance: _Instance) -> bool:
    """False when some ReLU pre-activation sits within KINK_MARGIN of zero"""
    c = instance.controller_batch
    return not (
        _near_kink(instance.q1, c.inputs)
        or _near_kink(instance.phi, c.inputs)
        or _near_kink(instance.phi, c.all_goal_inputs)
        or _near_kink(instance.q2, instance.meta_batch.inputs)
        or _near_kink(instance.nu, instance.meta_batch.inputs)
    )


def objective_checks(
    instance: _Instance, hp: Hyperparams
) -> Dict[str, Callable[[float], float]]:
    """Named closures running grad_check with a given step"""
    inputs = instance.controller_batch.inputs
    obs = instance.meta_batch.inputs

    def check(params: MlpParams, build: Callable[[Tape], Var]) -> Callable[[float], float]:
        return lambda eps: grad_check(params, build, eps, floor=SUITE_FLOOR)

    return {
        "controller_q": check(
            instance.q1,
            lambda tape: q_regression_objective(tape, instance.q1, inputs, instance.actions, instance.q1_targets),
        ),
        "controller_policy_entropy": check(
            instance.phi,
            lambda tape: controller_policy_objective(
                tape, instance.phi, instance.controller_batch, hp, AgentVariant.ENTROPY_SAC
            ),
        ),
        "controller_policy_mi": check(
            instance.phi,
            lambda tape: controller_policy_objective(
                tape, instance.phi, instance.controller_batch, hp, AgentVariant.MI_SAC
            ),
        ),
        "meta_q": check(
            instance.q2,
            lambda tape: q_regression_objective(tape, instance.q2, obs, instance.goals - 1, instance.q2_targets),
        ),
        "meta_policy_entropy": check(
            instance.nu,
            lambda tape: meta_policy_objective(tape, instance.nu, instance.meta_batch, hp, AgentVariant.ENTROPY_SAC),
        ),
        "meta_policy_adversarial": check(
            instance.nu,
            lambda tape: meta_policy_objective(
                tape, instance.nu, instance.meta_batch, hp, AgentVariant.ADVERSARIAL_MI_SAC
            ),
        ),
    }


def run_gradient_suite(
    instances: int = 100,
    seed: int = 0,
    eps: float = DEFAULT_EPS,
    tolerance: float = DEFAULT_TOLERANCE,
) -> GradcheckReport:
    """
    Check every objective on `instances` random smooth instances

    Args:
        instances: Number of accepted instances
        seed: Seed of the instance generator
        eps: Central-difference step
        tolerance: Largest accepted relative error
    """
    rng = np.random.default_rng(seed)
    hp = Hyperparams(alpha=0.5, tau_gumbel=0.7, reparameterization=Reparameterization.GUMBEL)
    report = GradcheckReport(instances, tolerance, {name: 0.0 for name in OBJECTIVES}, {name: 0 for name in OBJECTIVES})
    start = time.perf_counter()

    accepted: List[_Instance] = []
    attempts = 0
    while len(accepted) < instances:
        attempts += 1
        if attempts > MAX_ATTEMPTS * max(1, instances):
            raise RuntimeError("Could not draw smooth gradient-check instances")
        instance = draw_instance(rng)
        if instance_is_smooth(instance):
            accepted.append(instance)
        else:
            report.rejected += 1

    for instance in accepted:
        for name, check in objective_checks(instance, hp).items():
            error = check(eps)
            report.max_errors[name] = max(report.max_errors[name], error)
            if error > tolerance:
                report.failures[name] += 1
                logger.warning(f"[Gradcheck] {name}: relative error {error:.3e} exceeds {tolerance:.0e}")

    report.seconds = time.perf_counter() - start
    logger.info(
        f"[Gradcheck] {instances} instances ({report.rejected} rejected) in {report.seconds:.1f}s, "
        f"passed={report.passed}, worst={max(report.max_errors.values()):.3e}"
    )
    return report
