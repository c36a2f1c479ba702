"""
Soft values, Bellman targets and the objectives of the controller and
meta-controller.

Values and targets are computed on plain arrays so they never carry
gradients. Objectives are tape expressions; the update functions take
one Adam step on them.

Shapes: B = batch, G = number of goals, A = number of actions.
"""

from dataclasses import dataclass
from typing import Callable, Optional, Union

import numpy as np

from ..autodiff import ops
from ..autodiff.adam import AdamState, adam_step
from ..autodiff.mlp import DropoutMask, MlpParams, forward, forward_logits
from ..autodiff.tape import Tape, Tensor, Var
from ..dist.categorical import entropy_of, mutual_information_of
from ..dist.differentiable import entropy_var, mutual_information_var
from ..dist.gumbel import relaxed_sample
from .enums import AgentVariant, Reparameterization
from .hyperparams import Hyperparams

ArrayOrFloat = Union[Tensor, float]


def controller_value_v1(
    goal_probs: Tensor,
    action_probs: Tensor,
    q_values: Tensor,
    alpha: float,
    variant: AgentVariant,
) -> Tensor:
    """
    Soft state value of the controller, with next goals enumerated under pi_g

    MI variants: E_g E_a[Q1] - alpha * I(a; g | s).
    Entropy variant: E_g (E_a[Q1] + alpha * H(pi_ag(.|s, g))).

    Args:
        goal_probs: (B, G) pi_g(.|s)
        action_probs: (B, G, A) pi_ag(.|s, g)
        q_values: (B, G, A) Q1(g, s, .) in evaluation mode

    Returns:
        (B,) values
    """
    per_goal_q = (action_probs * q_values).sum(axis=-1)
    expected_q = (goal_probs * per_goal_q).sum(axis=-1)
    if variant is AgentVariant.ENTROPY_SAC:
        bonus = (goal_probs * entropy_of(action_probs)).sum(axis=-1)
        return expected_q + alpha * bonus
    return expected_q - alpha * mutual_information_of(goal_probs, action_probs)


def controller_q_target(
    internal_reward: ArrayOrFloat, v1_next: ArrayOrFloat, done: Union[np.ndarray, bool], gamma: float
) -> ArrayOrFloat:
    """r + gamma * V1(s'), with no bootstrap past episode end"""
    return internal_reward + gamma * np.where(done, 0.0, v1_next)


def meta_value_v2(
    goal_probs: Tensor,
    q_values: Tensor,
    alpha: float,
    variant: AgentVariant,
    action_probs: Optional[Tensor] = None,
) -> Tensor:
    """
    Soft state value of the meta-controller

    Adversarial variant: E_g[Q2] + alpha * I(a; g | s), which needs the
    controller table action_probs. Other variants: E_g[Q2] + alpha * H(pi_g).

    Args:
        goal_probs: (B, G) pi_g(.|s)
        q_values: (B, G) Q2(., s)
        action_probs: (B, G, A), adversarial variant only

    Returns:
        (B,) values
    """
    expected_q = (goal_probs * q_values).sum(axis=-1)
    if variant is AgentVariant.ADVERSARIAL_MI_SAC:
        if action_probs is None:
            raise ValueError("The adversarial meta value needs the controller policy table")
        return expected_q + alpha * mutual_information_of(goal_probs, action_probs)
    return expected_q + alpha * entropy_of(goal_probs)


def meta_q_target(
    external_return: ArrayOrFloat, v2_next: ArrayOrFloat, done: Union[np.ndarray, bool], gamma: float
) -> ArrayOrFloat:
    """f + gamma * V2(s'), with no bootstrap past episode end"""
    return external_return + gamma * np.where(done, 0.0, v2_next)


def q_regression_objective(
    tape: Tape,
    q_net: MlpParams,
    inputs: Tensor,
    indices: np.ndarray,
    targets: Tensor,
    mask: Optional[DropoutMask] = None,
) -> Var:
    """Soft Bellman residual: mean of 1/2 (Q(x, index) - target)^2"""
    q = forward(q_net, inputs, tape, mask)
    selected = np.eye(q_net.out_features)[np.asarray(indices, dtype=np.int64)]
    residual = ops.sub(ops.weighted_sum(q, selected), np.asarray(targets, dtype=np.float64))
    return ops.mean(ops.mul(ops.square(residual), 0.5))


def information_term(
    goal_probs: Var, action_probs: Var, action_log_probs: Var, alpha: float
) -> Var:
    """alpha * mean over the batch of I(a; g | s)"""
    return ops.mul(ops.mean(mutual_information_var(goal_probs, action_probs, action_log_probs)), alpha)


def controller_information_term(
    goal_probs: Var, action_probs: Var, action_log_probs: Var, alpha: float
) -> Var:
    """The controller minimizes information between goals and actions"""
    return information_term(goal_probs, action_probs, action_log_probs, alpha)


def meta_information_term(
    goal_probs: Var, action_probs: Var, action_log_probs: Var, alpha: float
) -> Var:
    """The adversarial meta-controller maximizes the same quantity"""
    return ops.neg(information_term(goal_probs, action_probs, action_log_probs, alpha))


def expected_q_term(
    logits: Var,
    probs: Var,
    q_values: Tensor,
    hp: Hyperparams,
    noise: Optional[Tensor],
) -> Var:
    """
    Batch mean of E_pi[Q]

    With the Gumbel estimator the expectation is taken under the relaxed
    sample softmax((logits + noise) / tau); otherwise under probs.
    """
    if hp.reparameterization is Reparameterization.GUMBEL:
        if noise is None:
            raise ValueError("Gumbel reparameterization needs a noise sample")
        weights = relaxed_sample(logits, hp.tau_gumbel, noise)
    else:
        weights = probs
    return ops.mean(ops.weighted_sum(weights, q_values))


@dataclass(frozen=True)
class ControllerPolicyBatch:
    """Everything the controller policy objective reads besides phi"""

    inputs: Tensor  # (B, in) encoded (s, g_t)
    all_goal_inputs: Tensor  # (B * G, in) encoded (s, g) for every goal
    goal_probs: Tensor  # (B, G) pi_g(.|s), held constant
    q_values: Tensor  # (B, A) Q1(g_t, s, .) in evaluation mode
    noise: Optional[Tensor] = None  # (B, A) Gumbel noise


@dataclass(frozen=True)
class MetaPolicyBatch:
    """Everything the meta policy objective reads besides nu"""

    inputs: Tensor  # (B, obs)
    q_values: Tensor  # (B, G) Q2(., s) in evaluation mode
    noise: Optional[Tensor] = None  # (B, G) Gumbel noise
    controller_probs: Optional[Tensor] = None  # (B, G, A), phi held constant
    controller_log_probs: Optional[Tensor] = None


def controller_policy_objective(
    tape: Tape,
    policy_phi: MlpParams,
    batch: ControllerPolicyBatch,
    hp: Hyperparams,
    variant: AgentVariant,
) -> Var:
    """
    Objective minimized by the controller policy

    MI variants: alpha * (H(E_g[pi_ag]) - E_g[H(pi_ag)]) - E[Q1].
    Entropy variant: -alpha * H(pi_ag) - E[Q1].
    """
    logits = forward_logits(policy_phi, batch.inputs, tape)
    probs = ops.softmax(logits)
    expected_q = expected_q_term(logits, probs, batch.q_values, hp, batch.noise)

    if variant.uses_information_bonus:
        num_states, num_goals = batch.goal_probs.shape
        all_logits = ops.reshape(
            forward_logits(policy_phi, batch.all_goal_inputs, tape),
            (num_states, num_goals, policy_phi.out_features),
        )
        bonus = controller_information_term(
            tape.constant(batch.goal_probs),
            ops.softmax(all_logits),
            ops.log_softmax(all_logits),
            hp.alpha,
        )
        return ops.sub(bonus, expected_q)

    entropy = ops.mean(entropy_var(probs, ops.log_softmax(logits)))
    return ops.sub(ops.neg(ops.mul(entropy, hp.alpha)), expected_q)


def meta_policy_objective(
    tape: Tape,
    policy_nu: MlpParams,
    batch: MetaPolicyBatch,
    hp: Hyperparams,
    variant: AgentVariant,
) -> Var:
    """
    Objective minimized by the meta-controller policy

    Adversarial variant: -alpha * I(a; g | s) - E[Q2], phi frozen.
    Other variants: -alpha * H(pi_g) - E[Q2].
    """
    logits = forward_logits(policy_nu, batch.inputs, tape)
    probs = ops.softmax(logits)
    expected_q = expected_q_term(logits, probs, batch.q_values, hp, batch.noise)

    if variant is AgentVariant.ADVERSARIAL_MI_SAC:
        if batch.controller_probs is None or batch.controller_log_probs is None:
            raise ValueError("The adversarial meta objective needs the controller policy table")
        bonus = meta_information_term(
            probs,
            tape.constant(batch.controller_probs),
            tape.constant(batch.controller_log_probs),
            hp.alpha,
        )
        return ops.sub(bonus, expected_q)

    entropy = ops.mean(entropy_var(probs, ops.log_softmax(logits)))
    return ops.sub(ops.neg(ops.mul(entropy, hp.alpha)), expected_q)


def descend(params: MlpParams, adam: AdamState, build: Callable[[Tape], Var]) -> float:
    """Build an objective on a fresh tape, take one Adam step, return its pre-step value"""
    tape = Tape()
    objective = build(tape)
    grads = tape.backward(objective)
    adam_step(params, grads.for_params(params), adam)
    return objective.item()


def controller_q_update(
    q1: MlpParams,
    adam: AdamState,
    inputs: Tensor,
    actions: np.ndarray,
    targets: Tensor,
    mask: Optional[DropoutMask] = None,
) -> float:
    """One Adam step of theta_1 on the soft Bellman residual; targets are constants"""
    return descend(q1, adam, lambda tape: q_regression_objective(tape, q1, inputs, actions, targets, mask))


def meta_q_update(
    q2: MlpParams,
    adam: AdamState,
    inputs: Tensor,
    goal_indices: np.ndarray,
    targets: Tensor,
    mask: Optional[DropoutMask] = None,
) -> float:
    """One Adam step of theta_2 on the soft Bellman residual; targets are constants"""
    return descend(q2, adam, lambda tape: q_regression_objective(tape, q2, inputs, goal_indices, targets, mask))


def controller_policy_update(
    policy_phi: MlpParams,
    adam: AdamState,
    batch: ControllerPolicyBatch,
    hp: Hyperparams,
    variant: AgentVariant,
) -> float:
    """One Adam step of phi; pi_g and Q1 enter as constants"""
    return descend(
        policy_phi,
        adam,
        lambda tape: controller_policy_objective(tape, policy_phi, batch, hp, variant),
    )


def meta_policy_update(
    policy_nu: MlpParams,
    adam: AdamState,
    batch: MetaPolicyBatch,
    hp: Hyperparams,
    variant: AgentVariant,
) -> float:
    """One Adam step of nu; the controller table and Q2 enter as constants"""
    return descend(
        policy_nu,
        adam,
        lambda tape: meta_policy_objective(tape, policy_nu, batch, hp, variant),
    )


def adversarial_meta_policy_update(
    policy_nu: MlpParams,
    adam: AdamState,
    batch: MetaPolicyBatch,
    hp: Hyperparams,
) -> float:
    """Meta step of the minimax game: raise I(a; g | s) + E[Q2] with phi frozen"""
    return meta_policy_update(policy_nu, adam, batch, hp, AgentVariant.ADVERSARIAL_MI_SAC)
