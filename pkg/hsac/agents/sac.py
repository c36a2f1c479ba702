"""
Hierarchical soft actor-critic agents: entropy, mutual information and
adversarial mutual information variants.

Each agent owns four networks: the controller policy phi and critic
theta_1 over (s, g), and the meta policy nu and critic theta_2 over s.
There are no target networks; bootstrap values are computed from the
live networks in evaluation mode.
"""

from typing import Dict, Optional, Tuple

import numpy as np

from ..autodiff.mlp import DropoutMask, Head, MlpParams, evaluate, evaluate_logits, init_mlp
from ..dist.categorical import log_softmax_of, softmax_of
from ..dist.gumbel import gumbel_noise, gumbel_softmax_sample
from ..env.sdp import EnvState
from .base import NUM_ACTIONS, HierarchicalAgent, TrainLosses
from .enums import AgentVariant, Reparameterization
from .objectives import (
    ControllerPolicyBatch,
    MetaPolicyBatch,
    adversarial_meta_policy_update,
    controller_policy_update,
    controller_q_target,
    controller_q_update,
    controller_value_v1,
    meta_policy_update,
    meta_q_target,
    meta_q_update,
    meta_value_v2,
)
from .replay import ControllerBatch, MetaBatch


class SacAgent(HierarchicalAgent):
    """Shared machinery of the three soft actor-critic variants"""

    variant = AgentVariant.ENTROPY_SAC

    def _build_networks(self) -> None:
        hidden = [self.hp.hidden_width] * self.hp.hidden_layers
        enc = self.encoder
        self.controller_policy = init_mlp(
            [enc.controller_input_size, *hidden, NUM_ACTIONS], Head.SOFTMAX, self.rng
        )
        self.controller_q = init_mlp(
            [enc.controller_input_size, *hidden, NUM_ACTIONS], Head.LINEAR, self.rng
        )
        self.meta_policy = init_mlp([enc.observation_size, *hidden, enc.num_goals], Head.SOFTMAX, self.rng)
        self.meta_q = init_mlp([enc.observation_size, *hidden, enc.num_goals], Head.LINEAR, self.rng)

    def networks(self) -> Dict[str, MlpParams]:
        return {
            "controller_policy": self.controller_policy,
            "controller_q": self.controller_q,
            "meta_policy": self.meta_policy,
            "meta_q": self.meta_q,
        }

    def _sample(self, logits: np.ndarray, rng: np.random.Generator, greedy: bool) -> int:
        if greedy:
            return int(np.argmax(logits))
        return gumbel_softmax_sample(logits, self.hp.tau_gumbel, rng).hard_index

    def pick_goal(self, state: EnvState, rng: np.random.Generator, greedy: bool = False) -> int:
        obs = self.encoder.observations(np.array([state.position]), np.array([state.visited_goal]))
        return self._sample(evaluate_logits(self.meta_policy, obs[0]), rng, greedy) + 1

    def act(self, state: EnvState, goal: int, rng: np.random.Generator, greedy: bool = False) -> int:
        inputs = self.encoder.controller_inputs(
            np.array([state.position]), np.array([goal]), np.array([state.visited_goal])
        )
        return self._sample(evaluate_logits(self.controller_policy, inputs[0]), rng, greedy)

    def _dropout(self, params: MlpParams, batch_size: int) -> Optional[DropoutMask]:
        if self.hp.dropout_rate == 0.0:
            return None
        return DropoutMask.sample(params, batch_size, self.hp.dropout_rate, self.rng)

    def _noise(self, shape: Tuple[int, int]) -> Optional[np.ndarray]:
        if self.hp.reparameterization is Reparameterization.GUMBEL:
            return gumbel_noise(shape, self.rng)
        return None

    def _controller_table(self, positions: np.ndarray, visited: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        """pi_ag logits reshaped to (B, G, A), and the matching log-probabilities"""
        logits = evaluate_logits(self.controller_policy, self.encoder.all_goal_inputs(positions, visited))
        logits = logits.reshape(len(positions), self.encoder.num_goals, NUM_ACTIONS)
        return softmax_of(logits), log_softmax_of(logits)

    def controller_targets(self, batch: ControllerBatch) -> np.ndarray:
        """Q1 targets r + gamma * V1(s'), next goals enumerated under pi_g"""
        next_obs = self.encoder.observations(batch.next_states, batch.next_visited)
        goal_probs = evaluate(self.meta_policy, next_obs)
        action_probs, _ = self._controller_table(batch.next_states, batch.next_visited)
        q_next = evaluate(
            self.controller_q, self.encoder.all_goal_inputs(batch.next_states, batch.next_visited)
        ).reshape(action_probs.shape)
        v1_next = controller_value_v1(goal_probs, action_probs, q_next, self.hp.alpha, self.variant)
        return np.asarray(controller_q_target(batch.rewards, v1_next, batch.dones, self.hp.gamma))

    def meta_targets(self, batch: MetaBatch) -> np.ndarray:
        """Q2 targets f + gamma * V2(s')"""
        next_obs = self.encoder.observations(batch.next_states, batch.next_visited)
        goal_probs = evaluate(self.meta_policy, next_obs)
        q_next = evaluate(self.meta_q, next_obs)
        action_probs = None
        if self.variant is AgentVariant.ADVERSARIAL_MI_SAC:
            action_probs, _ = self._controller_table(batch.next_states, batch.next_visited)
        v2_next = meta_value_v2(goal_probs, q_next, self.hp.alpha, self.variant, action_probs)
        return np.asarray(meta_q_target(batch.returns, v2_next, batch.dones, self.hp.gamma))

    def controller_policy_batch(self, batch: ControllerBatch) -> ControllerPolicyBatch:
        inputs = self.encoder.controller_inputs(batch.states, batch.goals, batch.visited)
        return ControllerPolicyBatch(
            inputs=inputs,
            all_goal_inputs=self.encoder.all_goal_inputs(batch.states, batch.visited),
            goal_probs=evaluate(self.meta_policy, self.encoder.observations(batch.states, batch.visited)),
            q_values=evaluate(self.controller_q, inputs),
            noise=self._noise((len(inputs), NUM_ACTIONS)),
        )

    def meta_policy_batch(self, batch: MetaBatch) -> MetaPolicyBatch:
        obs = self.encoder.observations(batch.states, batch.visited)
        probs: Optional[np.ndarray] = None
        log_probs: Optional[np.ndarray] = None
        if self.variant is AgentVariant.ADVERSARIAL_MI_SAC:
            probs, log_probs = self._controller_table(batch.states, batch.visited)
        return MetaPolicyBatch(
            inputs=obs,
            q_values=evaluate(self.meta_q, obs),
            noise=self._noise((len(obs), self.encoder.num_goals)),
            controller_probs=probs,
            controller_log_probs=log_probs,
        )

    def update_controller(self) -> TrainLosses:
        batch = ControllerBatch.stack(self.controller_buffer.sample(self.hp.batch_size))
        targets = self.controller_targets(batch)
        inputs = self.encoder.controller_inputs(batch.states, batch.goals, batch.visited)
        q_loss = controller_q_update(
            self.controller_q,
            self.optimizers["controller_q"],
            inputs,
            batch.actions,
            targets,
            self._dropout(self.controller_q, len(inputs)),
        )
        policy_loss = controller_policy_update(
            self.controller_policy,
            self.optimizers["controller_policy"],
            self.controller_policy_batch(batch),
            self.hp,
            self.variant,
        )
        return TrainLosses(controller_q=q_loss, controller_policy=policy_loss)

    def update_meta(self) -> TrainLosses:
        batch = MetaBatch.stack(self.meta_buffer.sample(self.hp.batch_size))
        targets = self.meta_targets(batch)
        obs = self.encoder.observations(batch.states, batch.visited)
        q_loss = meta_q_update(
            self.meta_q,
            self.optimizers["meta_q"],
            obs,
            batch.goals - 1,
            targets,
            self._dropout(self.meta_q, len(obs)),
        )
        policy_loss = self.meta_policy_step(self.meta_policy_batch(batch))
        return TrainLosses(meta_q=q_loss, meta_policy=policy_loss)

    def meta_policy_step(self, batch: MetaPolicyBatch) -> float:
        """One Adam step of the meta policy nu"""
        return meta_policy_update(
            self.meta_policy, self.optimizers["meta_policy"], batch, self.hp, self.variant
        )


class EntropySacAgent(SacAgent):
    """Entropy bonus at both levels"""

    variant = AgentVariant.ENTROPY_SAC


class MiSacAgent(SacAgent):
    """Controller penalized by I(a; g | s), meta-controller with an entropy bonus"""

    variant = AgentVariant.MI_SAC


class AdversarialMiSacAgent(SacAgent):
    """Controller minimizes I(a; g | s) while the meta-controller maximizes it"""

    variant = AgentVariant.ADVERSARIAL_MI_SAC

    def meta_policy_step(self, batch: MetaPolicyBatch) -> float:
        return adversarial_meta_policy_update(
            self.meta_policy, self.optimizers["meta_policy"], batch, self.hp
        )
