"""
One episode of agent-environment interaction.
"""

from dataclasses import dataclass, field
from typing import Dict, List, Optional

import numpy as np

from ..env.sdp import EnvConfig, TraceWriter, goal_reached, reset, step
from .base import HierarchicalAgent
from .replay import ControllerTransition, MetaTransition


@dataclass
class EpisodeResult:
    """Outcome of one episode"""

    reward: float
    steps: int
    truncated: bool
    goal_selections: int
    internal_reward: float
    meta_transitions: int
    goals_reached: int = 0
    losses: List[Dict[str, float]] = field(default_factory=list)


def run_episode(
    agent: HierarchicalAgent,
    env_config: EnvConfig,
    rng: np.random.Generator,
    train: bool = True,
    trace: Optional[TraceWriter] = None,
    episode: int = 0,
    greedy: bool = False,
) -> EpisodeResult:
    """
    Drive one episode through pick_goal / act / observe / train_step

    A goal's tenure ends when the controller reaches it or the episode
    ends; the meta-transition is closed at that moment with the external
    reward accumulated over the tenure, and a new goal is picked if the
    episode continues.

    Args:
        agent: Agent to run
        env_config: Environment to run on
        rng: Generator for environment dynamics and action sampling
        train: Store transitions and run train steps
        trace: Optional per-step trace sink
        episode: Episode index written to the trace
        greedy: Execute argmax actions and goals
    """
    state = reset(env_config)
    goal = agent.pick_goal(state, rng, greedy)
    tenure_start = state
    tenure_reward = 0.0
    result = EpisodeResult(0.0, 0, False, 1, 0.0, 0)

    while True:
        action = agent.act(state, goal, rng, greedy)
        outcome = step(env_config, state, action, rng)
        nxt = outcome.next_state
        reached = goal_reached(nxt, goal)
        internal = 1.0 if reached else 0.0
        tenure_reward += outcome.external_reward
        result.reward += outcome.external_reward
        result.internal_reward += internal
        result.goals_reached += int(reached)
        result.steps += 1
        if trace is not None:
            trace.write(episode, state, action, outcome)

        closed = reached or outcome.done
        if train:
            agent.observe_controller(
                ControllerTransition(
                    goal=goal,
                    state=state.position,
                    action=action,
                    internal_reward=internal,
                    next_state=nxt.position,
                    done=outcome.done,
                    goal_reached=reached,
                    visited=state.visited_goal,
                    next_visited=nxt.visited_goal,
                )
            )
            if closed:
                agent.observe_meta(
                    MetaTransition(
                        state=tenure_start.position,
                        goal=goal,
                        external_return=tenure_reward,
                        next_state=nxt.position,
                        done=outcome.done,
                        visited=tenure_start.visited_goal,
                        next_visited=nxt.visited_goal,
                    )
                )
            losses = agent.train_step(meta_transition_closed=closed).values()
            if losses:
                result.losses.append(losses)
        if closed:
            result.meta_transitions += 1

        if outcome.done:
            result.truncated = outcome.truncated
            return result
        state = nxt
        if reached:
            goal = agent.pick_goal(state, rng, greedy)
            tenure_start = state
            tenure_reward = 0.0
            result.goal_selections += 1
