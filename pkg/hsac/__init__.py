"""
HSAC - hierarchical soft actor-critic testbed

This package provides the four hierarchical agents (HDQN, Entropy-SAC,
MI-SAC, Adversarial MI-SAC), the stochastic decision process they are
trained on, and the seeded experiment harness that produces learning curves.
"""

__version__ = "0.1.0"
