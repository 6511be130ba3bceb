"""Tabular Q-learning: zero-initialised utility tables, greedy action selection
with uniform random tie-breaking, and the one-cell temporal-difference update

    Q'(s, a) = Q(s, a) + learning_rate * (r + discount * max_a' Q(s', a') - Q(s, a))

Each particle owns exactly one table; nothing here is shared or thread-unsafe
as long as a table has a single owner.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class LearningParams:
    """Update-rule coefficients. ``explore_rate`` > 0 enables epsilon-greedy
    exploration on top of the default pure-greedy policy."""

    learning_rate: float = 0.1
    discount: float = 0.9
    explore_rate: float = 0.0

    def __post_init__(self):
        for name in ("learning_rate", "discount", "explore_rate"):
            v = getattr(self, name)
            if not (math.isfinite(v) and 0.0 <= v <= 1.0):
                raise ValueError(f"{name} must be in [0, 1], got {v!r}")


class QTable:
    """A fixed-shape state x action utility matrix, initialised to all zeros."""

    def __init__(self, num_states: int, num_actions: int):
        if num_states < 1 or num_actions < 1:
            raise ValueError(
                f"QTable dimensions must be >= 1, got ({num_states}, {num_actions})"
            )
        self.num_states = int(num_states)
        self.num_actions = int(num_actions)
        self.values = np.zeros((self.num_states, self.num_actions), dtype=float)

    def _check_state(self, state: int) -> int:
        s = int(state)
        if not 0 <= s < self.num_states:
            raise IndexError(f"state {state} out of range [0, {self.num_states})")
        return s

    def _check_action(self, action: int) -> int:
        a = int(action)
        if not 0 <= a < self.num_actions:
            raise IndexError(f"action {action} out of range [0, {self.num_actions})")
        return a

    def max_q(self, state: int) -> float:
        """Highest utility over all actions available in ``state``."""
        return float(self.values[self._check_state(state)].max())

    def greedy_action(self, state: int, rng: np.random.Generator) -> int:
        """An action achieving max_q; ties are broken uniformly at random."""
        row = self.values[self._check_state(state)]
        ties = np.flatnonzero(row == row.max())
        if ties.size == 1:
            return int(ties[0])
        return int(ties[rng.integers(ties.size)])

    def epsilon_greedy_action(self, state: int, explore_rate: float,
                              rng: np.random.Generator) -> int:
        """Greedy selection, except with probability ``explore_rate`` a uniformly
        random action is taken instead. Rate 0 never draws for exploration."""
        self._check_state(state)
        if explore_rate > 0.0 and rng.random() < explore_rate:
            return int(rng.integers(self.num_actions))
        return self.greedy_action(state, rng)

    def update(self, state: int, action: int, reward: float, next_state: int,
               params: LearningParams) -> float:
        """Apply the temporal-difference update to the (state, action) cell only
        and return the new value. The next-state lookahead uses the table as it
        was before the write."""
        s = self._check_state(state)
        a = self._check_action(action)
        if not math.isfinite(reward):
            raise ValueError(f"reward must be finite, got {reward!r}")
        best_next = self.max_q(next_state)
        old = float(self.values[s, a])
        new = old + params.learning_rate * (reward + params.discount * best_next - old)
        self.values[s, a] = new
        return new

    def to_flat_list(self) -> list[float]:
        """Row-major list of all entries, for the JSON run summary."""
        return [float(v) for v in self.values.ravel()]

    def copy(self) -> "QTable":
        out = QTable(self.num_states, self.num_actions)
        out.values[:] = self.values
        return out
