"""Q-learning-driven swarm engine.

Each particle senses the peers strictly within the radius ``epsilon``,
summarises that neighbourhood into one of five coarse states, and greedily
picks one of twelve axis-aligned steps (two axes x two directions x three
magnitudes) from its own utility table. The step is scaled by

    pi = min(1, |D| / (n * epsilon)),   pi = 1 when neighbourless,

where D = (sum of neighbour distances) - n * epsilon, so motion dies out as
the neighbourhood approaches the rim of the sensing disc. After everyone
moved, each particle is scored on its new surroundings:

    -reward_max   no neighbours (contact lost) or any peer closer than d_min
    +reward_max   |D| within the tolerance band tau_r * n * epsilon
    -min(|D|, reward_max)   otherwise

and its table is updated with the post-move state as the lookahead. The whole
tick is deterministic given the seed: random draws happen only in the
selection phase, in particle-index order.

Note that a neighbourless particle keeps stepping at full scale but has no
homing signal, so losing contact is effectively permanent (``recover_lost``
adds a crude nearest-peer pursuit for experimentation; it defaults off).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import IntEnum

import numpy as np

from .core import Vec2, WorldBounds, clamp_to_world, pairwise_distances, positions_array
from .metrics import TickRecord
from .qlearning import LearningParams, QTable


class StateId(IntEnum):
    DISCONNECTED = 0   # no peer within the sensing radius
    TOO_CLOSE = 1      # some peer within the overlap floor d_min
    NEAR = 2           # neighbourhood noticeably tighter than the rim
    IDEAL = 3          # total neighbour distance within tau_s of n * epsilon
    FAR = 4            # total neighbour distance above the rim band


NUM_STATES = len(StateId)

SCHEDULES = ("simultaneous", "round_robin")


@dataclass(frozen=True)
class ActionSpec:
    """One movement option: a step of ``magnitude`` along one axis."""

    axis: int         # 0 moves x, 1 moves y
    direction: int    # +1 forward, -1 backward
    magnitude: float


def build_actions(step_set) -> tuple[ActionSpec, ...]:
    """The fixed 12-action enumeration: axes outer, directions middle,
    magnitudes inner, so action ids are stable for a given step set."""
    return tuple(
        ActionSpec(axis=axis, direction=direction, magnitude=float(m))
        for axis in (0, 1)
        for direction in (1, -1)
        for m in step_set
    )


@dataclass(frozen=True)
class MqlParams:
    """Tunables of the learning swarm.

    ``d_min`` defaults to 0.2 * epsilon. ``init_span`` is the side of the
    centred square the swarm is seeded in (None picks epsilon * sqrt(M) / 2, a
    staging cluster dense enough to start fully connected).
    """

    epsilon: float = 10.0
    d_min: float | None = None
    tau_r: float = 0.02
    tau_s: float = 0.05
    reward_max: float = 100.0
    step_set: tuple[float, float, float] = (0.5, 1.0, 2.0)
    learning: LearningParams = field(default_factory=LearningParams)
    schedule: str = "simultaneous"
    init_span: float | None = None
    recover_lost: bool = False

    def __post_init__(self):
        if not (math.isfinite(self.epsilon) and self.epsilon > 0):
            raise ValueError(f"mql.epsilon must be > 0, got {self.epsilon!r}")
        if self.d_min is None:
            object.__setattr__(self, "d_min", 0.2 * self.epsilon)
        if not (math.isfinite(self.d_min) and 0.0 < self.d_min < self.epsilon):
            raise ValueError(
                f"mql.d_min must satisfy 0 < d_min < epsilon, got d_min={self.d_min!r} "
                f"with epsilon={self.epsilon!r}"
            )
        for name in ("tau_r", "tau_s"):
            v = getattr(self, name)
            if not (math.isfinite(v) and 0.0 < v < 1.0):
                raise ValueError(f"mql.{name} must be in (0, 1), got {v!r}")
        if not (math.isfinite(self.reward_max) and self.reward_max > 0):
            raise ValueError(f"mql.reward_max must be > 0, got {self.reward_max!r}")
        steps = tuple(float(s) for s in self.step_set)
        if len(steps) != 3 or any(s <= 0 for s in steps) or not steps[0] < steps[1] < steps[2]:
            raise ValueError(
                f"mql.step_set must be three ascending positive magnitudes, got {self.step_set!r}"
            )
        object.__setattr__(self, "step_set", steps)
        if self.schedule not in SCHEDULES:
            raise ValueError(f"mql.schedule must be one of {SCHEDULES}, got {self.schedule!r}")
        if self.init_span is not None and not (math.isfinite(self.init_span) and self.init_span > 0):
            raise ValueError(f"mql.init_span must be > 0 or null, got {self.init_span!r}")


# --- neighbourhood quantities -------------------------------------------------
#
# Every judgement below reduces the neighbourhood to three scalars: the
# neighbour count n, the total neighbour distance, and the smallest neighbour
# distance. The _branch_* functions hold the actual logic; the public
# operations extract the scalars from raw positions, while the engine extracts
# them from a shared pairwise matrix. One code path either way.

def _distances_from(i: int, arr: np.ndarray) -> np.ndarray:
    d = np.sqrt(((arr - arr[i]) ** 2).sum(axis=1))
    d[i] = np.inf
    return d


def _neighbor_dists(i: int, positions, epsilon: float) -> np.ndarray:
    d = _distances_from(i, positions_array(positions))
    return d[d < epsilon]


def _summarize(neighbor_dists) -> tuple[int, float, float]:
    """(n, total distance, smallest distance); (0, 0.0, inf) when alone.

    The total is a plain left-to-right sum in ascending peer order, so it is
    bit-reproducible against any independent accumulation in the same order.
    """
    dists = list(neighbor_dists)
    if not dists:
        return 0, 0.0, math.inf
    return len(dists), sum(dists), min(dists)


def neighborhood(i: int, positions, epsilon: float) -> set[int]:
    """Ids of the peers strictly within ``epsilon`` of particle ``i``
    (a peer at exactly epsilon is out of contact). Never contains ``i``."""
    d = _distances_from(i, positions_array(positions))
    return set(int(k) for k in np.flatnonzero(d < epsilon))


def _branch_deviation(n: int, total: float, epsilon: float) -> float:
    return total - n * epsilon


def _branch_state(n: int, total: float, lowest: float, params: MqlParams) -> StateId:
    if n == 0:
        return StateId.DISCONNECTED
    if lowest < params.d_min:
        return StateId.TOO_CLOSE
    rho = _branch_deviation(n, total, params.epsilon) / (n * params.epsilon)
    if abs(rho) <= params.tau_s:
        return StateId.IDEAL
    return StateId.NEAR if rho < 0 else StateId.FAR


def _branch_pi(n: int, total: float, epsilon: float) -> float:
    if n == 0:
        return 1.0
    return min(1.0, abs(_branch_deviation(n, total, epsilon)) / (n * epsilon))


def _branch_reward(n: int, total: float, lowest: float, params: MqlParams) -> float:
    if n == 0:
        return -params.reward_max
    if lowest < params.d_min:
        return -params.reward_max
    dev = abs(_branch_deviation(n, total, params.epsilon))
    if dev <= params.tau_r * n * params.epsilon:
        return params.reward_max
    return -min(dev, params.reward_max)


def _deviation_from_dists(neighbor_dists, epsilon: float) -> float:
    n, total, _ = _summarize(neighbor_dists)
    return _branch_deviation(n, total, epsilon)


def _encode_from_dists(neighbor_dists, params: MqlParams) -> StateId:
    return _branch_state(*_summarize(neighbor_dists), params)


def _pi_from_dists(neighbor_dists, epsilon: float) -> float:
    n, total, _ = _summarize(neighbor_dists)
    return _branch_pi(n, total, epsilon)


def _reward_from_dists(neighbor_dists, params: MqlParams) -> float:
    return _branch_reward(*_summarize(neighbor_dists), params)


def distance_deviation(i: int, positions, epsilon: float) -> tuple[float | None, int]:
    """(D, n) where D = sum of neighbour distances - n * epsilon. D is None for
    a neighbourless particle. D < 0 whenever n > 0, since every neighbour sits
    strictly inside the sensing radius."""
    n, total, _ = _summarize(_neighbor_dists(i, positions, epsilon))
    if n == 0:
        return None, 0
    return _branch_deviation(n, total, epsilon), n


def encode_state(i: int, positions, params: MqlParams) -> StateId:
    """Coarse observation for particle ``i``: disconnection and overlap first,
    then the relative deviation rho = D / (n * epsilon) against tau_s."""
    return _branch_state(*_summarize(_neighbor_dists(i, positions, params.epsilon)), params)


def step_scale_pi(i: int, positions, params: MqlParams) -> float:
    """Mobility multiplier in [0, 1]: full when neighbourless, shrinking to 0
    as the neighbourhood reaches the ideal total distance."""
    n, total, _ = _summarize(_neighbor_dists(i, positions, params.epsilon))
    return _branch_pi(n, total, params.epsilon)


def apply_action(pos: Vec2, action: ActionSpec, pi: float, world: WorldBounds) -> Vec2:
    """Displace ``pos`` by pi * magnitude along the action's axis and clamp."""
    delta = pi * action.magnitude * action.direction
    if action.axis == 0:
        return clamp_to_world(Vec2(pos.x + delta, pos.y), world)
    return clamp_to_world(Vec2(pos.x, pos.y + delta), world)


def reward(i: int, positions, params: MqlParams) -> float:
    """Score particle ``i`` on (post-move) positions: -reward_max for lost
    contact or any overlap, +reward_max inside the rim tolerance band, else
    -|D| capped at reward_max. Always within [-reward_max, +reward_max]."""
    return _branch_reward(*_summarize(_neighbor_dists(i, positions, params.epsilon)), params)


@dataclass
class MqlParticle:
    position: Vec2
    qtable: QTable
    last_state: StateId | None = None
    last_action: int | None = None
    cumulative_reward: float = 0.0


def _row_summary(dist_matrix: np.ndarray, i: int, epsilon: float) -> tuple[int, float, float]:
    mask = dist_matrix[i] < epsilon
    mask[i] = False
    return _summarize(dist_matrix[i][mask])


class MqlEngine:
    """Stateful learning swarm with a fixed particle count.

    Random draws are consumed in a documented order: first 2*M uniform draws
    for the initial positions (particle order, x then y), then per tick the
    selection draws in particle-index order. Identical (config, seed) pairs
    therefore reproduce bit-identical traces.
    """

    def __init__(self, m: int, params: MqlParams, world: WorldBounds,
                 rng: np.random.Generator,
                 initial_positions: list[Vec2] | None = None):
        if m < 1:
            raise ValueError(f"swarm size must be >= 1, got {m}")
        self.params = params
        self.world = world
        self.rng = rng
        self.actions = build_actions(params.step_set)
        self.tick_index = 0

        if initial_positions is not None:
            if len(initial_positions) != m:
                raise ValueError(
                    f"initial_positions has {len(initial_positions)} entries for swarm size {m}"
                )
            positions = [clamp_to_world(p, world) for p in initial_positions]
        else:
            span = params.init_span
            if span is None:
                span = params.epsilon * math.sqrt(m) / 2.0
            span = min(span, world.width, world.height)
            center = world.center()
            x_lo = center.x - span / 2.0
            y_lo = center.y - span / 2.0
            positions = [
                Vec2(x_lo + span * rng.random(), y_lo + span * rng.random())
                for _ in range(m)
            ]

        self.particles = [
            MqlParticle(position=p, qtable=QTable(NUM_STATES, len(self.actions)))
            for p in positions
        ]

    @property
    def m(self) -> int:
        return len(self.particles)

    def positions(self) -> list[Vec2]:
        return [p.position for p in self.particles]

    def _positions_arr(self) -> np.ndarray:
        return positions_array(self.positions())

    def q_tables(self) -> list[QTable]:
        return [p.qtable for p in self.particles]

    def _choose(self, particle: MqlParticle, state: StateId, neighbor_count: int,
                arr: np.ndarray, i: int) -> int:
        if self.params.recover_lost and neighbor_count == 0 and self.m > 1:
            return self._pursuit_action(arr, i)
        return particle.qtable.epsilon_greedy_action(
            int(state), self.params.learning.explore_rate, self.rng)

    def _pursuit_action(self, arr: np.ndarray, i: int) -> int:
        # crude homing: longest step along the dominant axis towards the
        # nearest peer (recover_lost only; no learning signal involved)
        d = _distances_from(i, arr)
        nearest = int(np.argmin(d))
        dx = arr[nearest, 0] - arr[i, 0]
        dy = arr[nearest, 1] - arr[i, 1]
        axis = 0 if abs(dx) >= abs(dy) else 1
        direction = 1 if (dx if axis == 0 else dy) >= 0 else -1
        longest = max(range(len(self.actions)),
                      key=lambda a: self.actions[a].magnitude
                      if (self.actions[a].axis, self.actions[a].direction) == (axis, direction)
                      else -1.0)
        return longest

    def tick(self) -> list[TickRecord]:
        if self.params.schedule == "round_robin":
            records = self._tick_round_robin()
        else:
            records = self._tick_simultaneous()
        self.tick_index += 1
        return records

    def _tick_simultaneous(self) -> list[TickRecord]:
        prm = self.params
        arr = self._positions_arr()
        dist0 = pairwise_distances(arr)

        states: list[StateId] = []
        chosen: list[int] = []
        new_positions: list[Vec2] = []
        for i, particle in enumerate(self.particles):
            n, total, lowest = _row_summary(dist0, i, prm.epsilon)
            state = _branch_state(n, total, lowest, prm)
            action_id = self._choose(particle, state, n, arr, i)
            pi = _branch_pi(n, total, prm.epsilon)
            states.append(state)
            chosen.append(action_id)
            new_positions.append(
                apply_action(particle.position, self.actions[action_id], pi, self.world))

        dist1 = pairwise_distances(positions_array(new_positions))
        records = []
        for i, particle in enumerate(self.particles):
            n1, total1, lowest1 = _row_summary(dist1, i, prm.epsilon)
            r = _branch_reward(n1, total1, lowest1, prm)
            next_state = _branch_state(n1, total1, lowest1, prm)
            particle.qtable.update(int(states[i]), chosen[i], r, int(next_state), prm.learning)
            particle.position = new_positions[i]
            particle.last_state = states[i]
            particle.last_action = chosen[i]
            particle.cumulative_reward += r
            records.append(TickRecord(
                tick=self.tick_index, particle=i, position=particle.position,
                state=states[i], action=chosen[i], reward=r,
                neighbor_count=n1))
        return records

    def _tick_round_robin(self) -> list[TickRecord]:
        prm = self.params
        mover = self.tick_index % self.m
        particle = self.particles[mover]
        arr = self._positions_arr()

        n, total, lowest = _row_summary(pairwise_distances(arr), mover, prm.epsilon)
        state = _branch_state(n, total, lowest, prm)
        action_id = self._choose(particle, state, n, arr, mover)
        pi = _branch_pi(n, total, prm.epsilon)
        particle.position = apply_action(particle.position, self.actions[action_id],
                                         pi, self.world)

        dist1 = pairwise_distances(self._positions_arr())
        n1, total1, lowest1 = _row_summary(dist1, mover, prm.epsilon)
        r = _branch_reward(n1, total1, lowest1, prm)
        next_state = _branch_state(n1, total1, lowest1, prm)
        particle.qtable.update(int(state), action_id, r, int(next_state), prm.learning)
        particle.last_state = state
        particle.last_action = action_id
        particle.cumulative_reward += r

        records = []
        for i, p in enumerate(self.particles):
            n_i, total_i, lowest_i = _row_summary(dist1, i, prm.epsilon)
            if i == mover:
                records.append(TickRecord(
                    tick=self.tick_index, particle=i, position=p.position,
                    state=state, action=action_id, reward=r,
                    neighbor_count=n_i))
            else:
                records.append(TickRecord(
                    tick=self.tick_index, particle=i, position=p.position,
                    state=_branch_state(n_i, total_i, lowest_i, prm),
                    action=None, reward=None, neighbor_count=n_i))
        return records
