"""Hand-sized walkthrough of the utility table a particle learns with.

Builds the exact 5-state x 12-action table the swarm engine gives each
particle, feeds it a handful of transitions, and shows how the update rule
moves cell values and how greedy selection (with random tie-breaking) responds.

Run from the repository root:  python3 demos/qtable_walkthrough.py
"""

import numpy as np

from qswarm import LearningParams, QTable, StateId, build_actions

params = LearningParams(learning_rate=0.1, discount=0.9)
actions = build_actions((0.5, 1.0, 2.0))
table = QTable(num_states=len(StateId), num_actions=len(actions))
rng = np.random.default_rng(0)

print(f"table shape: {table.num_states} states x {table.num_actions} actions, "
      f"all zeros at birth\n")

# A fresh table ties everywhere, so the first pick in any state is uniform.
picks = [table.greedy_action(int(StateId.NEAR), rng) for _ in range(12)]
print(f"first twelve greedy picks in NEAR (pure tie-breaking): {picks}\n")

# Reward the third action in NEAR and watch it become the greedy choice.
print("update NEAR/action-2 with reward +100 landing in IDEAL:")
new = table.update(int(StateId.NEAR), 2, 100.0, int(StateId.IDEAL), params)
print(f"  new value = 0 + 0.1 * (100 + 0.9 * 0 - 0) = {new}")
print(f"  greedy in NEAR is now always action "
      f"{table.greedy_action(int(StateId.NEAR), rng)} "
      f"({actions[2].magnitude} units along axis {actions[2].axis})\n")

# Penalties push a cell down the same way.
print("update NEAR/action-2 with reward -100 landing in DISCONNECTED:")
new = table.update(int(StateId.NEAR), 2, -100.0, int(StateId.DISCONNECTED), params)
print(f"  new value = 10 + 0.1 * (-100 + 0.9 * 0 - 10) = {new}")
print(f"  NEAR row now: {np.round(table.values[int(StateId.NEAR)], 2)}\n")

# The lookahead picks up value from the next state's best action.
table.update(int(StateId.IDEAL), 5, 100.0, int(StateId.IDEAL), params)
print("after seeding IDEAL/action-5 with +100, an update landing in IDEAL")
print("inherits 0.9 * max(IDEAL row) through the lookahead:")
new = table.update(int(StateId.FAR), 0, 0.0, int(StateId.IDEAL), params)
print(f"  FAR/action-0 = 0 + 0.1 * (0 + 0.9 * {table.max_q(int(StateId.IDEAL)):.1f} - 0)"
      f" = {new:.2f}\n")

# A constant penalty with a self-loop makes the chosen cell sink below its
# row-mates, so greedy selection cycles the row: this is why a stranded
# particle wanders instead of marching in one direction.
lost = QTable(len(StateId), len(actions))
sequence = []
for _ in range(24):
    a = lost.greedy_action(int(StateId.DISCONNECTED), rng)
    lost.update(int(StateId.DISCONNECTED), a, -100.0, int(StateId.DISCONNECTED), params)
    sequence.append(a)
print("a stranded particle's action choices under constant -100:")
print(f"  {sequence}")
print(f"  distinct actions tried: {len(set(sequence))} of {len(actions)}")
