"""Tour of the connectivity reward for one particle between two peers.

A probe particle sits between two peers at a symmetric distance d. Sweeping d
walks through every branch of the reward:

    d < d_min            overlap             -> -100
    d inside the rim band                    -> +100
    otherwise (d < radius) deviation penalty -> -(2 * (radius - d))
    d >= radius          contact lost        -> -100

The step scale pi shrinks to zero as the deviation vanishes, which is what
freezes a well-placed particle.

Run from the repository root:  python3 demos/reward_function_tour.py
"""

from qswarm import MqlParams, StateId, Vec2, encode_state, reward, step_scale_pi

params = MqlParams(epsilon=10.0)  # d_min 2, band tau_r 2% of n*epsilon

print(f"sensing radius {params.epsilon}, overlap floor {params.d_min}, "
      f"full-reward band |D| <= {params.tau_r} * n * radius\n")
print(f"{'d':>6} | {'state':>12} | {'pi':>6} | {'reward':>8}")
print("-" * 42)

for d in (0.5, 1.0, 1.9, 2.0, 3.0, 5.0, 7.0, 9.0, 9.5, 9.8, 9.85, 9.9, 9.95, 10.0):
    positions = [Vec2(50.0, 50.0), Vec2(50.0 - d, 50.0), Vec2(50.0 + d, 50.0)]
    state = encode_state(0, positions, params)
    pi = step_scale_pi(0, positions, params)
    r = reward(0, positions, params)
    print(f"{d:>6.2f} | {state.name:>12} | {pi:>6.3f} | {r:>8.1f}")

print()
print("notes:")
print(" - at d = 10.0 the peers sit exactly on the radius and no longer count")
print("   as neighbours, so the particle is scored as disconnected")
print(f" - the +100 band for two neighbours covers d within about "
      f"{100 * params.tau_r:.0f}% of the radius (just under {params.epsilon}); "
      "the greedy policy learns to park there")
print(" - everywhere else the penalty equals the total distance shortfall,")
print("   so the gradient the table experiences points at the rim")

# the same sweep, disconnected case: a lone particle always moves at full scale
lone = [Vec2(10.0, 10.0), Vec2(90.0, 90.0)]
assert encode_state(0, lone, params) is StateId.DISCONNECTED
print(f"\nlone particle: state {encode_state(0, lone, params).name}, "
      f"pi {step_scale_pi(0, lone, params):.1f}, reward {reward(0, lone, params):.0f}")
