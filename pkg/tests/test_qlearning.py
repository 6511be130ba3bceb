import numpy as np
import pytest

from qswarm.qlearning import LearningParams, QTable


def make_table(rows):
    rows = np.atleast_2d(np.asarray(rows, dtype=float))
    t = QTable(rows.shape[0], rows.shape[1])
    t.values[:] = rows
    return t


def test_init_all_zero():
    t = QTable(5, 12)
    assert t.values.shape == (5, 12)
    assert (t.values == 0.0).all()


def test_init_minimal():
    t = QTable(1, 1)
    assert t.values.tolist() == [[0.0]]


def test_init_rejects_empty_dims():
    with pytest.raises(ValueError):
        QTable(0, 3)
    with pytest.raises(ValueError):
        QTable(3, 0)
    with pytest.raises(ValueError):
        QTable(-1, 2)


def test_max_q_rows():
    assert make_table([[1, 5, 2]]).max_q(0) == 5.0
    assert make_table([[0, 0, 0]]).max_q(0) == 0.0
    assert make_table([[-3, -1, -7]]).max_q(0) == -1.0


def test_max_q_out_of_range():
    with pytest.raises(IndexError):
        make_table([[1, 2]]).max_q(1)


def test_greedy_unique_argmax():
    t = make_table([[1, 5, 2]])
    rng = np.random.default_rng(0)
    assert all(t.greedy_action(0, rng) == 1 for _ in range(20))


def test_greedy_full_tie_is_uniform():
    t = make_table([[0, 0, 0]])
    rng = np.random.default_rng(5)
    draws = [t.greedy_action(0, rng) for _ in range(3000)]
    counts = np.bincount(draws, minlength=3)
    assert set(draws) == {0, 1, 2}
    # each within 5 sigma of 1000
    assert (abs(counts - 1000) < 5 * np.sqrt(3000 * (1 / 3) * (2 / 3))).all()


def test_greedy_partial_tie_support():
    t = make_table([[7, 7, 1]])
    rng = np.random.default_rng(6)
    draws = {t.greedy_action(0, rng) for _ in range(200)}
    assert draws == {0, 1}


def test_update_hand_values():
    p = LearningParams(learning_rate=0.1, discount=0.9)
    t = QTable(2, 3)
    # Q=0, r=100, max_next=0 -> 0 + 0.1*(100 + 0.9*0 - 0) = 10
    assert t.update(0, 1, 100.0, 1, p) == pytest.approx(10.0, abs=1e-12)
    assert t.values[0, 1] == pytest.approx(10.0, abs=1e-12)

    # Q=10, r=-100, max_next=10, beta=0.5: 10 + 0.5*(-100 + 9 - 10) = -40.5
    t2 = make_table([[10.0, 0.0], [10.0, 0.0]])
    p2 = LearningParams(learning_rate=0.5, discount=0.9)
    assert t2.update(0, 0, -100.0, 1, p2) == pytest.approx(-40.5, abs=1e-12)


def test_update_zero_learning_rate_is_fixed_point():
    t = make_table([[3.0, -2.0]])
    p = LearningParams(learning_rate=0.0, discount=0.9)
    for r in (-100.0, 0.0, 57.3):
        assert t.update(0, 0, r, 0, p) == 3.0
    assert t.values.tolist() == [[3.0, -2.0]]


def test_update_fixed_point_for_any_rate():
    # if r + discount*max_next == Q(s, a) the cell must not move
    rng = np.random.default_rng(7)
    for _ in range(100):
        q = float(rng.uniform(-50, 50))
        next_row = rng.uniform(-50, 50, 4)
        discount = float(rng.uniform(0, 1))
        beta = float(rng.uniform(0, 1))
        t = QTable(2, 4)
        t.values[0, 2] = q
        t.values[1] = next_row
        r = q - discount * float(next_row.max())
        assert t.update(0, 2, r, 1, LearningParams(beta, discount)) == pytest.approx(q, abs=1e-9)


def test_update_changes_exactly_one_cell():
    rng = np.random.default_rng(8)
    t = make_table(rng.uniform(-5, 5, (4, 6)))
    before = t.values.copy()
    t.update(2, 3, 42.0, 1, LearningParams(0.3, 0.8))
    diff = t.values != before
    assert diff.sum() == 1 and diff[2, 3]


def test_update_rejects_non_finite_reward():
    t = QTable(2, 2)
    p = LearningParams()
    for bad in (float("nan"), float("inf"), float("-inf")):
        with pytest.raises(ValueError):
            t.update(0, 0, bad, 1, p)


def test_update_bounded_by_reward_scale():
    # rewards in [-100, 100] and discount < 1 keep all entries within
    # 100 / (1 - discount) forever
    rng = np.random.default_rng(9)
    discount = 0.9
    bound = 100.0 / (1.0 - discount)
    t = QTable(3, 4)
    p = LearningParams(learning_rate=0.7, discount=discount)
    for _ in range(2000):
        s, a, s2 = rng.integers(3), rng.integers(4), rng.integers(3)
        t.update(int(s), int(a), float(rng.uniform(-100, 100)), int(s2), p)
    assert (np.abs(t.values) <= bound + 1e-9).all()


def test_argmax_invariant_under_positive_scaling():
    rng = np.random.default_rng(10)
    for _ in range(200):
        row = rng.uniform(-10, 10, 6)
        row[rng.integers(6)] = row.max()  # force occasional exact ties
        scale = float(rng.uniform(0.01, 100.0))
        before = np.flatnonzero(row == row.max())
        after = np.flatnonzero(row * scale == (row * scale).max())
        assert np.array_equal(before, after)


def test_update_matches_independent_oracle():
    # 1000 random (Q, r, beta, discount, max_next) tuples against a separately
    # coded evaluation of the update rule
    rng = np.random.default_rng(11)
    for _ in range(1000):
        q = float(rng.uniform(-200, 200))
        r = float(rng.uniform(-100, 100))
        beta = float(rng.uniform(0, 1))
        discount = float(rng.uniform(0, 1))
        max_next = float(rng.uniform(-200, 200))

        t = QTable(2, 3)
        t.values[0, 0] = q
        t.values[1, :] = max_next
        got = t.update(0, 0, r, 1, LearningParams(beta, discount))

        expected = q + beta * (r + discount * max_next - q)
        assert got == pytest.approx(expected, abs=1e-12)


def test_learning_params_validation():
    with pytest.raises(ValueError):
        LearningParams(learning_rate=1.5)
    with pytest.raises(ValueError):
        LearningParams(discount=-0.1)
    with pytest.raises(ValueError):
        LearningParams(explore_rate=2.0)


def test_epsilon_greedy_rate_zero_is_greedy():
    t = make_table([[1, 9, 2]])
    rng = np.random.default_rng(12)
    assert all(t.epsilon_greedy_action(0, 0.0, rng) == 1 for _ in range(50))


def test_epsilon_greedy_explores_at_full_rate():
    t = make_table([[1, 9, 2]])
    rng = np.random.default_rng(13)
    seen = {t.epsilon_greedy_action(0, 1.0, rng) for _ in range(300)}
    assert seen == {0, 1, 2}
