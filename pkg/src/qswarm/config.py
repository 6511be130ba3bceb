"""Run configuration: one dataclass holding every tunable, strict YAML loading
(unknown keys are rejected by name), and an exact round-trip echo so a dumped
effective config reproduces its run byte-for-byte.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import yaml

from .core import Vec2, WorldBounds
from .mql import MqlParams
from .pso import Objective, PsoParams
from .qlearning import LearningParams

ALGORITHMS = ("mql", "pso")

MAX_SEED = 2 ** 64 - 1


class ConfigError(ValueError):
    """Raised for unreadable, unparsable, or invalid configuration input."""


@dataclass
class SwarmConfig:
    """Everything a run needs. Both engine sections are always present; the
    ``algorithm`` field selects which one actually drives the particles (the
    mql.epsilon sensing radius feeds connectivity metrics for both)."""

    algorithm: str = "mql"
    swarm_size: int = 20
    iterations: int = 500
    seed: int = 0
    world: WorldBounds = field(default_factory=WorldBounds)
    mql: MqlParams = field(default_factory=MqlParams)
    pso: PsoParams = field(default_factory=PsoParams)
    pso_target: Vec2 | None = None
    snapshot_ticks: tuple[int, ...] = ()
    decision_particles: tuple[int, ...] = ()
    output_dir: str = "out"

    def __post_init__(self):
        if self.algorithm not in ALGORITHMS:
            raise ConfigError(f"algorithm must be one of {ALGORITHMS}, got {self.algorithm!r}")
        if self.swarm_size < 1:
            raise ConfigError(f"swarm_size must be >= 1, got {self.swarm_size}")
        if self.iterations < 1:
            raise ConfigError(f"iterations must be >= 1, got {self.iterations}")
        if not 0 <= self.seed <= MAX_SEED:
            raise ConfigError(f"seed must be an unsigned 64-bit integer, got {self.seed}")
        bad = [t for t in self.snapshot_ticks if not 0 <= t <= self.iterations]
        if bad:
            raise ConfigError(
                f"snapshot_ticks must lie in [0, iterations={self.iterations}], got {bad}")
        bad = [p for p in self.decision_particles if not 0 <= p < self.swarm_size]
        if bad:
            raise ConfigError(
                f"decision_particles must lie in [0, swarm_size={self.swarm_size}), got {bad}")
        if self.pso_target is not None and not self.world.contains(self.pso_target):
            raise ConfigError(f"pso.target {self.pso_target.as_tuple()} is outside the world")

    def objective(self) -> Objective:
        target = self.pso_target if self.pso_target is not None else self.world.center()
        return Objective(target=target)


_TOP_KEYS = ("algorithm", "swarm_size", "iterations", "seed", "world", "mql", "pso",
             "snapshot_ticks", "decision_particles", "output_dir")
_WORLD_KEYS = ("x_min", "x_max", "y_min", "y_max")
_MQL_KEYS = ("epsilon", "d_min", "tau_r", "tau_s", "reward_max", "step_set",
             "learning_rate", "discount", "explore_rate", "schedule", "init_span",
             "recover_lost")
_PSO_KEYS = ("c1", "c2", "inertia_w0", "inertia_decrement", "constriction",
             "v_min", "v_max", "canonical_velocity", "target")


def _check_keys(mapping: dict, allowed, section: str) -> None:
    unknown = [k for k in mapping if k not in allowed]
    if unknown:
        where = f"section '{section}'" if section else "top level"
        raise ConfigError(f"unknown key '{unknown[0]}' in {where} "
                          f"(known keys: {', '.join(allowed)})")


def _section(data: dict, name: str) -> dict:
    value = data.get(name, {})
    if value is None:
        return {}
    if not isinstance(value, dict):
        raise ConfigError(f"section '{name}' must be a mapping, got {type(value).__name__}")
    return value


def config_from_dict(data: dict) -> SwarmConfig:
    """Build a validated SwarmConfig from plain nested dicts; every key absent
    from ``data`` takes its documented default."""
    if not isinstance(data, dict):
        raise ConfigError(f"config root must be a mapping, got {type(data).__name__}")
    _check_keys(data, _TOP_KEYS, "")

    world_data = _section(data, "world")
    _check_keys(world_data, _WORLD_KEYS, "world")
    try:
        world = WorldBounds(**{k: float(v) for k, v in world_data.items()})
    except (TypeError, ValueError) as exc:
        raise ConfigError(str(exc)) from exc

    mql_data = dict(_section(data, "mql"))
    _check_keys(mql_data, _MQL_KEYS, "mql")
    try:
        learning_kwargs = {}
        for key in ("learning_rate", "discount", "explore_rate"):
            if key in mql_data:
                learning_kwargs[key] = float(mql_data.pop(key))
        try:
            learning = LearningParams(**learning_kwargs)
        except ValueError as exc:
            raise ConfigError(f"mql.{exc}") from exc
        if "step_set" in mql_data:
            mql_data["step_set"] = tuple(float(s) for s in mql_data["step_set"])
        mql = MqlParams(learning=learning, **mql_data)
    except ConfigError:
        raise
    except (TypeError, ValueError) as exc:
        raise ConfigError(str(exc)) from exc

    pso_data = dict(_section(data, "pso"))
    _check_keys(pso_data, _PSO_KEYS, "pso")
    target_raw = pso_data.pop("target", None)
    pso_target = None
    if target_raw is not None:
        if not (isinstance(target_raw, (list, tuple)) and len(target_raw) == 2):
            raise ConfigError(f"pso.target must be a [x, y] pair, got {target_raw!r}")
        try:
            pso_target = Vec2(float(target_raw[0]), float(target_raw[1]))
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"pso.target: {exc}") from exc
    try:
        pso = PsoParams(bounds=world, **pso_data)
    except (TypeError, ValueError) as exc:
        raise ConfigError(str(exc)) from exc

    try:
        kwargs = {}
        for key in ("algorithm", "output_dir"):
            if key in data:
                kwargs[key] = str(data[key])
        for key in ("swarm_size", "iterations", "seed"):
            if key in data:
                kwargs[key] = int(data[key])
        for key in ("snapshot_ticks", "decision_particles"):
            if key in data:
                kwargs[key] = tuple(int(t) for t in data[key])
    except (TypeError, ValueError) as exc:
        raise ConfigError(str(exc)) from exc

    return SwarmConfig(world=world, mql=mql, pso=pso, pso_target=pso_target, **kwargs)


def load_config(path) -> SwarmConfig:
    """Parse and validate a YAML config file; errors name the offending key."""
    path = Path(path)
    if not path.exists():
        raise ConfigError(f"config file not found: {path}")
    try:
        data = yaml.safe_load(path.read_text())
    except yaml.YAMLError as exc:
        raise ConfigError(f"cannot parse {path}: {exc}") from exc
    if data is None:
        data = {}
    return config_from_dict(data)


def config_to_dict(cfg: SwarmConfig) -> dict:
    """Plain nested dict of the effective configuration, including every
    resolved default (so the dump is self-contained)."""
    return {
        "algorithm": cfg.algorithm,
        "swarm_size": cfg.swarm_size,
        "iterations": cfg.iterations,
        "seed": cfg.seed,
        "world": {
            "x_min": cfg.world.x_min, "x_max": cfg.world.x_max,
            "y_min": cfg.world.y_min, "y_max": cfg.world.y_max,
        },
        "mql": {
            "epsilon": cfg.mql.epsilon,
            "d_min": cfg.mql.d_min,
            "tau_r": cfg.mql.tau_r,
            "tau_s": cfg.mql.tau_s,
            "reward_max": cfg.mql.reward_max,
            "step_set": list(cfg.mql.step_set),
            "learning_rate": cfg.mql.learning.learning_rate,
            "discount": cfg.mql.learning.discount,
            "explore_rate": cfg.mql.learning.explore_rate,
            "schedule": cfg.mql.schedule,
            "init_span": cfg.mql.init_span,
            "recover_lost": cfg.mql.recover_lost,
        },
        "pso": {
            "c1": cfg.pso.c1,
            "c2": cfg.pso.c2,
            "inertia_w0": cfg.pso.inertia_w0,
            "inertia_decrement": cfg.pso.inertia_decrement,
            "constriction": cfg.pso.constriction,
            "v_min": cfg.pso.v_min,
            "v_max": cfg.pso.v_max,
            "canonical_velocity": cfg.pso.canonical_velocity,
            "target": None if cfg.pso_target is None
                      else [cfg.pso_target.x, cfg.pso_target.y],
        },
        "snapshot_ticks": list(cfg.snapshot_ticks),
        "decision_particles": list(cfg.decision_particles),
        "output_dir": cfg.output_dir,
    }


def dump_config(cfg: SwarmConfig) -> str:
    """YAML text of the effective config; load_config on it reproduces ``cfg``
    exactly (floats round-trip via repr)."""
    return yaml.safe_dump(config_to_dict(cfg), sort_keys=False, default_flow_style=False)
