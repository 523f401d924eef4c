"""Inverse training: gradient ascent on the 24 input weights of a frozen net.

The model's parameters are never modified; only the input graph moves.
Plain fixed-learning-rate ascent is the default; Adam-style ascent is
available behind a config flag.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import states
from .nn import Adam, input_gradient, predict, truncate_at_neuron
from .states import DegenerateStateError, Property, property_gradient, property_value, random_graph


@dataclass
class DreamConfig:
    steps: int = 2000
    lr: float = 1e-4
    snapshot_stride: int = 10
    clamp: bool = True          # project weights to [-1, 1] after each step
    use_adam: bool = False
    seed: int = 0

    def __post_init__(self):
        if self.steps < 1 or self.lr <= 0 or self.snapshot_stride < 1:
            raise ValueError("steps and snapshot_stride must be >= 1, lr > 0")


@dataclass
class Snapshot:
    step: int
    weights: np.ndarray
    predicted: float
    true_value: float  # nan when the property is undefined or not requested


@dataclass
class DreamTrajectory:
    prop: Property | None
    snapshots: list[Snapshot] = field(default_factory=list)

    @property
    def initial(self):
        return self.snapshots[0]

    @property
    def final(self):
        return self.snapshots[-1]


@dataclass
class DreamEnsembleResult:
    prop: Property
    initial_true: np.ndarray
    final_true: np.ndarray
    final_graphs: np.ndarray
    failures: list[int] = field(default_factory=list)

    @property
    def mean_initial(self):
        return float(np.mean(self.initial_true))

    @property
    def mean_final(self):
        return float(np.mean(self.final_true))

    @property
    def max_final(self):
        return float(np.max(self.final_true))

    def fraction_above(self, cap=0.5):
        return float(np.mean(self.final_true > cap))


def _true_value(weights, prop):
    if prop is None:
        return math.nan
    try:
        return property_value(weights, prop)
    except DegenerateStateError:
        return math.nan


def _ascend(gradient_fn, value_fn, g0, prop, cfg):
    x = np.asarray(g0, dtype=np.float64).copy()
    traj = DreamTrajectory(prop)
    traj.snapshots.append(Snapshot(0, x.copy(), value_fn(x), _true_value(x, prop)))
    opt = Adam([x]) if cfg.use_adam else None
    for step in range(1, cfg.steps + 1):
        grad = gradient_fn(x)
        if opt is not None:
            opt.step([x], [-grad], cfg.lr)  # Adam steps descend; negate for ascent
        else:
            x += cfg.lr * grad
        if cfg.clamp:
            np.clip(x, -1.0, 1.0, out=x)
        if step % cfg.snapshot_stride == 0 or step == cfg.steps:
            traj.snapshots.append(
                Snapshot(step, x.copy(), value_fn(x), _true_value(x, prop)))
    return traj


def dream(model, g0, prop, cfg):
    """Maximize the frozen model's output by ascent on the input graph.

    prop selects the true property recomputed at snapshots (None skips it,
    e.g. for hidden-neuron dreams where no ground truth exists).
    """
    if prop is not None:
        prop = Property(prop)
    before = model.checksum()
    traj = _ascend(lambda x: input_gradient(model, x),
                   lambda x: float(predict(model, x)), g0, prop, cfg)
    assert model.checksum() == before, "model parameters changed during dreaming"
    return traj


def dream_oracle(g0, prop, cfg):
    """Ascent on the true property gradient; no network involved.

    Validates the dreaming pipeline independently of any trained model.
    """
    prop = Property(prop)
    # raises DegenerateStateError immediately on a degenerate start
    property_value(g0, prop)
    return _ascend(lambda x: property_gradient(x, prop),
                   lambda x: property_value(x, prop), g0, prop, cfg)


def run_seeds(seed, n):
    """Independent per-run seed streams derived from one base seed."""
    return np.random.SeedSequence(seed).spawn(n)


def dream_ensemble(model, prop, n_runs, cfg):
    """n_runs independent dreams from random starts; aggregates true values.

    Runs whose initial or final state is degenerate are recorded in
    `failures` and excluded from the aggregates.
    """
    prop = Property(prop)
    if n_runs < 1:
        raise ValueError("n_runs must be >= 1")
    initial, final, graphs, failures = [], [], [], []
    run_cfg = DreamConfig(steps=cfg.steps, lr=cfg.lr, snapshot_stride=cfg.steps,
                          clamp=cfg.clamp, use_adam=cfg.use_adam, seed=cfg.seed)
    for run, seq in enumerate(run_seeds(cfg.seed, n_runs)):
        g0 = random_graph(np.random.default_rng(seq))
        traj = dream(model, g0, prop, run_cfg)
        first, last = traj.initial.true_value, traj.final.true_value
        if math.isnan(first) or math.isnan(last):
            failures.append(run)
            continue
        initial.append(first)
        final.append(last)
        graphs.append(traj.final.weights)
    return DreamEnsembleResult(prop, np.array(initial), np.array(final),
                               np.array(graphs), failures)


def dream_neuron(model, selector, k_inits, cfg):
    """Dream on one neuron from k_inits random starts.

    Returns a list of (final graph, 3x16 PM probability array) pairs for
    the analysis stage.
    """
    if k_inits < 1:
        raise ValueError("k_inits must be >= 1")
    truncated = truncate_at_neuron(model, selector)
    results = []
    for seq in run_seeds(cfg.seed, k_inits):
        g0 = random_graph(np.random.default_rng(seq))
        traj = dream(truncated, g0, None, cfg)
        final = traj.final.weights
        results.append((final, states.pm_probability_array(final)))
    return results
