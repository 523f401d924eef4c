"""Feed-forward network with from-scratch backprop, Adam, and training loop.

All arithmetic is float64. Models are plain dataclasses of numpy arrays;
forward/backward are hand-written reverse mode (no autodiff framework).
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

ADAM_BETA1 = 0.9
ADAM_BETA2 = 0.999
ADAM_EPS = 1e-8


@dataclass
class Mlp:
    layer_sizes: list[int]
    activation: str               # "relu" or "elu"
    weights: list[np.ndarray]     # per layer, shape (out, in)
    biases: list[np.ndarray]      # per layer, shape (out,)
    alpha: float = 1.0            # ELU alpha; ignored for relu
    activate_output: bool = False  # hidden-neuron truncations keep their activation
    seed: int | None = None

    @property
    def n_layers(self):
        return len(self.weights)

    def copy(self):
        return replace(self, weights=[w.copy() for w in self.weights],
                       biases=[b.copy() for b in self.biases],
                       layer_sizes=list(self.layer_sizes))

    def checksum(self):
        """Order-sensitive parameter digest; used by the frozen-model checks."""
        import hashlib
        h = hashlib.sha256()
        for w, b in zip(self.weights, self.biases):
            h.update(np.ascontiguousarray(w).tobytes())
            h.update(np.ascontiguousarray(b).tobytes())
        return h.hexdigest()


@dataclass
class NeuronSelector:
    """layer is 1-based over hidden layers; layer == n_layers selects output."""
    layer: int
    neuron: int


@dataclass
class TrainConfig:
    batch_size: int = 5000
    test_fraction: float = 0.05   # 95:5 train-test split
    lr_init: float = 1e-3
    lr_decay: float = 0.95
    plateau_window: int = 25
    plateau_rel_tol: float = 1e-3  # "does not change significantly"
    convergence_patience: int = 400
    max_epochs: int = 5000
    label_cap: float = 0.5
    seed: int = 0


@dataclass
class TrainHistory:
    train_mse: list[float] = field(default_factory=list)
    test_mse: list[float] = field(default_factory=list)
    learning_rate: list[float] = field(default_factory=list)

    @property
    def epochs_run(self):
        return len(self.test_mse)

    @property
    def final_test_mse(self):
        return min(self.test_mse) if self.test_mse else float("nan")


def _activate(z, activation, alpha):
    if activation == "relu":
        return np.maximum(z, 0.0)
    if activation == "elu":
        return np.where(z > 0.0, z, alpha * np.expm1(z))
    raise ValueError(f"unknown activation {activation!r}")


def _activate_grad(z, activation, alpha):
    if activation == "relu":
        return (z > 0.0).astype(np.float64)
    return np.where(z > 0.0, 1.0, alpha * np.exp(z))


def init_mlp(layer_sizes, activation="relu", seed=0, alpha=1.0):
    """Fan-in scaled uniform init, bound sqrt(1/fan_in); deterministic per seed."""
    sizes = list(layer_sizes)
    if len(sizes) < 2 or any(s < 1 for s in sizes):
        raise ValueError(f"invalid layer sizes {sizes}")
    rng = np.random.default_rng(seed)
    weights, biases = [], []
    for fan_in, fan_out in zip(sizes[:-1], sizes[1:]):
        bound = np.sqrt(1.0 / fan_in)
        weights.append(rng.uniform(-bound, bound, (fan_out, fan_in)))
        biases.append(rng.uniform(-bound, bound, fan_out))
    return Mlp(sizes, activation, weights, biases, alpha=alpha, seed=seed)


def forward(model, x):
    """Forward pass; returns (outputs, pre_activations, post_activations).

    x may be a single input (d,) or a batch (n, d). post_activations[0] is
    the input itself; outputs has the trailing unit axis squeezed.
    """
    x = np.asarray(x, dtype=np.float64)
    single = x.ndim == 1
    a = x[None, :] if single else x
    if a.shape[1] != model.layer_sizes[0]:
        raise ValueError(f"input width {a.shape[1]} != {model.layer_sizes[0]}")
    pres, posts = [], [a]
    last = model.n_layers - 1
    for layer, (w, b) in enumerate(zip(model.weights, model.biases)):
        z = a @ w.T + b
        pres.append(z)
        if layer < last or model.activate_output:
            a = _activate(z, model.activation, model.alpha)
        else:
            a = z
        posts.append(a)
    out = a[:, 0] if a.shape[1] == 1 else a
    if single:
        out = out[0] if np.ndim(out) else out
        pres = [p[0] for p in pres]
        posts = [p[0] for p in posts]
    return out, pres, posts


def predict(model, x):
    """Scalar output(s) only."""
    return forward(model, x)[0]


def param_gradients(model, x, y):
    """Gradients of the mean squared error over the batch.

    Returns (weight_grads, bias_grads) matching the model's parameter lists.
    """
    x = np.atleast_2d(np.asarray(x, dtype=np.float64))
    y = np.asarray(y, dtype=np.float64).reshape(-1)
    if len(x) != len(y) or len(x) == 0:
        raise ValueError("batch inputs and labels must be nonempty and aligned")
    out, pres, posts = forward(model, x)
    n = len(y)
    delta = (2.0 / n) * (out - y)[:, None]  # dL/dz at the (identity) output
    if model.activate_output:
        delta = delta * _activate_grad(pres[-1], model.activation, model.alpha)
    w_grads = [None] * model.n_layers
    b_grads = [None] * model.n_layers
    for layer in range(model.n_layers - 1, -1, -1):
        w_grads[layer] = delta.T @ posts[layer]
        b_grads[layer] = delta.sum(axis=0)
        if layer > 0:
            delta = (delta @ model.weights[layer]) * _activate_grad(
                pres[layer - 1], model.activation, model.alpha)
    return w_grads, b_grads


def input_gradient(model, x):
    """Gradient of the scalar output w.r.t. the input; parameters untouched.

    Accepts (d,) or (n, d); returns the matching shape.
    """
    x = np.asarray(x, dtype=np.float64)
    single = x.ndim == 1
    xb = np.atleast_2d(x)
    _, pres, _ = forward(model, xb)
    delta = np.ones((len(xb), 1))
    if model.activate_output:
        delta = delta * _activate_grad(pres[-1], model.activation, model.alpha)
    for layer in range(model.n_layers - 1, 0, -1):
        delta = (delta @ model.weights[layer]) * _activate_grad(
            pres[layer - 1], model.activation, model.alpha)
    grad = delta @ model.weights[0]
    return grad[0] if single else grad


class Adam:
    """Bias-corrected Adam; state shapes mirror the parameter list."""

    def __init__(self, params, beta1=ADAM_BETA1, beta2=ADAM_BETA2, eps=ADAM_EPS):
        self.beta1, self.beta2, self.eps = beta1, beta2, eps
        self.m = [np.zeros_like(p) for p in params]
        self.v = [np.zeros_like(p) for p in params]
        self.t = 0

    def step(self, params, grads, lr):
        """Descent step in place: params <- params - lr * adam(grads)."""
        self.t += 1
        c1 = 1.0 - self.beta1 ** self.t
        c2 = 1.0 - self.beta2 ** self.t
        for p, g, m, v in zip(params, grads, self.m, self.v):
            m *= self.beta1
            m += (1.0 - self.beta1) * g
            v *= self.beta2
            v += (1.0 - self.beta2) * g * g
            p -= lr * (m / c1) / (np.sqrt(v / c2) + self.eps)


def evaluate(model, x, y):
    """Mean squared error over a dataset."""
    y = np.asarray(y, dtype=np.float64).reshape(-1)
    if len(y) == 0:
        raise ValueError("empty evaluation set")
    out = predict(model, np.atleast_2d(x))
    return float(np.mean((out - y) ** 2))


def train(inputs, labels, layer_sizes, config=None, activation="relu", alpha=1.0):
    """Mini-batch Adam training with plateau LR decay and best-MSE patience.

    Splits the data (shuffled, seeded) into train/test, decays the learning
    rate by config.lr_decay whenever the best test MSE has not improved by
    config.plateau_rel_tol (relative) over a plateau window, and stops once
    no new best test MSE appears for config.convergence_patience epochs or
    the epoch cap is hit. Returns (best model, history).
    """
    cfg = config or TrainConfig()
    x = np.asarray(inputs, dtype=np.float64)
    y = np.asarray(labels, dtype=np.float64).reshape(-1)
    if len(x) == 0:
        raise ValueError("empty dataset")
    if len(x) != len(y):
        raise ValueError("inputs and labels misaligned")
    rng = np.random.default_rng(cfg.seed)
    perm = rng.permutation(len(x))
    n_test = max(1, int(round(len(x) * cfg.test_fraction)))
    test_idx, train_idx = perm[:n_test], perm[n_test:]
    x_train, y_train = x[train_idx], y[train_idx]
    x_test, y_test = x[test_idx], y[test_idx]

    model = init_mlp(layer_sizes, activation=activation, seed=cfg.seed, alpha=alpha)
    params = model.weights + model.biases
    opt = Adam(params)
    lr = cfg.lr_init
    history = TrainHistory()
    best_mse = np.inf
    best_params = None
    best_epoch = 0
    window_best = np.inf
    batch = min(cfg.batch_size, len(x_train))

    for epoch in range(1, cfg.max_epochs + 1):
        order = rng.permutation(len(x_train))
        batch_losses = []
        for start in range(0, len(x_train) - batch + 1, batch):
            idx = order[start:start + batch]
            xb, yb = x_train[idx], y_train[idx]
            w_grads, b_grads = param_gradients(model, xb, yb)
            batch_losses.append(float(np.mean((predict(model, xb) - yb) ** 2)))
            opt.step(params, w_grads + b_grads, lr)
        train_mse = float(np.mean(batch_losses))
        test_mse = evaluate(model, x_test, y_test)
        if not np.isfinite(train_mse) or not np.isfinite(test_mse):
            raise FloatingPointError(
                f"non-finite loss at epoch {epoch} (train={train_mse}, test={test_mse})")
        history.train_mse.append(train_mse)
        history.test_mse.append(test_mse)
        history.learning_rate.append(lr)
        if test_mse < best_mse:
            best_mse = test_mse
            best_epoch = epoch
            best_params = ([w.copy() for w in model.weights],
                           [b.copy() for b in model.biases])
        if epoch % cfg.plateau_window == 0:
            if best_mse > window_best * (1.0 - cfg.plateau_rel_tol):
                lr *= cfg.lr_decay
            window_best = best_mse
        if epoch - best_epoch >= cfg.convergence_patience:
            break

    if best_params is not None:
        model.weights, model.biases = best_params
    return model, history


def truncate_at_neuron(model, selector):
    """Sub-network whose scalar output is the selected neuron's activation.

    For hidden neurons the truncated net applies the hidden activation at
    its output so the value matches forward()'s recorded post-activation;
    selecting the output neuron returns a copy of the full net.
    """
    layer, neuron = selector.layer, selector.neuron
    if not 1 <= layer <= model.n_layers:
        raise ValueError(f"layer {layer} out of range 1..{model.n_layers}")
    if not 0 <= neuron < model.layer_sizes[layer]:
        raise ValueError(f"neuron {neuron} out of range for layer {layer}")
    if layer == model.n_layers and model.layer_sizes[-1] == 1:
        return model.copy()
    weights = [w.copy() for w in model.weights[:layer - 1]]
    biases = [b.copy() for b in model.biases[:layer - 1]]
    weights.append(model.weights[layer - 1][neuron:neuron + 1].copy())
    biases.append(model.biases[layer - 1][neuron:neuron + 1].copy())
    activate_output = layer < model.n_layers or model.activate_output
    return Mlp(model.layer_sizes[:layer] + [1], model.activation, weights,
               biases, alpha=model.alpha, activate_output=activate_output,
               seed=model.seed)
