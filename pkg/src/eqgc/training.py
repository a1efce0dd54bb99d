"""Exact-distribution training of EDU circuit classifiers.

The model on an n-node graph: prepare |+>^n, then for each of ``depth``
layer pairs apply a shared Euler-angle node unitary followed by a shared
undirected diagonal edge gate; measure, and map the fraction of |1>s
through a logistic readout.  Outcome distributions are exact (no sampling),
the loss is the expected binary cross-entropy, and gradients are computed
by reverse (adjoint) sweep over the gate tape; finite differences exist
only as a test oracle.

A layer pair carries 6 parameters (3 Euler angles + 3 edge phases); with
the logistic readout's slope and bias a depth-k model has 6k + 2.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.special import expit

from . import _backend
from .graphs import Graph, LabeledGraph, cycle_graph, cycles_dataset, disjoint_union
from .layers import HADAMARD, Circuit, DiagEdgeLayer, NodeLayer, apply_circuit, cz_phases, euler_unitary
from .simulator import ones_count_distribution, plus_state

__all__ = [
    "ModelParams",
    "TrainConfig",
    "EpochMetrics",
    "TrainResult",
    "init_params",
    "model_circuit",
    "forward",
    "predict",
    "expected_loss",
    "loss_gradient",
    "fd_gradient",
    "single_sample_accuracy",
    "many_sample_accuracy",
    "optimal_pair_accuracy",
    "adam_train",
    "experiment1",
    "experiment2",
]

PROB_FLOOR = 1e-12


@dataclass
class ModelParams:
    """``layers[l] = (t1, t2, t3, p00, p01, p11)``; ``readout = (slope, bias)``.

    Angles and phases are stored unwrapped; nothing reduces them mod 2π
    during optimization.
    """

    layers: np.ndarray
    readout: tuple[float, float]

    def __post_init__(self):
        self.layers = np.asarray(self.layers, dtype=np.float64).reshape(-1, 6)
        if not np.all(np.isfinite(self.layers)):
            raise ValueError("non-finite layer parameters")

    @property
    def depth(self) -> int:
        return self.layers.shape[0]

    @property
    def num_parameters(self) -> int:
        return 6 * self.depth + 2

    def to_vector(self) -> np.ndarray:
        return np.concatenate([self.layers.reshape(-1), np.asarray(self.readout)])

    @staticmethod
    def from_vector(vec: np.ndarray) -> "ModelParams":
        vec = np.asarray(vec, dtype=np.float64)
        if (vec.shape[0] - 2) % 6:
            raise ValueError("parameter vector length must be 6k + 2")
        return ModelParams(vec[:-2].reshape(-1, 6), (float(vec[-2]), float(vec[-1])))


@dataclass(frozen=True)
class TrainConfig:
    depth: int
    epochs: int = 100
    lr: float = 0.01
    decay: float = 0.99
    seed: int = 0

    def __post_init__(self):
        if self.epochs < 1:
            raise ValueError("epochs must be >= 1")
        if not self.lr > 0:
            raise ValueError("lr must be positive")
        if not 0 < self.decay <= 1:
            raise ValueError("decay must be in (0, 1]")
        if self.depth < 0:
            raise ValueError("depth must be nonnegative")


@dataclass(frozen=True)
class EpochMetrics:
    epoch: int
    loss: float
    train_ss: float
    train_ms: float
    eval_ss: float
    eval_ms: float
    grad_max: float


@dataclass(frozen=True)
class TrainResult:
    metrics: list[EpochMetrics]
    params: ModelParams


def init_params(rng: np.random.Generator, depth: int) -> ModelParams:
    """Angles and phases i.i.d. uniform on (−π, π); readout slope 4, bias −2."""
    return ModelParams(rng.uniform(-np.pi, np.pi, size=(depth, 6)), (4.0, -2.0))


def model_circuit(params: ModelParams) -> Circuit:
    """The equivalent layer-list circuit (verification interop, not the hot path)."""
    layers = []
    for t1, t2, t3, p00, p01, p11 in params.layers:
        layers.append(NodeLayer.from_euler(t1, t2, t3))
        layers.append(DiagEdgeLayer(np.array([p00, p01, p01, p11])))
    return Circuit(tuple(layers))


def _edge_diag(phases: np.ndarray) -> np.ndarray:
    p00, p01, p11 = phases
    return np.exp(1j * np.array([p00, p01, p01, p11]))


def _euler_derivatives(t1: float, t2: float, t3: float) -> list[np.ndarray]:
    rz1 = np.array([[np.exp(-0.5j * t1), 0], [0, np.exp(0.5j * t1)]])
    drz1 = np.array([[-0.5j * np.exp(-0.5j * t1), 0], [0, 0.5j * np.exp(0.5j * t1)]])
    c, s = np.cos(t2 / 2), np.sin(t2 / 2)
    ry = np.array([[c, -s], [s, c]], dtype=np.complex128)
    dry = 0.5 * np.array([[-s, -c], [c, -s]], dtype=np.complex128)
    rz3 = np.array([[np.exp(-0.5j * t3), 0], [0, np.exp(0.5j * t3)]])
    drz3 = np.array([[-0.5j * np.exp(-0.5j * t3), 0], [0, 0.5j * np.exp(0.5j * t3)]])
    return [rz3 @ ry @ drz1, rz3 @ dry @ rz1, drz3 @ ry @ rz1]


def _edge_diag_derivatives(phases: np.ndarray) -> list[np.ndarray]:
    p00, p01, p11 = phases
    zero = 0.0 + 0.0j
    return [
        np.array([1j * np.exp(1j * p00), zero, zero, zero]),
        np.array([zero, 1j * np.exp(1j * p01), 1j * np.exp(1j * p01), zero]),
        np.array([zero, zero, zero, 1j * np.exp(1j * p11)]),
    ]


def _forward_amps(params: ModelParams, g: Graph) -> np.ndarray:
    n = g.n
    amps = np.full(2**n, 2.0 ** (-n / 2), dtype=np.complex128)
    edges = g.sorted_edges()
    for row in params.layers:
        v = euler_unitary(row[0], row[1], row[2])
        for node in range(n):
            _backend.apply_1q(amps, v, n - 1 - node)
        d = _edge_diag(row[3:])
        for a, b in edges:
            _backend.apply_diag2(amps, d, n - 1 - a, n - 1 - b)
    return amps


_POPCOUNT_CACHE: dict[int, np.ndarray] = {}


def _popcounts(n: int) -> np.ndarray:
    if n not in _POPCOUNT_CACHE:
        idx = np.arange(2**n)
        out = np.zeros(2**n, dtype=np.int64)
        for b in range(n):
            out += (idx >> b) & 1
        _POPCOUNT_CACHE[n] = out
    return _POPCOUNT_CACHE[n]


def forward(params: ModelParams, g: Graph) -> np.ndarray:
    """Exact ones-count distribution (length n + 1) of the model on ``g``."""
    amps = _forward_amps(params, g)
    probs = np.abs(amps) ** 2
    return np.bincount(_popcounts(g.n), weights=probs, minlength=g.n + 1)


def predict(params: ModelParams, distribution: np.ndarray) -> np.ndarray:
    """Class-1 probability per outcome k: sigmoid(slope · k/n + bias)."""
    n = len(distribution) - 1
    a, c = params.readout
    k = np.arange(n + 1)
    return expit(a * k / n + c)


def _bce(label: int, p: np.ndarray) -> np.ndarray:
    p = np.clip(p, PROB_FLOOR, 1.0 - PROB_FLOOR)
    return -(label * np.log(p) + (1 - label) * np.log1p(-p))


def expected_loss(params: ModelParams, dataset: list[LabeledGraph]) -> float:
    total_w = sum(ex.weight for ex in dataset)
    acc = 0.0
    for ex in dataset:
        q = forward(params, ex.graph)
        acc += ex.weight * float(q @ _bce(ex.label, predict(params, q)))
    return acc / total_w


def _example_gradient(params: ModelParams, ex: LabeledGraph) -> tuple[float, np.ndarray]:
    """(loss, gradient) of one example via a reverse sweep over the gate tape."""
    g = ex.graph
    n = g.n
    edges = g.sorted_edges()
    amps = _forward_amps(params, g)

    pops = _popcounts(n)
    probs = np.abs(amps) ** 2
    q = np.bincount(pops, weights=probs, minlength=n + 1)
    p_k = predict(params, q)
    bce_k = _bce(ex.label, p_k)
    loss = float(q @ bce_k)

    frac = np.arange(n + 1) / n
    residual = p_k - ex.label
    grad = np.zeros(params.num_parameters)
    grad[-2] = float(q @ (residual * frac))
    grad[-1] = float(q @ residual)

    # costate seeded with d(loss)/d(amp*): bce of each basis string's ones count
    lam = bce_k[pops] * amps

    for layer_idx in range(params.depth - 1, -1, -1):
        row = params.layers[layer_idx]
        base = 6 * layer_idx

        d = _edge_diag(row[3:])
        d_conj = d.conj()
        dds = _edge_diag_derivatives(row[3:])
        for a_node, b_node in reversed(edges):
            pa, pb = n - 1 - a_node, n - 1 - b_node
            _backend.apply_diag2(amps, d_conj, pa, pb)
            for m in range(3):
                dpsi = amps.copy()
                _backend.apply_diag2(dpsi, dds[m], pa, pb)
                grad[base + 3 + m] += 2.0 * float(np.real(np.vdot(lam, dpsi)))
            _backend.apply_diag2(lam, d_conj, pa, pb)

        v = euler_unitary(row[0], row[1], row[2])
        v_dag = np.ascontiguousarray(v.conj().T)
        dvs = _euler_derivatives(row[0], row[1], row[2])
        for node in range(n - 1, -1, -1):
            pos = n - 1 - node
            _backend.apply_1q(amps, v_dag, pos)
            for m in range(3):
                dpsi = amps.copy()
                _backend.apply_1q(dpsi, dvs[m], pos)
                grad[base + m] += 2.0 * float(np.real(np.vdot(lam, dpsi)))
            _backend.apply_1q(lam, v_dag, pos)

    return loss, grad


def loss_gradient(params: ModelParams, dataset: list[LabeledGraph]) -> np.ndarray:
    """Gradient of the expected loss over all 6k + 2 parameters (adjoint method)."""
    return _loss_and_gradient(params, dataset)[1]


def _loss_and_gradient(params: ModelParams, dataset: list[LabeledGraph]) -> tuple[float, np.ndarray]:
    total_w = sum(ex.weight for ex in dataset)
    loss = 0.0
    grad = np.zeros(params.num_parameters)
    for ex in dataset:
        l, g = _example_gradient(params, ex)
        loss += ex.weight * l
        grad += ex.weight * g
    return loss / total_w, grad / total_w


def fd_gradient(params: ModelParams, dataset: list[LabeledGraph], step: float = 1e-5) -> np.ndarray:
    """Central finite differences on the flattened parameter vector (oracle)."""
    x0 = params.to_vector()
    out = np.zeros_like(x0)
    for i in range(x0.shape[0]):
        xp, xm = x0.copy(), x0.copy()
        xp[i] += step
        xm[i] -= step
        out[i] = (
            expected_loss(ModelParams.from_vector(xp), dataset)
            - expected_loss(ModelParams.from_vector(xm), dataset)
        ) / (2 * step)
    return out


def _example_ss(params: ModelParams, ex: LabeledGraph) -> float:
    q = forward(params, ex.graph)
    p_k = predict(params, q)
    correct = (p_k > 0.5) if ex.label == 1 else (p_k < 0.5)
    return float(q @ correct.astype(np.float64))


def single_sample_accuracy(params: ModelParams, dataset: list[LabeledGraph]) -> float:
    """Weighted probability that one measurement classifies correctly (ties lose)."""
    total_w = sum(ex.weight for ex in dataset)
    return sum(ex.weight * _example_ss(params, ex) for ex in dataset) / total_w


def many_sample_accuracy(params: ModelParams, dataset: list[LabeledGraph]) -> float:
    """Weighted fraction of examples whose per-example accuracy exceeds 1/2."""
    total_w = sum(ex.weight for ex in dataset)
    return (
        sum(ex.weight for ex in dataset if _example_ss(params, ex) > 0.5) / total_w
    )


def optimal_pair_accuracy(dist_a: np.ndarray, dist_b: np.ndarray) -> float:
    """Best achievable accuracy distinguishing two equiprobable outcome distributions."""
    return 0.5 * float(np.sum(np.maximum(dist_a, dist_b)))


def adam_train(
    config: TrainConfig,
    train_set: list[LabeledGraph],
    eval_set: list[LabeledGraph],
) -> TrainResult:
    """Full-batch Adam (β1 0.9, β2 0.999, ε 1e-8) with per-epoch lr decay.

    Metrics are recorded at the pre-update parameters of every epoch plus a
    final row after the last update, so rows run epoch = 0..epochs.
    """
    rng = np.random.default_rng(config.seed)
    params = init_params(rng, config.depth)
    x = params.to_vector()

    beta1, beta2, eps = 0.9, 0.999, 1e-8
    m = np.zeros_like(x)
    v = np.zeros_like(x)
    rows: list[EpochMetrics] = []

    def measure(epoch: int, loss: float, grad: np.ndarray) -> EpochMetrics:
        p = ModelParams.from_vector(x)
        return EpochMetrics(
            epoch=epoch,
            loss=loss,
            train_ss=single_sample_accuracy(p, train_set),
            train_ms=many_sample_accuracy(p, train_set),
            eval_ss=single_sample_accuracy(p, eval_set),
            eval_ms=many_sample_accuracy(p, eval_set),
            grad_max=float(np.abs(grad).max()),
        )

    for epoch in range(config.epochs):
        loss, grad = _loss_and_gradient(ModelParams.from_vector(x), train_set)
        rows.append(measure(epoch, loss, grad))
        lr_t = config.lr * config.decay**epoch
        m = beta1 * m + (1 - beta1) * grad
        v = beta2 * v + (1 - beta2) * grad**2
        mhat = m / (1 - beta1 ** (epoch + 1))
        vhat = v / (1 - beta2 ** (epoch + 1))
        x = x - lr_t * mhat / (np.sqrt(vhat) + eps)

    loss, grad = _loss_and_gradient(ModelParams.from_vector(x), train_set)
    rows.append(measure(config.epochs, loss, grad))
    return TrainResult(rows, ModelParams.from_vector(x))


def experiment1(alpha_grid: np.ndarray) -> list[dict]:
    """The one-parameter expressivity probe on the 1-WL-indistinguishable pair.

    For each alpha: CZ(alpha) per edge then Hadamard per node, on the
    two-triangles graph and the 6-cycle; returns their ones-count
    distributions and the optimal-aggregator accuracy.
    """
    g1 = disjoint_union(cycle_graph(3), cycle_graph(3))
    g2 = cycle_graph(6)
    rows = []
    for alpha in np.asarray(alpha_grid, dtype=np.float64):
        circuit = Circuit((DiagEdgeLayer(cz_phases(alpha)), NodeLayer(HADAMARD)))
        d1 = ones_count_distribution(apply_circuit(circuit, g1, plus_state(6)))
        d2 = ones_count_distribution(apply_circuit(circuit, g2, plus_state(6)))
        rows.append(
            {
                "alpha": float(alpha),
                "probs_g1": d1,
                "probs_g2": d2,
                "accuracy": optimal_pair_accuracy(d1, d2),
            }
        )
    return rows


def experiment2(
    depths: list[int],
    seeds: int,
    epochs: int = 100,
    lr: float = 0.01,
    decay: float = 0.99,
    base_seed: int = 0,
) -> dict[tuple[int, int], TrainResult]:
    """Train on the cycle-classification dataset for each depth and seed."""
    train_set, eval_set = cycles_dataset()
    results = {}
    for depth in depths:
        for s in range(seeds):
            config = TrainConfig(depth=depth, epochs=epochs, lr=lr, decay=decay, seed=base_seed + s)
            results[(depth, s)] = adam_train(config, train_set, eval_set)
    return results
