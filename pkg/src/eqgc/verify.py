"""Mechanical verification suites tying every module's claims together.

Each suite returns :class:`CheckResult` rows (name, pass/fail, tolerance,
witness detail); the CLI ``verify`` subcommand prints them and sets the
exit code, and the acceptance tests reuse the same functions.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from . import eqspace, mpnn, parity, training
from .graphs import Graph, Permutation, cycle_graph, cycles_dataset, permute_graph
from .layers import (
    HADAMARD,
    Circuit,
    DiagEdgeLayer,
    EdgeLayer,
    EduGate,
    EhLayer,
    NodeLayer,
    absorb_redundancy,
    apply_circuit,
    check_commutativity,
    check_directed_conditions,
    check_equivariance,
    check_undirected_symmetry,
    circuit_unitary,
    edu_matrix,
    edu_to_eh,
    embed_klocal,
    node_layer_to_eh,
)
from .linalg import kron_all, random_hermitian, random_unitary
from .simulator import ones_count_distribution, permutation_operator, plus_state
from .training import ModelParams, fd_gradient, loss_gradient

__all__ = [
    "CheckResult",
    "random_edu_gate",
    "random_graph",
    "random_circuit",
    "equivariance_suite",
    "gate_condition_suite",
    "conversion_suite",
    "cycle_support_suite",
    "dimension_suite",
    "mpnn_suite",
    "gradient_suite",
    "expressivity_suite",
    "redundancy_suite",
    "all_suites",
]


@dataclass(frozen=True)
class CheckResult:
    suite: str
    name: str
    passed: bool
    tolerance: float | None = None
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        tol = f" (tol={self.tolerance:g})" if self.tolerance is not None else ""
        detail = f": {self.detail}" if self.detail else ""
        return f"[{status}] {self.suite}: {self.name}{tol}{detail}"


def random_edu_gate(rng: np.random.Generator, s: int = 2, undirected: bool = True) -> EduGate:
    phases = rng.uniform(-np.pi, np.pi, size=(s, s))
    if undirected:
        phases = 0.5 * (phases + phases.T)
    return EduGate(v=random_unitary(rng, s), d_phases=phases.reshape(-1), undirected=undirected)


def random_graph(rng: np.random.Generator, n: int, p: float = 0.5) -> Graph:
    edges = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p]
    return Graph.from_edges(n, edges)


def _random_swap_symmetric_hermitian(rng: np.random.Generator, s: int) -> np.ndarray:
    h = random_hermitian(rng, s * s, scale=0.5)
    swap = permutation_operator(Permutation((1, 0)), 2, s)
    return 0.5 * (h + swap @ h @ swap)


def random_circuit(rng: np.random.Generator, n_layers: int, s: int = 2, kinds=("node", "edge", "eh")) -> Circuit:
    layers = []
    for _ in range(n_layers):
        kind = kinds[int(rng.integers(len(kinds)))]
        if kind == "node":
            layers.append(NodeLayer(random_unitary(rng, s)))
        elif kind == "edge":
            layers.append(EdgeLayer(random_edu_gate(rng, s)))
        elif kind == "diag":
            phases = rng.uniform(-np.pi, np.pi, size=(s, s))
            layers.append(DiagEdgeLayer((0.5 * (phases + phases.T)).reshape(-1)))
        elif kind == "eh":
            layers.append(
                EhLayer(
                    h_node=random_hermitian(rng, s, scale=0.5),
                    h_edge=_random_swap_symmetric_hermitian(rng, s),
                )
            )
        else:
            raise ValueError(f"unknown layer kind {kind!r}")
    return Circuit(tuple(layers))


def _permutations_to_check(rng: np.random.Generator, n: int) -> list[Permutation]:
    if n <= 4:
        return [Permutation(p) for p in itertools.permutations(range(n))]
    return [Permutation.random(rng, n) for _ in range(10)]


def equivariance_suite(seed: int = 0, trials: int = 50, tol: float = 1e-9) -> list[CheckResult]:
    """Random circuits on random graphs satisfy the permutation identity."""
    rng = np.random.default_rng(seed)
    results = []
    failed_detail = ""
    dist_worst = 0.0
    for trial in range(trials):
        n = int(rng.integers(2, 6))
        g = random_graph(rng, n)
        c = random_circuit(rng, int(rng.integers(1, 4)))
        for p in _permutations_to_check(rng, n):
            if not check_equivariance(c, g, p, tol):
                failed_detail = f"trial {trial}: n={n}, p={p.image}"
                break
        if failed_detail:
            break
        # distributions agree on isomorphic presentations
        state = apply_circuit(c, g, plus_state(n))
        d0 = ones_count_distribution(state)
        p = Permutation.random(rng, n)
        d1 = ones_count_distribution(apply_circuit(c, permute_graph(g, p), plus_state(n)))
        dist_worst = max(dist_worst, float(np.abs(d0 - d1).max()))
    results.append(
        CheckResult(
            "equivariance",
            f"permutation identity on {trials} random circuits",
            not failed_detail,
            tol,
            failed_detail,
        )
    )
    results.append(
        CheckResult(
            "equivariance",
            "outcome distributions invariant under relabeling",
            dist_worst <= tol and not failed_detail,
            tol,
            f"max deviation {dist_worst:.2e}",
        )
    )
    # negative control: a node-0-only gate is not equivariant
    g = cycle_graph(3)

    def lopsided(graph: Graph) -> np.ndarray:
        x = np.array([[0, 1], [1, 0]], dtype=np.complex128)
        return embed_klocal(x, [0], graph.n, 2)

    moved = Permutation((1, 2, 0))
    results.append(
        CheckResult(
            "equivariance",
            "negative control: single-node gate rejected",
            not check_equivariance(lopsided, g, moved, tol),
            tol,
        )
    )
    return results


def gate_condition_suite(seed: int = 0, trials: int = 20, tol: float = 1e-9) -> list[CheckResult]:
    """EDUs pass the shared-node, symmetry, and direction checks; generic gates fail."""
    rng = np.random.default_rng(seed)
    results = []
    bad = ""
    for trial in range(trials):
        gate = random_edu_gate(rng, 2)
        m = edu_matrix(gate)
        if not check_commutativity(m, tol):
            bad = f"trial {trial}: commutativity"
            break
        if not check_undirected_symmetry(m, tol):
            bad = f"trial {trial}: undirected symmetry"
            break
        if not check_directed_conditions(m, tol):
            bad = f"trial {trial}: directed conditions"
            break
        directed = random_edu_gate(rng, 2, undirected=False)
        if not check_directed_conditions(edu_matrix(directed), tol):
            bad = f"trial {trial}: directed conditions (asymmetric D)"
            break
    results.append(
        CheckResult("gate-conditions", f"{trials} random EDUs pass all checks", not bad, tol, bad)
    )

    # swap is not an EDU (its eigenbasis is not a product basis) and composing
    # the transpositions (01), (02) gives two different 3-cycles
    swap = np.eye(4, dtype=np.complex128)[[0, 2, 1, 3]]
    results.append(
        CheckResult(
            "gate-conditions",
            "negative control: swap gate is order-dependent",
            not check_commutativity(swap, tol),
            tol,
        )
    )

    cx = np.eye(4, dtype=np.complex128)[[0, 1, 3, 2]]
    results.append(
        CheckResult(
            "gate-conditions",
            "negative control: controlled-X is direction-sensitive",
            not check_undirected_symmetry(cx, tol),
            tol,
        )
    )

    found_noncommuting = False
    for _ in range(20):
        u = random_unitary(rng, 4)
        if not check_commutativity(u, tol):
            found_noncommuting = True
            break
    results.append(
        CheckResult(
            "gate-conditions",
            "negative control: generic two-node unitary fails commutativity",
            found_noncommuting,
            tol,
        )
    )
    return results


def conversion_suite(seed: int = 0, trials: int = 50, tol: float = 1e-8) -> list[CheckResult]:
    """Node/EDU-layer circuits equal their Hamiltonian-layer conversions."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    detail = ""
    for trial in range(trials):
        n = int(rng.integers(2, 5))
        g = random_graph(rng, n)
        pairs = int(rng.integers(1, 4))
        layers = []
        for _ in range(pairs):
            layers += [NodeLayer(random_unitary(rng, 2)), EdgeLayer(random_edu_gate(rng, 2))]
        original = Circuit(tuple(layers))
        eh_layers = []
        for layer in original.layers:
            if isinstance(layer, NodeLayer):
                eh_layers.append(node_layer_to_eh(layer.v))
            else:
                eh_layers.extend(edu_to_eh(layer.gate))
        eh = Circuit(tuple(eh_layers))
        dev = float(np.abs(circuit_unitary(original, g) - circuit_unitary(eh, g)).max())
        worst = max(worst, dev)
        if dev > tol and not detail:
            detail = f"trial {trial}: n={n}, deviation {dev:.2e}"
    return [
        CheckResult(
            "hamiltonian-conversion",
            f"{trials} random EDU circuits match their converted form",
            worst <= tol,
            tol,
            detail or f"worst deviation {worst:.2e}",
        )
    ]


def cycle_support_suite(n_range=range(3, 11), tol: float = 1e-10) -> list[CheckResult]:
    """Reduction-predicted supports/probabilities match the statevector on cycles."""
    results = []
    for n in n_range:
        try:
            parity.crosscheck_cycle(n, tol)
            size = len(parity.observable_set(n))
            expected = 2 ** (n - 1) if n % 2 else 2 ** (n - 2)
            ok = size == expected
            detail = f"support size {size}"
        except parity.VerificationError as exc:
            ok = False
            detail = str(exc)
        results.append(CheckResult("cycle-support", f"n={n}", ok, tol, detail))
    return results


def dimension_suite(tol: float = 1e-10) -> list[CheckResult]:
    """Dimension formulas against the rank oracle; weight formulas against circuits."""
    results = []
    expected = {1: 4, 2: 10, 3: 20, 4: 35, 5: 56}
    for n in range(1, 6):
        formula = eqspace.full_dimension(n)
        rank = eqspace.rank_oracle(n)
        results.append(
            CheckResult(
                "equivariant-dimension",
                f"full dimension n={n}",
                formula == rank == expected[n],
                None,
                f"formula {formula}, rank {rank}",
            )
        )
    diag_ok = all(eqspace.diagonal_dimension(n, 2) == n + 1 for n in range(1, 11))
    results.append(CheckResult("equivariant-dimension", "diagonal dimension (s=2) is n+1", diag_ok))

    # worked weight tables against brute-force circuits
    n, alpha = 3, 0.7368
    w = eqspace.cz_all_pairs_weights(n, alpha)
    complete = Graph.from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n)])
    circuit = Circuit((DiagEdgeLayer(np.array([0.0, 0.0, 0.0, -alpha])),))
    dev_cz = float(np.abs(eqspace.matrix_from_weights(w) - circuit_unitary(circuit, complete)).max())
    results.append(
        CheckResult("equivariant-dimension", "all-pairs CZ weight table", dev_cz <= tol, tol, f"deviation {dev_cz:.2e}")
    )

    dev_u = 0.0
    for u, n_u in ((HADAMARD, 2), (np.array([[0, 1], [1, 0]], dtype=np.complex128), 3)):
        w = eqspace.uniform_unitary_weights(u, n_u)
        dev_u = max(dev_u, float(np.abs(eqspace.matrix_from_weights(w) - kron_all([u] * n_u)).max()))
    results.append(
        CheckResult("equivariant-dimension", "uniform-unitary weight table", dev_u <= tol, tol, f"deviation {dev_u:.2e}")
    )
    return results


def _all_graphs_up_to(n_max: int):
    for n in range(1, n_max + 1):
        all_pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
        for mask in range(2 ** len(all_pairs)):
            edges = [e for i, e in enumerate(all_pairs) if (mask >> i) & 1]
            yield Graph.from_edges(n, edges)


def mpnn_suite(seed: int = 0) -> list[CheckResult]:
    """Compiled message passing is bit-exact, and the uniqueness bound holds."""
    rng = np.random.default_rng(seed)
    results = []

    spec_b1 = mpnn.MpnnSpec.from_function(1, 1, 1, lambda h, a: (h[0] ^ a[0],))
    bad = ""
    for g in _all_graphs_up_to(3):
        for init in itertools.product(range(2), repeat=g.n):
            try:
                mpnn.verify_simulation(spec_b1, g, [(x,) for x in init])
            except mpnn.SimulationMismatch as exc:
                bad = f"b=1, n={g.n}, init={init}: {exc}"
                break
        if bad:
            break
    results.append(CheckResult("mpnn-simulation", "b=1, all graphs n<=3, exhaustive inits", not bad, None, bad))

    spec_b2 = mpnn.MpnnSpec.from_function(1, 1, 2, lambda h, a: ((h[0] + 2 * a[0]) % 4,))
    bad = ""
    for g in _all_graphs_up_to(3):
        for _ in range(20):
            init = [(int(rng.integers(4)),) for _ in range(g.n)]
            try:
                mpnn.verify_simulation(spec_b2, g, init)
            except mpnn.SimulationMismatch as exc:
                bad = f"b=2, n={g.n}, init={init}: {exc}"
                break
        if bad:
            break
    results.append(CheckResult("mpnn-simulation", "b=2, all graphs n<=3, 20 random inits each", not bad, None, bad))

    gate1 = edu_matrix(mpnn.addition_edu(1))
    results.append(
        CheckResult(
            "mpnn-simulation",
            "addition gate passes commutativity and undirected symmetry",
            check_commutativity(gate1) and check_undirected_symmetry(gate1)
            and check_undirected_symmetry(edu_matrix(mpnn.addition_edu(2))),
            1e-9,
        )
    )

    bound_ok = True
    witness = ""
    for n in range(1, 17):
        for b in range(1, 11):
            exact = mpnn.uniqueness_probability_exact(n, b)
            approx = mpnn.uniqueness_probability(n, b)
            if abs(approx - float(exact)) > 1e-12:
                bound_ok, witness = False, f"product mismatch at n={n}, b={b}"
                break
            if not mpnn.uniqueness_bound_holds(n, b):
                bound_ok, witness = False, f"union bound fails at n={n}, b={b}"
                break
        if not bound_ok:
            break
    results.append(CheckResult("mpnn-simulation", "uniqueness probability and union bound (n<=16, b<=10)", bound_ok, None, witness))
    return results


def gradient_suite(seed: int = 0, points: int = 20, tol: float = 1e-3) -> list[CheckResult]:
    """Adjoint gradients match central finite differences at random points."""
    rng = np.random.default_rng(seed)
    train, _ = cycles_dataset()
    dataset = train[:3]
    results = []
    for depth in (1, 4):
        worst = 0.0
        detail = ""
        for point in range(points):
            params = ModelParams(rng.uniform(-np.pi, np.pi, size=(depth, 6)), (rng.uniform(1, 5), rng.uniform(-3, 1)))
            exact = loss_gradient(params, dataset)
            fd = fd_gradient(params, dataset)
            # relative error, with an absolute floor of 1e-8
            mask = np.abs(exact - fd) > 1e-8
            rel = float((np.abs(exact - fd)[mask] / np.abs(fd)[mask]).max()) if mask.any() else 0.0
            worst = max(worst, rel)
            if rel > tol and not detail:
                detail = f"depth {depth}, point {point}: rel err {rel:.2e}"
        results.append(
            CheckResult(
                "gradient-contract",
                f"depth {depth}: {points} random points vs central differences",
                worst <= tol,
                tol,
                detail or f"worst rel err {worst:.2e}",
            )
        )
    return results


def expressivity_suite(tol: float = 1e-9) -> list[CheckResult]:
    """The one-parameter circuit separates the 1-WL-indistinguishable pair.

    Two independent oracles must agree: the statevector distributions and
    the cyclic-reduction support counts.
    """
    results = []
    rows = training.experiment1(np.array([np.pi]))
    row = rows[0]
    acc = row["accuracy"]
    results.append(
        CheckResult(
            "expressivity-pair",
            "optimal aggregator accuracy 0.625 at alpha=pi",
            abs(acc - 0.625) <= tol,
            tol,
            f"got {acc!r}",
        )
    )

    # combinatorial oracle: triangle outcomes give the two-triangle ones-count
    # distribution; 6-cycle outcomes give the single-cycle one.
    tri = parity.observable_set(3)
    tri_counts = np.zeros(4)
    for idx in tri:
        tri_counts[bin(idx).count("1")] += parity.observable_probability(3, True)
    g1_expected = np.zeros(7)
    for k1 in range(4):
        for k2 in range(4):
            g1_expected[k1 + k2] += tri_counts[k1] * tri_counts[k2]
    six = parity.observable_set(6)
    g2_expected = np.zeros(7)
    for idx in six:
        g2_expected[bin(idx).count("1")] += parity.observable_probability(6, True)

    dev1 = float(np.abs(np.asarray(row["probs_g1"]) - g1_expected).max())
    dev2 = float(np.abs(np.asarray(row["probs_g2"]) - g2_expected).max())
    results.append(
        CheckResult(
            "expressivity-pair",
            "statevector and reduction oracles agree on both distributions",
            max(dev1, dev2) <= 1e-10,
            1e-10,
            f"max deviations {dev1:.2e}, {dev2:.2e}",
        )
    )

    expected_g1 = np.zeros(7)
    expected_g1[[2, 4, 6]] = [9 / 16, 6 / 16, 1 / 16]
    expected_g2 = np.zeros(7)
    expected_g2[[0, 2, 4]] = [1 / 16, 6 / 16, 9 / 16]
    dev = max(
        float(np.abs(np.asarray(row["probs_g1"]) - expected_g1).max()),
        float(np.abs(np.asarray(row["probs_g2"]) - expected_g2).max()),
    )
    results.append(
        CheckResult(
            "expressivity-pair",
            "distributions take the known closed-form values",
            dev <= 1e-10,
            1e-10,
            f"max deviation {dev:.2e}",
        )
    )
    return results


def redundancy_suite(seed: int = 0, trials: int = 10, tol: float = 1e-9) -> list[CheckResult]:
    """Absorbing an edge layer's basis change into its neighbors changes nothing."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(trials):
        n = int(rng.integers(3, 6))
        g = random_graph(rng, n, 0.6)
        u1 = NodeLayer(random_unitary(rng, 2))
        u2 = NodeLayer(random_unitary(rng, 2))
        gate = random_edu_gate(rng, 2)
        absorbed = absorb_redundancy(u1, gate, u2)
        c_orig = Circuit((u1, EdgeLayer(gate), u2))
        c_red = Circuit(absorbed)
        d0 = ones_count_distribution(apply_circuit(c_orig, g, plus_state(n)))
        d1 = ones_count_distribution(apply_circuit(c_red, g, plus_state(n)))
        worst = max(worst, float(np.abs(d0 - d1).max()))
        worst = max(
            worst,
            float(np.abs(circuit_unitary(c_orig, g) - circuit_unitary(c_red, g)).max()),
        )
    results = [
        CheckResult(
            "parameter-redundancy",
            f"{trials} random absorbed triples match exactly",
            worst <= tol,
            tol,
            f"worst deviation {worst:.2e}",
        )
    ]
    counts_ok = all(
        ModelParams(np.zeros((k, 6)), (4.0, -2.0)).num_parameters == 6 * k + 2 for k in range(1, 15)
    )
    results.append(CheckResult("parameter-redundancy", "depth-k models expose 6k+2 parameters", counts_ok))
    return results


def all_suites(seed: int = 0, tol: float | None = None) -> list[CheckResult]:
    """Every suite; ``tol`` overrides each suite's default tolerance."""

    def kw(default):
        return {"tol": tol if tol is not None else default}

    results = []
    results += equivariance_suite(seed, **kw(1e-9))
    results += gate_condition_suite(seed, **kw(1e-9))
    results += conversion_suite(seed, **kw(1e-8))
    results += cycle_support_suite(**kw(1e-10))
    results += dimension_suite(**kw(1e-10))
    results += mpnn_suite(seed)
    results += gradient_suite(seed, **kw(1e-3))
    results += expressivity_suite(**kw(1e-9))
    results += redundancy_suite(seed, **kw(1e-9))
    return results
