"""Exact outcome combinatorics of the CZ(π)/Hadamard circuit on cycles.

For the single-parameter circuit (|+> per node, CZ(π) per edge, H per node)
on an n-cycle, every measurement outcome has probability 0 or a single
uniform value: 1/2^{n-1} for odd n, 1/2^{n-2} for even n.  A cyclic
bitstring reduction decides which outcomes occur, and the observed number
of |1>s always has the parity of n.  ``crosscheck_cycle`` confronts all of
this with the statevector engine.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .graphs import cycle_graph
from .layers import Circuit, DiagEdgeLayer, NodeLayer, HADAMARD, apply_circuit, cz_phases
from .simulator import outcome_distribution, plus_state

__all__ = [
    "Observability",
    "reduce_cyclic",
    "observable_set",
    "observable_probability",
    "crosscheck_cycle",
    "VerificationError",
]


class VerificationError(AssertionError):
    """A mechanical cross-check failed; the message names the witness."""


@dataclass(frozen=True)
class Observability:
    observable: bool
    probability: float


ZeroChoice = Callable[[Sequence[int]], int]


def _leftmost(bits: Sequence[int]) -> int:
    return bits.index(0)  # type: ignore[union-attr]


def _rightmost(bits: Sequence[int]) -> int:
    return len(bits) - 1 - list(reversed(bits)).index(0)


def observable_probability(n: int, observable: bool) -> float:
    if not observable:
        return 0.0
    return 1.0 / 2 ** (n - 1) if n % 2 else 1.0 / 2 ** (n - 2)


def reduce_cyclic(bits: Sequence[int], *, zero_choice: str | ZeroChoice = "leftmost") -> Observability:
    """Decide whether a cyclic bitstring is an observable outcome.

    While the string is longer than 2 and contains a 0: remove one 0 and its
    two cyclic neighbors, inserting the XOR of the neighbors in their place
    (a length-3 string loses all three positions).  Terminal verdicts:
    ``00`` observable; ``0`` and either rotation of ``01`` not; an all-ones
    string of length c is observable iff c mod 4 != 2.

    The verdict is independent of which 0 is removed at each step;
    ``zero_choice`` ("leftmost", "rightmost", or a callable picking an index
    of a 0) exists so tests can prove that.
    """
    work = [int(b) for b in bits]
    if not work:
        raise ValueError("bitstring must be nonempty")
    if any(b not in (0, 1) for b in work):
        raise ValueError("bits must be 0 or 1")
    n = len(work)

    if callable(zero_choice):
        choose = zero_choice
    elif zero_choice == "leftmost":
        choose = _leftmost
    elif zero_choice == "rightmost":
        choose = _rightmost
    else:
        raise ValueError(f"unknown zero_choice {zero_choice!r}")

    while len(work) > 2 and 0 in work:
        z = choose(work)
        if work[z] != 0:
            raise ValueError("zero_choice must return the index of a 0")
        length = len(work)
        left = (z - 1) % length
        # rotate so the removed block [left, z, right] sits at the front;
        # cyclic order of the remainder is preserved
        rot = work[left:] + work[:left]
        work = [rot[0] ^ rot[2]] + rot[3:]

    if 0 in work:
        observable = work == [0, 0]
    else:
        observable = len(work) % 4 != 2
    return Observability(observable, observable_probability(n, observable))


def _index_bits(index: int, n: int) -> list[int]:
    return [(index >> (n - 1 - i)) & 1 for i in range(n)]


def observable_set(n: int) -> set[int]:
    """Basis indices of all observable length-n outcomes (node 0 = msb)."""
    if not 1 <= n <= 20:
        raise ValueError("observable_set supports 1 <= n <= 20")
    return {
        index
        for index in range(2**n)
        if reduce_cyclic(_index_bits(index, n)).observable
    }


def cycle_circuit() -> Circuit:
    """CZ(π) per edge, then H per node; callers supply the |+> initialization."""
    return Circuit((DiagEdgeLayer(cz_phases(np.pi)), NodeLayer(HADAMARD)))


def crosscheck_cycle(n: int, tol: float = 1e-10) -> bool:
    """Compare the reduction's predictions with the statevector on an n-cycle.

    Checks support equality, uniform support probability, and the ones-count
    parity law.  Raises :class:`VerificationError` naming the first
    mismatching bitstring.
    """
    if not 3 <= n <= 10:
        raise ValueError("crosscheck_cycle supports 3 <= n <= 10")
    state = apply_circuit(cycle_circuit(), cycle_graph(n), plus_state(n))
    dist = outcome_distribution(state)

    predicted = observable_set(n)
    expected_p = observable_probability(n, True)

    for index in sorted(predicted - set(dist)):
        raise VerificationError(
            f"bitstring {index:0{n}b} predicted observable but has zero amplitude"
        )
    for index in sorted(set(dist) - predicted):
        raise VerificationError(
            f"bitstring {index:0{n}b} observed with probability {dist[index]:.3e} "
            "but predicted unobservable"
        )
    for index, p in sorted(dist.items()):
        if abs(p - expected_p) > tol:
            raise VerificationError(
                f"bitstring {index:0{n}b} has probability {p!r}, expected {expected_p!r}"
            )
        if bin(index).count("1") % 2 != n % 2:
            raise VerificationError(
                f"bitstring {index:0{n}b} breaks the ones-count parity law for n={n}"
            )
    return True
