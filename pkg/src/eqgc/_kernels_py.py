"""Pure-NumPy amplitude-update kernels.

Twin of the compiled ``eqgc._kernels`` extension: identical signatures and
in-place semantics, so either module can back the simulator.  All kernels
take a 1-D ``complex128`` amplitude array of length ``2**nq`` and *bit
positions* (0 = least significant bit of the basis index) rather than wire
numbers; the simulator does the wire-to-bit translation.
"""

from __future__ import annotations

import numpy as np

COMPILED = False


def apply_1q(amps: np.ndarray, u: np.ndarray, pos: int) -> None:
    """In-place single-qubit gate at bit position ``pos``."""
    n = amps.shape[0]
    view = amps.reshape(n >> (pos + 1), 2, 1 << pos)
    out = np.einsum("ij,ajb->aib", u, view)
    amps[:] = out.reshape(-1)


def apply_diag2(amps: np.ndarray, d: np.ndarray, pa: int, pb: int) -> None:
    """In-place diagonal two-qubit gate.

    ``d`` has 4 entries indexed by ``(bit at pa) * 2 + (bit at pb)``.
    """
    idx = np.arange(amps.shape[0])
    key = (((idx >> pa) & 1) << 1) | ((idx >> pb) & 1)
    amps *= d[key]


def apply_2q(amps: np.ndarray, u: np.ndarray, pa: int, pb: int) -> None:
    """In-place dense two-qubit gate; ``pa`` is the more significant gate bit."""
    apply_kq(amps, u, np.array([pa, pb], dtype=np.int64))


def apply_kq(amps: np.ndarray, u: np.ndarray, positions: np.ndarray) -> None:
    """In-place dense ``k``-qubit gate at the given bit positions.

    ``positions[0]`` is the most significant bit of the gate's own index.
    """
    nq = amps.shape[0].bit_length() - 1
    k = len(positions)
    axes = [nq - 1 - int(p) for p in positions]
    st = amps.reshape([2] * nq)
    ut = u.reshape([2] * (2 * k))
    st = np.tensordot(ut, st, axes=(list(range(k, 2 * k)), axes))
    st = np.moveaxis(st, list(range(k)), axes)
    amps[:] = st.reshape(-1)
