"""Dense complex linear algebra for circuit construction and verification.

Matrices and vectors are plain ``numpy`` arrays of ``complex128``; there is
no wrapper type.  Everything here is exact dense arithmetic at small
dimension (<= ~4096), which is all the rest of the package needs.
"""

from __future__ import annotations

import numpy as np
import scipy.linalg

__all__ = [
    "kron",
    "kron_all",
    "is_unitary",
    "is_hermitian",
    "herm_eig",
    "expm_hermitian",
    "logm_unitary",
    "principal_phase",
    "random_unitary",
    "random_hermitian",
]


def as_cmatrix(a) -> np.ndarray:
    """Coerce to a 2-D complex128 array and require finite entries."""
    m = np.asarray(a, dtype=np.complex128)
    if m.ndim != 2:
        raise ValueError(f"expected a matrix, got ndim={m.ndim}")
    if not (np.all(np.isfinite(m.real)) and np.all(np.isfinite(m.imag))):
        raise ValueError("matrix has non-finite entries")
    return m


def kron(a, b) -> np.ndarray:
    """Kronecker product; the first factor is the most significant index."""
    return np.kron(as_cmatrix(a), as_cmatrix(b))


def kron_all(mats) -> np.ndarray:
    """Kronecker product of a sequence of matrices, left to right."""
    out = as_cmatrix(mats[0])
    for m in mats[1:]:
        out = np.kron(out, as_cmatrix(m))
    return out


def is_unitary(a, tol: float = 1e-10) -> bool:
    """True iff ``max|a†a − I| <= tol``.  Raises for non-square input."""
    m = as_cmatrix(a)
    if m.shape[0] != m.shape[1]:
        raise ValueError(f"is_unitary needs a square matrix, got {m.shape}")
    return float(np.abs(m.conj().T @ m - np.eye(m.shape[0])).max()) <= tol


def is_hermitian(a, tol: float = 1e-10) -> bool:
    m = as_cmatrix(a)
    if m.shape[0] != m.shape[1]:
        return False
    return float(np.abs(m - m.conj().T).max()) <= tol


def herm_eig(h, tol: float = 1e-10) -> tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition of a Hermitian matrix.

    Returns ``(evals, evecs)`` with real eigenvalues in ascending order and
    unitary ``evecs`` whose columns are the eigenvectors, so that
    ``h = evecs @ diag(evals) @ evecs†``.
    """
    m = as_cmatrix(h)
    if not is_hermitian(m, tol):
        raise ValueError("herm_eig: input is not Hermitian within tolerance")
    evals, evecs = np.linalg.eigh(m)
    return evals, evecs


def expm_hermitian(h) -> np.ndarray:
    """``exp(−i·h)`` for Hermitian ``h``, via eigendecomposition."""
    evals, evecs = herm_eig(h)
    return (evecs * np.exp(-1j * evals)) @ evecs.conj().T


def principal_phase(theta: np.ndarray) -> np.ndarray:
    """Map angles into the principal branch ``(−π, π]``."""
    out = np.mod(np.asarray(theta, dtype=np.float64) + np.pi, 2 * np.pi) - np.pi
    return np.where(out <= -np.pi, out + 2 * np.pi, out)


def logm_unitary(u, tol: float = 1e-10) -> np.ndarray:
    """Hermitian ``R`` with ``u = exp(−i·R)``, eigenphases in ``(−π, π]``.

    Uses a complex Schur decomposition, which diagonalizes normal matrices
    with an orthonormal eigenbasis even for degenerate eigenvalues.
    """
    m = as_cmatrix(u)
    if not is_unitary(m, tol):
        raise ValueError("logm_unitary: input is not unitary within tolerance")
    t, z = scipy.linalg.schur(m, output="complex")
    lam = np.diag(t)
    # u = exp(-iR): eigenvalue e^{-iθ} has phase θ = -arg(λ), folded so that
    # λ = -1 maps to θ = +π.
    theta = principal_phase(-np.angle(lam))
    r = (z * theta) @ z.conj().T
    return 0.5 * (r + r.conj().T)


def random_unitary(rng: np.random.Generator, dim: int) -> np.ndarray:
    """Haar-distributed unitary via QR of a complex Gaussian matrix."""
    a = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    q, r = np.linalg.qr(a)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def random_hermitian(rng: np.random.Generator, dim: int, scale: float = 1.0) -> np.ndarray:
    a = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return scale * 0.5 * (a + a.conj().T)
