"""The compiled kernels and the NumPy fallback must agree bit-for-bit in intent.

Every kernel is driven with identical random inputs through both modules;
results must match to a few ulps.
"""

import numpy as np
import pytest

from eqgc import _kernels_py
from eqgc.linalg import random_unitary

try:
    from eqgc import _kernels

    HAVE_COMPILED = True
except ImportError:
    HAVE_COMPILED = False

pytestmark = pytest.mark.skipif(not HAVE_COMPILED, reason="compiled kernels not built")


def _random_state(rng, nq):
    amps = rng.normal(size=2**nq) + 1j * rng.normal(size=2**nq)
    return np.ascontiguousarray(amps / np.linalg.norm(amps))


@pytest.mark.parametrize("nq", [1, 3, 6])
def test_apply_1q_matches(nq):
    rng = np.random.default_rng(nq)
    for pos in range(nq):
        amps = _random_state(rng, nq)
        u = np.ascontiguousarray(random_unitary(rng, 2))
        a, b = amps.copy(), amps.copy()
        _kernels.apply_1q(a, u, pos)
        _kernels_py.apply_1q(b, u, pos)
        assert np.abs(a - b).max() < 1e-14


@pytest.mark.parametrize("nq", [2, 4, 7])
def test_apply_2q_and_diag2_match(nq):
    rng = np.random.default_rng(10 + nq)
    for _ in range(6):
        pa, pb = rng.choice(nq, size=2, replace=False)
        amps = _random_state(rng, nq)
        u = np.ascontiguousarray(random_unitary(rng, 4))
        a, b = amps.copy(), amps.copy()
        _kernels.apply_2q(a, u, int(pa), int(pb))
        _kernels_py.apply_2q(b, u, int(pa), int(pb))
        assert np.abs(a - b).max() < 1e-14

        d = np.ascontiguousarray(np.exp(1j * rng.normal(size=4)))
        a, b = amps.copy(), amps.copy()
        _kernels.apply_diag2(a, d, int(pa), int(pb))
        _kernels_py.apply_diag2(b, d, int(pa), int(pb))
        assert np.abs(a - b).max() < 1e-14


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_apply_kq_matches(k):
    rng = np.random.default_rng(20 + k)
    nq = 7
    for _ in range(4):
        positions = np.array(rng.choice(nq, size=k, replace=False), dtype=np.int64)
        amps = _random_state(rng, nq)
        u = np.ascontiguousarray(random_unitary(rng, 2**k))
        a, b = amps.copy(), amps.copy()
        _kernels.apply_kq(a, u, positions)
        _kernels_py.apply_kq(b, u, positions)
        assert np.abs(a - b).max() < 1e-13


def test_apply_kq_agrees_with_2q_specialization():
    rng = np.random.default_rng(99)
    amps = _random_state(rng, 5)
    u = np.ascontiguousarray(random_unitary(rng, 4))
    a, b = amps.copy(), amps.copy()
    _kernels.apply_2q(a, u, 3, 1)
    _kernels.apply_kq(b, u, np.array([3, 1], dtype=np.int64))
    assert np.abs(a - b).max() < 1e-14


def test_norm_preserved_by_long_random_sequence():
    rng = np.random.default_rng(5)
    amps = _random_state(rng, 6)
    for _ in range(50):
        kind = rng.integers(3)
        if kind == 0:
            _kernels.apply_1q(amps, np.ascontiguousarray(random_unitary(rng, 2)), int(rng.integers(6)))
        elif kind == 1:
            pa, pb = rng.choice(6, size=2, replace=False)
            _kernels.apply_2q(amps, np.ascontiguousarray(random_unitary(rng, 4)), int(pa), int(pb))
        else:
            pa, pb = rng.choice(6, size=2, replace=False)
            d = np.ascontiguousarray(np.exp(1j * rng.normal(size=4)))
            _kernels.apply_diag2(amps, d, int(pa), int(pb))
    assert abs(np.linalg.norm(amps) - 1.0) < 1e-10
