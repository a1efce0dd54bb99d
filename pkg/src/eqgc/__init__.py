"""Equivariant quantum graph circuits at desk scale.

Exact statevector simulation of node/edge layer circuits on graphs,
training of EDU-circuit classifiers with adjoint gradients, and mechanical
verification of the layer algebra: equivariance, commutativity conditions,
Hamiltonian-layer conversions, cycle-circuit outcome combinatorics,
equivariant-map dimension counts, and message-passing simulation.
"""

from ._backend import COMPILED as KERNELS_COMPILED

__all__ = ["KERNELS_COMPILED"]
__version__ = "0.1.0"
