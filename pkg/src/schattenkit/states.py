"""Faithful states: strictly positive unit-trace density matrices.

A :class:`FaithfulState` caches its spectral decomposition once at
construction, so arbitrary complex powers of the density are cheap and
always well defined (the spectrum is bounded away from zero).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .spectral import EPS_FAITHFUL, HERMITICITY_RTOL, hermitian_eigen, require_hermitian

# Absolute deviation of the trace from one tolerated at construction.
EPS_TRACE = 1e-12


@dataclass(frozen=True)
class FaithfulState:
    """Unit-trace density matrix with spectrum above the faithfulness floor."""

    density: np.ndarray
    eigenvalues: np.ndarray = field(repr=False)
    unitary: np.ndarray = field(repr=False)

    @property
    def dim(self) -> int:
        return self.density.shape[0]

    def power(self, z: complex) -> np.ndarray:
        """density ** z for any complex z (principal branch eigenvalue-wise)."""
        z = complex(z)
        if z == 0:
            return np.eye(self.dim, dtype=complex)
        u = self.unitary
        return (u * np.exp(z * np.log(self.eigenvalues))) @ u.conj().T


def faithful_state(
    density,
    eps_trace: float = EPS_TRACE,
    eps_faithful: float = EPS_FAITHFUL,
    rtol_herm: float = HERMITICITY_RTOL,
) -> FaithfulState:
    """Validate and wrap a density matrix as a :class:`FaithfulState`.

    Requires Hermiticity (within ``rtol_herm`` relative), unit trace
    (within ``eps_trace``), and a minimum eigenvalue of at least
    ``eps_faithful``.
    """
    h = require_hermitian(density, rtol=rtol_herm)
    tr = float(np.trace(h).real)
    if abs(tr - 1.0) > eps_trace:
        raise ValueError(f"density trace {tr!r} deviates from 1 by more than {eps_trace:g}")
    dec = hermitian_eigen(h, rtol=rtol_herm)
    lam_min = float(dec.eigenvalues[-1])
    if lam_min < eps_faithful:
        raise ValueError(
            f"state is not faithful: min eigenvalue {lam_min:.3e} < {eps_faithful:g}"
        )
    return FaithfulState(density=h, eigenvalues=dec.eigenvalues, unitary=dec.unitary)


def maximally_mixed(dim: int) -> FaithfulState:
    """The tracial state, density I/d."""
    return faithful_state(np.eye(dim, dtype=complex) / dim)
