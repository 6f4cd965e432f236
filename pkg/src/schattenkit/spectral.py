"""Dense Hermitian spectral calculus.

Eigendecompositions, complex matrix powers of positive semidefinite
matrices, singular values and polar factors for small dense complex
matrices.  Everything here is a pure function of its inputs; results are
plain ``numpy.ndarray`` values of complex dtype and safe to use from
multiple threads.

Conventions for powers of a PSD matrix A, applied eigenvalue-wise with
the principal logarithm on (0, inf):

* ``lam ** z = exp(z * log(lam))`` for ``lam > 0``;
* eigenvalues at (numerical) zero map to zero for any ``z != 0`` and to
  one for ``z == 0``, so ``A ** it`` is a partial isometry on the
  support of ``A``;
* powers with ``Re(z) < 0`` require every eigenvalue to clear the
  faithfulness floor, since they are unbounded near zero.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceFailureError, NonHermitianError, SingularPowerError

# Eigenvalue floor below which a state no longer counts as faithful.
EPS_FAITHFUL = 1e-10
# Relative Hermiticity defect tolerated before NonHermitianError.
HERMITICITY_RTOL = 1e-12
# Relative spectral weight treated as exact zero (support cutoff).
SUPPORT_RTOL = 1e-14


def as_square_matrix(x) -> np.ndarray:
    """Coerce to a finite square complex ndarray."""
    a = np.asarray(x, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix entries must be finite")
    return a


def hermiticity_defect(a: np.ndarray) -> float:
    """Largest entrywise deviation of ``a`` from its adjoint."""
    return float(np.abs(a - a.conj().T).max())


def require_hermitian(x, rtol: float = HERMITICITY_RTOL) -> np.ndarray:
    """Validate Hermiticity and return the symmetrized matrix (a + a*)/2."""
    a = as_square_matrix(x)
    scale = float(np.abs(a).max())
    defect = hermiticity_defect(a)
    if defect > rtol * max(scale, 1e-300):
        raise NonHermitianError(
            f"Hermiticity defect {defect:.3e} exceeds {rtol:g} * max|entry| = "
            f"{rtol * scale:.3e}"
        )
    return (a + a.conj().T) / 2


@dataclass(frozen=True)
class SpectralDecomposition:
    """Eigenvalues (real, descending) and a unitary of eigenvectors."""

    eigenvalues: np.ndarray
    unitary: np.ndarray

    @property
    def dim(self) -> int:
        return self.eigenvalues.shape[0]

    def reassemble(self) -> np.ndarray:
        """U diag(lam) U*."""
        u = self.unitary
        return (u * self.eigenvalues) @ u.conj().T

    def apply(self, values: np.ndarray) -> np.ndarray:
        """U diag(values) U* for arbitrary (possibly complex) values."""
        u = self.unitary
        return (u * values) @ u.conj().T


def hermitian_eigen(a, rtol: float = HERMITICITY_RTOL) -> SpectralDecomposition:
    """Spectral decomposition of a Hermitian matrix, eigenvalues descending.

    Raises NonHermitianError if the Hermiticity tolerance is exceeded and
    ConvergenceFailureError if the eigensolver fails.
    """
    h = require_hermitian(a, rtol=rtol)
    try:
        w, u = np.linalg.eigh(h)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceFailureError(f"eigensolver failed: {exc}") from exc
    return SpectralDecomposition(eigenvalues=w[::-1].copy(), unitary=u[:, ::-1].copy())


def _psd_eigenvalues(dec: SpectralDecomposition) -> np.ndarray:
    """Eigenvalues of a PSD matrix with roundoff negatives clipped to zero."""
    lam = dec.eigenvalues
    top = float(lam[0]) if lam[0] > 0 else 0.0
    if lam[-1] < -1e-10 * max(top, 1.0):
        raise ValueError(
            f"matrix is not positive semidefinite (min eigenvalue {lam[-1]:.3e})"
        )
    lam = np.clip(lam, 0.0, None)
    # spectral dust below the support cutoff counts as exact zero
    lam[lam <= SUPPORT_RTOL * top] = 0.0
    return lam


def power_from_spectrum(
    lam: np.ndarray, z: complex, eps_faithful: float = EPS_FAITHFUL
) -> np.ndarray:
    """Eigenvalue-wise power lam**z under the conventions in the module docstring.

    ``lam`` must be nonnegative with exact zeros where the support ends.
    """
    z = complex(z)
    if z == 0:
        return np.ones_like(lam, dtype=complex)
    if z.real < 0 and lam.min() < eps_faithful:
        raise SingularPowerError(
            f"power with Re(z) = {z.real:g} < 0 of a matrix with an eigenvalue "
            f"{lam.min():.3e} below the faithfulness floor {eps_faithful:g}"
        )
    out = np.zeros(lam.shape, dtype=complex)
    pos = lam > 0
    out[pos] = np.exp(z * np.log(lam[pos]))
    return out


def matrix_power(a, z: complex, eps_faithful: float = EPS_FAITHFUL) -> np.ndarray:
    """``a ** z`` for PSD Hermitian ``a`` and complex ``z``.

    Raises SingularPowerError when a power with negative real part is
    requested of a matrix with an eigenvalue below ``eps_faithful``.
    """
    dec = hermitian_eigen(a)
    lam = _psd_eigenvalues(dec)
    return dec.apply(power_from_spectrum(lam, z, eps_faithful=eps_faithful))


def singular_values(x) -> np.ndarray:
    """Singular values of ``x``, descending (the eigenvalues of |x|)."""
    a = as_square_matrix(x)
    try:
        return np.linalg.svd(a, compute_uv=False)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceFailureError(f"SVD failed: {exc}") from exc


def support_projection(a, cutoff_rtol: float = SUPPORT_RTOL) -> np.ndarray:
    """Orthogonal projection onto the span of eigenvectors with eigenvalue
    above ``cutoff_rtol`` times the largest one."""
    dec = hermitian_eigen(a)
    lam = np.abs(dec.eigenvalues)
    top = float(lam.max())
    keep = (lam > cutoff_rtol * top).astype(complex) if top > 0 else np.zeros_like(lam)
    return dec.apply(keep)


def polar(x, cutoff_rtol: float = SUPPORT_RTOL) -> tuple[np.ndarray, np.ndarray]:
    """Polar decomposition ``x = u @ absx``.

    ``absx = (x* x)^(1/2)`` is PSD and ``u`` is the partial isometry with
    ``u* u`` equal to the projection onto the support of ``absx``.
    """
    a = as_square_matrix(x)
    try:
        u_full, s, vh = np.linalg.svd(a)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceFailureError(f"SVD failed: {exc}") from exc
    v = vh.conj().T
    absx = (v * s) @ vh
    top = float(s[0]) if s.size else 0.0
    keep = s > cutoff_rtol * top if top > 0 else np.zeros(s.shape, dtype=bool)
    u = u_full[:, keep] @ vh[keep, :]
    return u, absx
