"""Matrix-valued analytic families on the closed strip 0 <= Re z <= 1.

A family is an expression tree over:

* ``Const(x)`` -- a fixed matrix;
* ``MatrixPower(a, slope, offset)`` -- ``a ** (slope*z + offset)`` for a
  PSD base ``a``;
* ``ScalarScaled(fn, child)`` -- an entire scalar factor (polynomial or
  ``exp(a z + b)``) times a subtree;
* ``FamilySum(terms)`` / ``FamilyProduct(factors)``.

Every node evaluates to a finite d x d matrix at every point of the
closed strip.  For a ``MatrixPower`` node this is guaranteed at
construction: either the base is faithful, or ``Re(slope*z + offset)``
is nonnegative on the whole closed strip (which forces a real slope).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import OutsideStripError
from .spectral import (
    EPS_FAITHFUL,
    _psd_eigenvalues,
    as_square_matrix,
    hermitian_eigen,
    power_from_spectrum,
)

_IM_SLOPE_TOL = 1e-14


@dataclass(frozen=True)
class Polynomial:
    """sum_k coeffs[k] * z**k."""

    coeffs: tuple[complex, ...]

    def __call__(self, z: complex) -> complex:
        out = 0j
        for c in reversed(self.coeffs):
            out = out * z + c
        return out

    @property
    def is_constant(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])


@dataclass(frozen=True)
class ExpAffine:
    """exp(slope * z + offset)."""

    slope: complex
    offset: complex = 0j

    def __call__(self, z: complex) -> complex:
        return complex(np.exp(self.slope * z + self.offset))

    @property
    def is_constant(self) -> bool:
        return self.slope == 0


@dataclass(frozen=True)
class Const:
    """Constant family z -> matrix."""

    matrix: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "matrix", as_square_matrix(self.matrix))

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def value(self, z: complex) -> np.ndarray:
        return self.matrix


@dataclass(frozen=True)
class MatrixPower:
    """z -> base ** (slope * z + offset) for PSD ``base``."""

    base: np.ndarray
    slope: complex = 1.0 + 0j
    offset: complex = 0j
    _eigenvalues: np.ndarray = field(init=False, repr=False)
    _unitary: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        dec = hermitian_eigen(self.base)
        lam = _psd_eigenvalues(dec)
        object.__setattr__(self, "base", dec.reassemble())
        object.__setattr__(self, "slope", complex(self.slope))
        object.__setattr__(self, "offset", complex(self.offset))
        object.__setattr__(self, "_eigenvalues", lam)
        object.__setattr__(self, "_unitary", dec.unitary)
        if lam[-1] < EPS_FAITHFUL:
            # singular base: the exponent's real part must stay nonnegative
            # on the closed strip, which requires a real slope
            a, b = self.slope, self.offset
            if abs(a.imag) > _IM_SLOPE_TOL or min(b.real, a.real + b.real) < -_IM_SLOPE_TOL:
                raise ValueError(
                    "power of a non-faithful base needs Re(slope*z + offset) >= 0 "
                    f"on the closed strip (slope={a}, offset={b})"
                )

    @property
    def dim(self) -> int:
        return self.base.shape[0]

    def value(self, z: complex) -> np.ndarray:
        w = self.slope * z + self.offset
        u = self._unitary
        return (u * power_from_spectrum(self._eigenvalues, w)) @ u.conj().T


@dataclass(frozen=True)
class ScalarScaled:
    """Entire scalar function times a subtree."""

    scalar: Polynomial | ExpAffine
    child: "Family"

    @property
    def dim(self) -> int:
        return self.child.dim

    def value(self, z: complex) -> np.ndarray:
        return self.scalar(z) * self.child.value(z)


@dataclass(frozen=True)
class FamilySum:
    terms: tuple["Family", ...]

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(self.terms))
        if not self.terms:
            raise ValueError("FamilySum needs at least one term")
        if len({t.dim for t in self.terms}) != 1:
            raise ValueError("summands must share a dimension")

    @property
    def dim(self) -> int:
        return self.terms[0].dim

    def value(self, z: complex) -> np.ndarray:
        out = self.terms[0].value(z).copy()
        for t in self.terms[1:]:
            out += t.value(z)
        return out


@dataclass(frozen=True)
class FamilyProduct:
    factors: tuple["Family", ...]

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(self.factors))
        if not self.factors:
            raise ValueError("FamilyProduct needs at least one factor")
        if len({f.dim for f in self.factors}) != 1:
            raise ValueError("factors must share a dimension")

    @property
    def dim(self) -> int:
        return self.factors[0].dim

    def value(self, z: complex) -> np.ndarray:
        out = self.factors[0].value(z)
        for f in self.factors[1:]:
            out = out @ f.value(z)
        return out


Family = Const | MatrixPower | ScalarScaled | FamilySum | FamilyProduct


def evaluate(fam: Family, z: complex) -> np.ndarray:
    """Evaluate the family at ``z`` in the closed strip."""
    z = complex(z)
    if not 0.0 <= z.real <= 1.0:
        raise OutsideStripError(f"Re(z) = {z.real:g} outside [0, 1]")
    return fam.value(z)


def is_constant_family(fam: Family) -> bool:
    """True when the family's value does not depend on z at all."""
    if isinstance(fam, Const):
        return True
    if isinstance(fam, MatrixPower):
        return fam.slope == 0
    if isinstance(fam, ScalarScaled):
        return fam.scalar.is_constant and is_constant_family(fam.child)
    if isinstance(fam, (FamilySum, FamilyProduct)):
        children = fam.terms if isinstance(fam, FamilySum) else fam.factors
        return all(is_constant_family(c) for c in children)
    return False


def _scalar_modulus_t_invariant(fn: Polynomial | ExpAffine) -> bool:
    # |fn(k + it)| independent of t on each vertical line
    if isinstance(fn, ExpAffine):
        return abs(fn.slope.imag) <= _IM_SLOPE_TOL
    return fn.is_constant


def certified_boundary_invariant(fam: Family) -> bool:
    """Structural certificate that the boundary Schatten norms of the family
    do not depend on t.

    The certificate is conservative: it accepts constant families, a
    single real-slope matrix power, products of constants with at most
    one real-slope power in the first or last slot, and t-invariant
    scalar rescalings of any of these.  On certified families a grid
    maximum over t is the exact boundary supremum.
    """
    if is_constant_family(fam):
        return True
    if isinstance(fam, MatrixPower):
        return abs(fam.slope.imag) <= _IM_SLOPE_TOL
    if isinstance(fam, ScalarScaled):
        return _scalar_modulus_t_invariant(fam.scalar) and certified_boundary_invariant(
            fam.child
        )
    if isinstance(fam, FamilyProduct):
        factors = fam.factors
        moving = [i for i, f in enumerate(factors) if not is_constant_family(f)]
        if not moving:
            return True
        if len(moving) > 1:
            return False
        i = moving[0]
        if i not in (0, len(factors) - 1):
            return False
        return isinstance(factors[i], MatrixPower) and abs(
            factors[i].slope.imag
        ) <= _IM_SLOPE_TOL
    return False


def cauchy_riemann_defect(fam: Family, z: complex, step: float = 1e-4) -> float:
    """Max entrywise |(d/dx + i d/dy) fam| at an interior point, by central
    differences; near zero for analytic families."""
    z = complex(z)
    if not step < z.real < 1.0 - step:
        raise OutsideStripError(f"need Re(z) in ({step:g}, {1 - step:g}) for the stencil")
    dx = (evaluate(fam, z + step) - evaluate(fam, z - step)) / (2 * step)
    dy = (evaluate(fam, z + 1j * step) - evaluate(fam, z - 1j * step)) / (2 * step)
    return float(np.abs(dx + 1j * dy).max())
