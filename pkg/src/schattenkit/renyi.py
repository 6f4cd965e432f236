"""Sandwiched p-Renyi divergence, conditional expectations, and the data
processing inequality at matrix scale.

For faithful states rho, sigma and p in (0,1) or (1,inf):

    D_p(rho | sigma) = log tr[ (sigma^((1-p)/2p) rho sigma^((1-p)/2p))^p ] / (p - 1).

Subalgebras come in three kinds, each closed under the modular flow of
sigma by construction:

* a block partition of the index set in a declared eigenbasis of sigma
  (conditional expectation = pinching);
* a tensor factor, requiring sigma = sigma_A (x) sigma_B (conditional
  expectation = slice against sigma_B);
* the scalars (conditional expectation x -> tr(sigma x) 1).

The data processing inequality is asserted only for p in [1/2, 1) or
(1, inf); it can genuinely fail below 1/2, so smaller exponents are
rejected rather than tested.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import (
    FaithfulnessLostError,
    IncompatibleStateError,
    InvalidExponentError,
)
from .spectral import EPS_FAITHFUL, as_square_matrix, hermitian_eigen
from .states import FaithfulState, faithful_state
from .weighted import OperatorMap

DPI_TOL = 1e-8
EQUALITY_TOL = 1e-9


@dataclass(frozen=True)
class StatePair:
    """Two faithful states on the same matrix algebra; rho plays the
    divergence argument and sigma the reference."""

    rho: FaithfulState
    sigma: FaithfulState

    def __post_init__(self):
        if self.rho.dim != self.sigma.dim:
            raise ValueError(
                f"state dimensions differ: {self.rho.dim} vs {self.sigma.dim}"
            )

    @property
    def dim(self) -> int:
        return self.rho.dim


def state_pair(rho, sigma) -> StatePair:
    """Build a :class:`StatePair` from raw density matrices."""
    return StatePair(rho=faithful_state(rho), sigma=faithful_state(sigma))


def _validate_divergence_exponent(p: float) -> float:
    p = float(p)
    if not np.isfinite(p) or p <= 0.0 or p == 1.0:
        raise InvalidExponentError(
            f"divergence exponent must lie in (0,1) or (1,inf), got {p}"
        )
    return p


def _sandwich_trace(rho: np.ndarray, sigma: FaithfulState, p: float) -> float:
    """tr[(sigma^((1-p)/2p) rho sigma^((1-p)/2p))^p] for PSD rho."""
    w = sigma.power((1.0 - p) / (2.0 * p))
    m = w @ rho @ w
    lam = np.linalg.eigvalsh((m + m.conj().T) / 2.0)
    lam = np.clip(lam, 0.0, None)
    return float(np.sum(lam**p))


def sandwiched_divergence(pair: StatePair, p: float) -> float:
    """The sandwiched p-Renyi divergence of the pair."""
    p = _validate_divergence_exponent(p)
    return float(np.log(_sandwich_trace(pair.rho.density, pair.sigma, p)) / (p - 1.0))


# ---------------------------------------------------------------------------
# subalgebras


@dataclass(frozen=True)
class BlockPartition:
    """Block-diagonal subalgebra in a declared eigenbasis of sigma.

    ``blocks`` are disjoint 0-based index sets covering range(dim);
    ``basis`` is the unitary whose columns span the declared eigenbasis
    (``None`` means the standard basis).
    """

    blocks: tuple[tuple[int, ...], ...]
    basis: np.ndarray | None = None

    def __post_init__(self):
        blocks = tuple(tuple(int(i) for i in b) for b in self.blocks)
        object.__setattr__(self, "blocks", blocks)
        flat = sorted(i for b in blocks for i in b)
        dim = len(flat)
        if flat != list(range(dim)) or any(len(b) == 0 for b in blocks):
            raise ValueError("blocks must be disjoint nonempty sets covering range(dim)")
        if self.basis is not None:
            u = as_square_matrix(self.basis)
            if u.shape[0] != dim:
                raise ValueError("basis dimension does not match the partition")
            if np.abs(u @ u.conj().T - np.eye(dim)).max() > 1e-10:
                raise ValueError("basis must be unitary")
            object.__setattr__(self, "basis", u)

    @property
    def dim(self) -> int:
        return sum(len(b) for b in self.blocks)


@dataclass(frozen=True)
class TensorFactor:
    """The subalgebra M_A (x) 1 of a dim_a * dim_b tensor product; sigma
    must factor as sigma_A (x) sigma_B."""

    dim_a: int
    dim_b: int

    def __post_init__(self):
        if self.dim_a < 1 or self.dim_b < 1:
            raise ValueError("tensor factor dimensions must be >= 1")

    @property
    def dim(self) -> int:
        return self.dim_a * self.dim_b


@dataclass(frozen=True)
class TrivialSubalgebra:
    """The scalars; restriction forgets everything but the trace."""

    dim: int

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError("dim must be >= 1")


SubalgebraSpec = BlockPartition | TensorFactor | TrivialSubalgebra


def _block_mask(spec: BlockPartition) -> np.ndarray:
    mask = np.zeros((spec.dim, spec.dim))
    for b in spec.blocks:
        ix = np.asarray(b)
        mask[np.ix_(ix, ix)] = 1.0
    return mask


def _to_declared_basis(spec: BlockPartition, x: np.ndarray) -> np.ndarray:
    return x if spec.basis is None else spec.basis.conj().T @ x @ spec.basis


def _from_declared_basis(spec: BlockPartition, x: np.ndarray) -> np.ndarray:
    return x if spec.basis is None else spec.basis @ x @ spec.basis.conj().T


def partial_trace(x: np.ndarray, dim_a: int, dim_b: int, keep: str) -> np.ndarray:
    """Trace out one tensor factor of a (dim_a*dim_b)-dimensional matrix.

    The convention matches ``np.kron(a, b)``: the A factor indexes the
    slow axis.  ``keep`` is ``"a"`` or ``"b"``.
    """
    t = x.reshape(dim_a, dim_b, dim_a, dim_b)
    if keep == "a":
        return np.einsum("abcb->ac", t)
    if keep == "b":
        return np.einsum("abac->bc", t)
    raise ValueError(f"keep must be 'a' or 'b', got {keep!r}")


@dataclass(frozen=True)
class ConditionalExpectation:
    """The sigma-preserving conditional expectation onto a subalgebra.

    Unital, idempotent, positive, and trace-compatible with sigma:
    tr(sigma E(x)) = tr(sigma x).  Use :func:`conditional_expectation`
    to construct one (it validates the spec against sigma).
    """

    spec: SubalgebraSpec
    sigma: FaithfulState
    sigma_b: np.ndarray | None = field(default=None, repr=False)

    def __call__(self, x) -> np.ndarray:
        a = as_square_matrix(x)
        if a.shape[0] != self.spec.dim:
            raise ValueError(f"expected dimension {self.spec.dim}, got {a.shape[0]}")
        spec = self.spec
        if isinstance(spec, BlockPartition):
            m = _to_declared_basis(spec, a) * _block_mask(spec)
            return _from_declared_basis(spec, m)
        if isinstance(spec, TensorFactor):
            t = a.reshape(spec.dim_a, spec.dim_b, spec.dim_a, spec.dim_b)
            sliced = np.einsum("bc,acdb->ad", self.sigma_b, t)
            return np.kron(sliced, np.eye(spec.dim_b, dtype=complex))
        return complex(np.trace(self.sigma.density @ a)) * np.eye(
            spec.dim, dtype=complex
        )

    def restrict_density(self, m) -> np.ndarray:
        """Predual action: the density of a functional's restriction to the
        subalgebra, in the subalgebra's own representation."""
        a = as_square_matrix(m)
        spec = self.spec
        if isinstance(spec, BlockPartition):
            return self(a)
        if isinstance(spec, TensorFactor):
            return partial_trace(a, spec.dim_a, spec.dim_b, keep="a")
        return np.array([[np.trace(a)]], dtype=complex)

    def lift_density(self, m_n) -> np.ndarray:
        """Density on the big algebra of (functional on N) composed with E."""
        a = as_square_matrix(m_n)
        spec = self.spec
        if isinstance(spec, BlockPartition):
            if a.shape[0] != spec.dim:
                raise ValueError("block-partition lift expects a full-dimension matrix")
            return a
        if isinstance(spec, TensorFactor):
            if a.shape[0] != spec.dim_a:
                raise ValueError(f"expected dimension {spec.dim_a}, got {a.shape[0]}")
            return np.kron(a, self.sigma_b)
        return complex(np.trace(a)) * self.sigma.density

    def contraction(self) -> OperatorMap:
        """The map S(x) = sigma_N^(-1/2) T(sigma^(1/2) x sigma^(1/2)) sigma_N^(-1/2)
        with T the predual restriction; S(1) = 1 and S contracts every
        weighted p-norm between p = 1 and p = inf."""
        spec = self.spec
        sig_half = self.sigma.power(0.5)
        sigma_n = restricted_sigma(self)
        inv_half = sigma_n.power(-0.5)
        if isinstance(spec, BlockPartition):
            mask = _block_mask(spec)

            def apply(x: np.ndarray) -> np.ndarray:
                m = sig_half @ x @ sig_half
                pinched = _from_declared_basis(spec, _to_declared_basis(spec, m) * mask)
                return inv_half @ pinched @ inv_half

        elif isinstance(spec, TensorFactor):

            def apply(x: np.ndarray) -> np.ndarray:
                m = sig_half @ x @ sig_half
                traced = partial_trace(m, spec.dim_a, spec.dim_b, keep="a")
                return inv_half @ traced @ inv_half

        else:

            def apply(x: np.ndarray) -> np.ndarray:
                m = sig_half @ x @ sig_half
                return np.trace(m) * inv_half @ inv_half

        dim_out = spec.dim_a if isinstance(spec, TensorFactor) else (
            1 if isinstance(spec, TrivialSubalgebra) else spec.dim
        )
        return OperatorMap(apply, spec.dim, dim_out)


def conditional_expectation(
    spec: SubalgebraSpec, sigma: FaithfulState
) -> ConditionalExpectation:
    """Validate the spec against sigma and build the conditional expectation.

    Raises IncompatibleStateError when sigma is not block-diagonal in the
    declared basis (block case) or does not factor (tensor case) -- the
    structural facts that make the subalgebra modular-invariant.
    """
    if spec.dim != sigma.dim:
        raise IncompatibleStateError(
            f"subalgebra dimension {spec.dim} does not match the state ({sigma.dim})"
        )
    sigma_b = None
    if isinstance(spec, BlockPartition):
        m = _to_declared_basis(spec, sigma.density)
        off = m * (1.0 - _block_mask(spec))
        off_mass = float(np.linalg.norm(off))
        if off_mass > 1e-12:
            raise IncompatibleStateError(
                f"sigma has off-block mass {off_mass:.3e} in the declared basis"
            )
    elif isinstance(spec, TensorFactor):
        sig_a = partial_trace(sigma.density, spec.dim_a, spec.dim_b, keep="a")
        sig_b = partial_trace(sigma.density, spec.dim_a, spec.dim_b, keep="b")
        defect = float(np.abs(sigma.density - np.kron(sig_a, sig_b)).max())
        if defect > 1e-10:
            raise IncompatibleStateError(
                f"sigma deviates from a tensor product by {defect:.3e}"
            )
        sigma_b = sig_b
    return ConditionalExpectation(spec=spec, sigma=sigma, sigma_b=sigma_b)


def restricted_sigma(expectation: ConditionalExpectation) -> FaithfulState:
    """sigma restricted to the subalgebra, as a faithful state."""
    return faithful_state(expectation.restrict_density(expectation.sigma.density))


def restrict_state(pair: StatePair, expectation: ConditionalExpectation) -> StatePair:
    """Restrict both states of the pair to the subalgebra.

    Raises FaithfulnessLostError (rather than clamping) if the restricted
    rho dips below the faithfulness floor, so callers can reject the
    trial.
    """
    if pair.dim != expectation.spec.dim:
        raise IncompatibleStateError(
            f"pair dimension {pair.dim} does not match the subalgebra "
            f"({expectation.spec.dim})"
        )
    rho_n = expectation.restrict_density(pair.rho.density)
    try:
        rho_state = faithful_state(rho_n)
    except ValueError as exc:
        raise FaithfulnessLostError(f"restricted rho: {exc}") from exc
    return StatePair(rho=rho_state, sigma=restricted_sigma(expectation))


# ---------------------------------------------------------------------------
# checks


@dataclass(frozen=True)
class InequalityCheck:
    """Outcome of a pointwise family of slack checks.

    ``points`` holds (p, slack, range_label); a positive slack means the
    inequality holds with margin.  ``max_violation`` is the largest
    -slack, or the largest |slack| for an equality check, so passing
    always means max_violation <= tolerance.
    """

    label: str
    points: tuple[tuple[float, float, str], ...]
    tolerance: float
    equality: bool = False

    @property
    def max_violation(self) -> float:
        if not self.points:
            return 0.0
        if self.equality:
            return max(abs(s) for _, s, _ in self.points)
        return max(-s for _, s, _ in self.points)

    @property
    def passed(self) -> bool:
        return self.max_violation <= self.tolerance


def _dpi_range_label(p: float) -> str:
    return "(1,inf)" if p > 1.0 else "[1/2,1)"


def dpi_check(
    pair: StatePair,
    expectation: ConditionalExpectation,
    p_grid,
    tolerance: float = DPI_TOL,
) -> InequalityCheck:
    """Data processing: D_p(restriction) <= D_p(pair) for every p in the
    grid.  Exponents outside [1/2, 1) or (1, inf) are rejected; the
    inequality is not asserted below 1/2.  Points are labelled by
    sub-range so a failure can be attributed to the right claim."""
    ps = [float(p) for p in p_grid]
    for p in ps:
        if not ((0.5 <= p < 1.0) or p > 1.0):
            raise InvalidExponentError(
                f"DPI is asserted only for p in [1/2,1) or (1,inf), got {p}"
            )
    restricted = restrict_state(pair, expectation)
    points = []
    for p in ps:
        slack = sandwiched_divergence(pair, p) - sandwiched_divergence(restricted, p)
        points.append((p, slack, _dpi_range_label(p)))
    return InequalityCheck(label="dpi", points=tuple(points), tolerance=tolerance)


def _blockwise_divergence(
    spec: BlockPartition, rho_n: np.ndarray, sigma_n: np.ndarray, p: float
) -> float:
    """Divergence of a block-diagonal pair computed block by block, i.e.
    in the subalgebra's direct-sum representation."""
    p = _validate_divergence_exponent(p)
    total = 0.0
    m_rho = _to_declared_basis(spec, rho_n)
    m_sig = _to_declared_basis(spec, sigma_n)
    for b in spec.blocks:
        ix = np.asarray(b)
        rho_k = m_rho[np.ix_(ix, ix)]
        sig_k = m_sig[np.ix_(ix, ix)]
        dec = hermitian_eigen((sig_k + sig_k.conj().T) / 2.0)
        u = dec.unitary
        w = (u * dec.eigenvalues ** ((1.0 - p) / (2.0 * p))) @ u.conj().T
        m = w @ rho_k @ w
        lam = np.clip(np.linalg.eigvalsh((m + m.conj().T) / 2.0), 0.0, None)
        total += float(np.sum(lam**p))
    return float(np.log(total) / (p - 1.0))


def equality_condition_check(
    pair_n: StatePair,
    expectation: ConditionalExpectation,
    p_grid,
    tolerance: float = EQUALITY_TOL,
) -> InequalityCheck:
    """When rho is the lift of a subalgebra state through E, restriction
    loses nothing: D_p(lifted pair) = D_p(pair on N) for every p in
    (0,1) or (1,inf), no DPI hypothesis needed.

    ``pair_n`` lives on the subalgebra (block-diagonal at full dimension
    for a partition, dimension dim_a for a tensor factor, scalar for the
    trivial subalgebra).  The slack entries are signed equality defects.
    """
    spec = expectation.spec
    sigma_full = expectation.sigma
    if isinstance(spec, BlockPartition):
        if pair_n.dim != spec.dim:
            raise IncompatibleStateError("block-partition pair must be full-dimensional")
        off = _to_declared_basis(spec, pair_n.rho.density) * (1.0 - _block_mask(spec))
        if float(np.linalg.norm(off)) > 1e-10:
            raise IncompatibleStateError("pair_n.rho is not block-diagonal")
        if float(np.abs(pair_n.sigma.density - sigma_full.density).max()) > 1e-10:
            raise IncompatibleStateError("pair_n.sigma differs from the expectation's sigma")
    elif isinstance(spec, TensorFactor):
        if pair_n.dim != spec.dim_a:
            raise IncompatibleStateError(
                f"tensor-factor pair must have dimension {spec.dim_a}"
            )
        sig_a = partial_trace(sigma_full.density, spec.dim_a, spec.dim_b, keep="a")
        if float(np.abs(pair_n.sigma.density - sig_a).max()) > 1e-10:
            raise IncompatibleStateError("pair_n.sigma differs from the reduced sigma")
    else:
        if pair_n.dim != 1:
            raise IncompatibleStateError("trivial-subalgebra pair must be scalar")

    lifted = state_pair(expectation.lift_density(pair_n.rho.density), sigma_full.density)
    points = []
    for p in p_grid:
        p = _validate_divergence_exponent(p)
        big = sandwiched_divergence(lifted, p)
        if isinstance(spec, BlockPartition):
            small = _blockwise_divergence(
                spec, pair_n.rho.density, pair_n.sigma.density, p
            )
        else:
            small = sandwiched_divergence(pair_n, p)
        points.append((p, big - small, _dpi_range_label(p) if p >= 0.5 else "(0,1/2)"))
    return InequalityCheck(
        label="dpi_equality", points=tuple(points), tolerance=tolerance, equality=True
    )


def monotonicity_check(
    pair: StatePair, p_grid, tolerance: float = DPI_TOL
) -> InequalityCheck:
    """p -> D_p is nondecreasing on (0,1) and (1,inf), including across
    the gap at p = 1; checks consecutive grid points."""
    ps = [float(p) for p in p_grid]
    if sorted(ps) != ps:
        raise InvalidExponentError("p_grid must be sorted ascending")
    values = [(p, sandwiched_divergence(pair, p)) for p in ps]
    points = []
    for (pa, va), (pb, vb) in zip(values, values[1:]):
        points.append((pb, vb - va, f"[{pa:g},{pb:g}]"))
    return InequalityCheck(label="renyi_monotonicity", points=tuple(points), tolerance=tolerance)


def classical_renyi_divergence(probs_rho, probs_sigma, p: float) -> float:
    """Commuting-case oracle: (1/(p-1)) log sum_i rho_i^p sigma_i^(1-p)."""
    p = _validate_divergence_exponent(p)
    r = np.asarray(probs_rho, dtype=float)
    s = np.asarray(probs_sigma, dtype=float)
    return float(np.log(np.sum(r**p * s ** (1.0 - p))) / (p - 1.0))
