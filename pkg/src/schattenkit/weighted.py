"""State-weighted matrix Lp norms and the modular flow.

For a faithful state sigma the weighted norm of x at exponent p is

    |x|_{p, sigma} = | sigma^(1/2p) x sigma^(1/2p) |_p ,

with the operator norm at p = inf (the weight exponent 1/2p -> 0).  The
modular flow is the analytically continued conjugation
``sigma^(iz) x sigma^(-iz)``.
"""

from __future__ import annotations

from typing import Callable, Sequence

import numpy as np

from .errors import ZeroInputError
from .families import Const, Family, FamilyProduct, MatrixPower
from .norms import p_theta, schatten_norm, validate_exponent
from .spectral import as_square_matrix
from .states import FaithfulState


def weighted_norm(state: FaithfulState, x, p: float) -> float:
    """|sigma^(1/2p) x sigma^(1/2p)|_p; the operator norm for p = inf."""
    p = validate_exponent(p)
    if np.isinf(p):
        return schatten_norm(x, np.inf)
    w = state.power(1.0 / (2.0 * p))
    return schatten_norm(w @ as_square_matrix(x) @ w, p)


def asymmetric_weighted_norm(state: FaithfulState, x, p: float, eta: float) -> float:
    """|sigma^((1-eta)/2p) x sigma^(eta/2p)|_p.

    eta = 1/2 recovers :func:`weighted_norm`; both endpoints eta = 0 and
    eta = 1 put the full weight on one side.
    """
    p = validate_exponent(p)
    eta = float(eta)
    if not 0.0 <= eta <= 1.0:
        raise ValueError(f"eta must lie in [0, 1], got {eta}")
    if np.isinf(p):
        return schatten_norm(x, np.inf)
    left = state.power((1.0 - eta) / (2.0 * p))
    right = state.power(eta / (2.0 * p))
    return schatten_norm(left @ as_square_matrix(x) @ right, p)


def modular_flow(state: FaithfulState, x, z: complex) -> np.ndarray:
    """sigma^(iz) x sigma^(-iz), entire in z for a faithful state."""
    z = complex(z)
    return state.power(1j * z) @ as_square_matrix(x) @ state.power(-1j * z)


def extremal_witness(
    state: FaithfulState, x, p0: float, p1: float, theta: float
) -> Family:
    """Analytic family that attains the interpolation bound through x.

    With y = sigma^(1/2p_theta) x sigma^(1/2p_theta) and polar y = u |y|,
    the family is

        W(z) = u |y| ** (p_theta * ((1-z)/p0 + z/p1)),

    so W(theta) = y, and on the boundary lines the Schatten norms are
    independent of t:

        |W(it)|_p0 = |y|_{p_theta}^(p_theta/p0),
        |W(1+it)|_p1 = |y|_{p_theta}^(p_theta/p1).
    """
    p0 = validate_exponent(p0, "p0")
    p1 = validate_exponent(p1, "p1")
    if not p0 < p1:
        raise ValueError(f"need p0 < p1, got p0={p0}, p1={p1}")
    theta = float(theta)
    if not 0.0 < theta < 1.0:
        raise ValueError(f"theta must lie in (0, 1), got {theta}")
    a = as_square_matrix(x)
    if np.abs(a).max() == 0.0:
        raise ZeroInputError("extremal witness of the zero matrix is undefined")
    pt = p_theta(p0, p1, theta)
    w = state.power(1.0 / (2.0 * pt))
    y = w @ a @ w
    u_full, s, vh = np.linalg.svd(y)
    u = u_full @ vh
    absy = (vh.conj().T * s) @ vh
    inv0 = 0.0 if np.isinf(p0) else 1.0 / p0
    inv1 = 0.0 if np.isinf(p1) else 1.0 / p1
    return FamilyProduct(
        (Const(u), MatrixPower(absy, slope=pt * (inv1 - inv0), offset=pt * inv0))
    )


class OperatorMap:
    """Linear map on matrices, given by a Kraus family or a superoperator.

    Kraus operators may be rectangular (``dim_out x dim_in``); the
    superoperator form is a ``dim_out**2 x dim_in**2`` matrix acting on
    column-stacked inputs.
    """

    def __init__(self, fn: Callable[[np.ndarray], np.ndarray], dim_in: int, dim_out: int):
        self._fn = fn
        self.dim_in = int(dim_in)
        self.dim_out = int(dim_out)

    def __call__(self, x) -> np.ndarray:
        a = as_square_matrix(x)
        if a.shape[0] != self.dim_in:
            raise ValueError(f"expected dimension {self.dim_in}, got {a.shape[0]}")
        return self._fn(a)

    @classmethod
    def from_kraus(cls, kraus: Sequence[np.ndarray]) -> "OperatorMap":
        ops = [np.asarray(k, dtype=complex) for k in kraus]
        if not ops:
            raise ValueError("need at least one Kraus operator")
        dim_out, dim_in = ops[0].shape
        if any(k.shape != (dim_out, dim_in) for k in ops):
            raise ValueError("Kraus operators must share a shape")

        def apply(x: np.ndarray) -> np.ndarray:
            out = np.zeros((dim_out, dim_out), dtype=complex)
            for k in ops:
                out += k @ x @ k.conj().T
            return out

        return cls(apply, dim_in, dim_out)

    @classmethod
    def from_superoperator(cls, mat, dim_in: int, dim_out: int) -> "OperatorMap":
        m = np.asarray(mat, dtype=complex)
        if m.shape != (dim_out**2, dim_in**2):
            raise ValueError(
                f"superoperator shape {m.shape} does not match "
                f"({dim_out**2}, {dim_in**2})"
            )

        def apply(x: np.ndarray) -> np.ndarray:
            vec = x.reshape(-1, order="F")
            return (m @ vec).reshape((dim_out, dim_out), order="F")

        return cls(apply, dim_in, dim_out)

    @classmethod
    def identity(cls, dim: int) -> "OperatorMap":
        return cls(lambda x: x, dim, dim)

    def linearity_defect(self, x, y, alpha: complex = 0.7 - 0.3j, beta: complex = -1.1 + 0.4j) -> float:
        """Spot check |T(ax + by) - a T(x) - b T(y)| on one probe pair."""
        lhs = self(alpha * as_square_matrix(x) + beta * as_square_matrix(y))
        rhs = alpha * self(x) + beta * self(y)
        return float(np.abs(lhs - rhs).max())


def matrix_units(dim: int) -> list[np.ndarray]:
    """The dim**2 elementary matrices E_ij."""
    units = []
    for i in range(dim):
        for j in range(dim):
            e = np.zeros((dim, dim), dtype=complex)
            e[i, j] = 1.0
            units.append(e)
    return units


def operator_interp_norm(
    op: OperatorMap,
    src: FaithfulState,
    dst: FaithfulState,
    p: float,
    q: float,
    trials: int = 32,
    rng: np.random.Generator | None = None,
) -> float:
    """Sampled lower bound on the weighted operator norm
    sup_X |T(X)|_{q, dst} / |X|_{p, src}.

    The maximum runs over a deterministic probe set (identity, the source
    density, all matrix units) plus ``trials`` Gaussian draws.  This is a
    lower estimate only; exact weighted operator norms are a nonconvex
    problem away from p = 2.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if rng is None:
        rng = np.random.default_rng(0)
    d = op.dim_in
    probes = [np.eye(d, dtype=complex), src.density.astype(complex)]
    probes.extend(matrix_units(d))
    for _ in range(trials):
        probes.append(
            (rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d)))
            / np.sqrt(2.0)
        )
    best = 0.0
    for x in probes:
        denom = weighted_norm(src, x, p)
        if denom < 1e-13:
            continue
        best = max(best, weighted_norm(dst, op(x), q) / denom)
    return best
