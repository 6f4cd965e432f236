"""Schatten p-(quasi)norms and the trace-norm inequality kit.

For 0 < p < inf the Schatten norm is ``(sum_i s_i^p)^(1/p)`` over the
singular values ``s_i``; ``p = inf`` gives the operator norm.  The same
symbol serves the quasi-norm range 0 < p < 1, where the triangle
inequality is replaced by ``|x+y|_p^p <= |x|_p^p + |y|_p^p``.
"""

from __future__ import annotations

import numpy as np

from .errors import ConvergenceFailureError
from .spectral import SUPPORT_RTOL, as_square_matrix, singular_values


def validate_exponent(p: float, name: str = "p") -> float:
    """Check that ``p`` is a valid norm exponent in (0, inf]."""
    p = float(p)
    if np.isnan(p) or p <= 0:
        raise ValueError(f"{name} must lie in (0, inf], got {p}")
    return p


def schatten_norm(x, p: float) -> float:
    """Schatten p-(quasi)norm of ``x``.

    Singular values below ``1e-14`` times the largest are treated as
    exact zeros before raising to the power ``p``, so quasi-norm
    exponents do not amplify spectral noise.
    """
    p = validate_exponent(p)
    s = singular_values(x)
    top = float(s[0])
    if top == 0.0:
        return 0.0
    if np.isinf(p):
        return top
    s = s[s > SUPPORT_RTOL * top]
    # factor out the largest singular value to keep s**p well scaled
    return top * float(np.sum((s / top) ** p) ** (1.0 / p))


def p_theta(p0: float, p1: float, theta: float) -> float:
    """Interpolated exponent: 1/p_theta = (1-theta)/p0 + theta/p1.

    The convention 1/inf = 0 applies; theta must lie in [0, 1].
    """
    p0 = validate_exponent(p0, "p0")
    p1 = validate_exponent(p1, "p1")
    theta = float(theta)
    if not 0.0 <= theta <= 1.0:
        raise ValueError(f"theta must lie in [0, 1], got {theta}")
    inv = (1.0 - theta) * (0.0 if np.isinf(p0) else 1.0 / p0)
    inv += theta * (0.0 if np.isinf(p1) else 1.0 / p1)
    return np.inf if inv == 0.0 else 1.0 / inv


def factorize(f, lam: float) -> tuple[np.ndarray, np.ndarray]:
    """Split ``f = g @ h`` with exactly matching norms.

    With the polar decomposition ``f = u |f|`` the factors are
    ``g = u |f|^(1-lam)`` and ``h = |f|^lam``, so that for every r > 0

        |g|_{r/(1-lam)} = |f|_r^(1-lam),    |h|_{r/lam} = |f|_r^lam.

    ``u`` is completed to a full unitary on the kernel, which keeps both
    equalities exact for singular ``f`` as well.
    """
    lam = float(lam)
    if not 0.0 < lam < 1.0:
        raise ValueError(f"lam must lie in (0, 1), got {lam}")
    a = as_square_matrix(f)
    try:
        u_full, s, vh = np.linalg.svd(a)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceFailureError(f"SVD failed: {exc}") from exc
    v = vh.conj().T
    u = u_full @ vh
    g = u @ ((v * s ** (1.0 - lam)) @ vh)
    h = (v * s**lam) @ vh
    return g, h
