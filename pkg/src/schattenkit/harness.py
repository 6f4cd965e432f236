"""Randomized verification suites.

Each suite draws seeded random fixtures, evaluates a family of
inequality or equality checks, and aggregates the worst violation into a
:class:`VerificationReport`.  Violations are normalized so that a suite
passes iff ``max_violation <= tolerance``:

* for an inequality LHS <= RHS the violation is (LHS - RHS) / scale;
* for an equality the violation is |defect| / scale;
* log-scale slacks (the strip integrals) are used as is.

Trials are keyed by (seed, suite, counter), so reports are bit-for-bit
reproducible and independent of scheduling.
"""

from __future__ import annotations

import hashlib
import time
from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigError, FaithfulnessLostError
from .families import Const, FamilyProduct, MatrixPower
from .norms import p_theta, schatten_norm
from .renyi import (
    BlockPartition,
    TensorFactor,
    TrivialSubalgebra,
    conditional_expectation,
    dpi_check,
    equality_condition_check,
    monotonicity_check,
    restricted_sigma,
    state_pair,
)
from .sampling import (
    ginibre,
    random_diagonal_state,
    random_faithful_psd,
    random_unitary,
    sample_faithful_state,
    trial_rng,
)
from .states import faithful_state
from .strip import QuadratureSpec, hirschman_check, kernel_mass, product_power_check, three_lines_check
from .weighted import weighted_norm

REPORT_VERSION = "1"

_TINY = 1e-300


@dataclass(frozen=True)
class SuiteConfig:
    suite: str
    dims: tuple[int, ...] = (2, 3, 4)
    trials: int = 100
    seed: int = 0
    p_grid: tuple[float, ...] | None = None
    tolerance_overrides: dict = field(default_factory=dict)
    quadrature: QuadratureSpec = field(default_factory=QuadratureSpec)

    def tolerance(self, default: float) -> float:
        return float(self.tolerance_overrides.get("tolerance", default))


@dataclass
class VerificationReport:
    suite: str
    version: str
    config: dict
    tolerance: float
    records: list
    max_violation: float
    passed: bool
    wall_time: float

    def body(self) -> dict:
        """Everything except the wall time, for byte-identical comparison."""
        return {
            "version": self.version,
            "suite": self.suite,
            "config": self.config,
            "tolerance": self.tolerance,
            "records": self.records,
            "max_violation": self.max_violation,
            "pass": self.passed,
        }

    def to_obj(self) -> dict:
        obj = self.body()
        obj["wall_time"] = self.wall_time
        return obj


def _digest(arrays) -> str:
    h = hashlib.sha256()
    for a in arrays:
        m = np.ascontiguousarray(np.asarray(a, dtype=complex))
        h.update(str(m.shape).encode())
        h.update(m.tobytes())
    return h.hexdigest()[:16]


def _rel(numer: float, scale: float) -> float:
    return float(numer / max(scale, _TINY))


# ---------------------------------------------------------------------------
# suite runners; each yields (dim, trial_index, digest, checks) where checks
# is a list of {"name": ..., "violation": ..., ...values...}


def _run_schatten(cfg: SuiteConfig):
    quasi_ps = cfg.p_grid or (0.25, 0.5, 0.9)
    banach_ps = (1.0, 2.0, np.inf)
    palette = (0.25, 0.5, 2.0 / 3.0, 1.0, 1.5, 2.0, 4.0, np.inf)
    records = []
    counter = 0
    for dim in cfg.dims:
        for trial in range(cfg.trials):
            rng = trial_rng(cfg.seed, cfg.suite, counter)
            counter += 1
            x = ginibre(dim, rng)
            y = ginibre(dim, rng)
            u = random_unitary(dim, rng)
            v = random_unitary(dim, rng)
            checks = []

            # Hoelder: 1/r = 1/p + 1/q
            p, q = (float(rng.choice(palette)) for _ in range(2))
            inv = (0.0 if np.isinf(p) else 1.0 / p) + (0.0 if np.isinf(q) else 1.0 / q)
            r = np.inf if inv == 0.0 else 1.0 / inv
            lhs = schatten_norm(x @ y, r)
            rhs = schatten_norm(x, p) * schatten_norm(y, q)
            checks.append(
                {"name": "holder", "p": p, "q": q, "violation": _rel(lhs - rhs, rhs)}
            )

            for pp in quasi_ps:
                lhs = schatten_norm(x + y, pp) ** pp
                rhs = schatten_norm(x, pp) ** pp + schatten_norm(y, pp) ** pp
                checks.append(
                    {"name": "quasi_triangle", "p": pp, "violation": _rel(lhs - rhs, rhs)}
                )
            for pp in banach_ps:
                lhs = schatten_norm(x + y, pp)
                rhs = schatten_norm(x, pp) + schatten_norm(y, pp)
                checks.append(
                    {"name": "triangle", "p": pp, "violation": _rel(lhs - rhs, rhs)}
                )

            pp = float(rng.choice((0.5, 1.0, 2.0)))
            two_p = schatten_norm(x, 2.0 * pp) ** 2
            left = schatten_norm(x.conj().T @ x, pp)
            right = schatten_norm(x @ x.conj().T, pp)
            viol = max(abs(two_p - left), abs(two_p - right))
            checks.append({"name": "two_p_identity", "p": pp, "violation": _rel(viol, left)})

            pp = float(rng.choice(palette))
            base = schatten_norm(x, pp)
            rotated = schatten_norm(u @ x @ v, pp)
            checks.append(
                {"name": "unitary_invariance", "p": pp, "violation": _rel(abs(rotated - base), base)}
            )

            records.append((dim, trial, _digest([x, y, u, v]), checks))
    return records


_WEIGHTED_PALETTE = (0.3, 0.5, 1.0, 2.0, 4.0, np.inf)


def _run_weighted(cfg: SuiteConfig):
    palette = cfg.p_grid or _WEIGHTED_PALETTE
    thetas = (0.25, 0.5, 0.75)
    records = []
    counter = 0
    for dim in cfg.dims:
        for trial in range(cfg.trials):
            rng = trial_rng(cfg.seed, cfg.suite, counter)
            counter += 1
            state = sample_faithful_state(dim, rng)
            x = ginibre(dim, rng)
            idx = rng.choice(len(palette), size=2, replace=False)
            p0, p1 = sorted(float(palette[i]) for i in idx)
            n0 = weighted_norm(state, x, p0)
            n1 = weighted_norm(state, x, p1)
            checks = [
                {"name": "embedding_monotonicity", "p0": p0, "p1": p1, "violation": _rel(n0 - n1, n1)}
            ]
            for theta in thetas:
                pt = p_theta(p0, p1, theta)
                lhs = weighted_norm(state, x, pt)
                rhs = n0 ** (1.0 - theta) * n1**theta
                checks.append(
                    {
                        "name": "interpolation",
                        "p0": p0,
                        "p1": p1,
                        "theta": theta,
                        "violation": _rel(lhs - rhs, rhs),
                    }
                )
            records.append((dim, trial, _digest([state.density, x]), checks))
    return records


def _run_three_lines(cfg: SuiteConfig):
    quasi = (0.3, 0.5, 1.0, 2.0, 4.0)
    thetas = (0.25, 0.4, 0.6, 0.75)
    records = []
    counter = 0
    for dim in cfg.dims:
        for trial in range(cfg.trials):
            rng = trial_rng(cfg.seed, cfg.suite, counter)
            counter += 1
            kind = ("const", "power_product", "witness")[trial % 3]
            idx = rng.choice(len(quasi), size=2, replace=False)
            p0, p1 = sorted(float(quasi[i]) for i in idx)
            theta = float(rng.choice(thetas))
            if kind == "const":
                state = sample_faithful_state(dim, rng)
                x = ginibre(dim, rng)
                fam = Const(x)
                report = three_lines_check(fam, state, p0, p1, theta)
                inputs = [state.density, x]
            elif kind == "power_product":
                a = random_faithful_psd(dim, rng)
                b = ginibre(dim, rng)
                fam = FamilyProduct((MatrixPower(a), Const(b)))
                report = three_lines_check(fam, None, p0, p1, theta)
                inputs = [a, b]
            else:
                from .weighted import extremal_witness

                state = sample_faithful_state(dim, rng)
                x = ginibre(dim, rng)
                fam = extremal_witness(state, x, p0, p1, theta)
                report = three_lines_check(fam, None, p0, p1, theta)
                inputs = [state.density, x]
            checks = [
                {
                    "name": f"three_lines_{kind}",
                    "p0": p0,
                    "p1": p1,
                    "theta": theta,
                    "sound": report.sound,
                    "violation": _rel(-report.slack, report.bound),
                }
            ]
            records.append((dim, trial, _digest(inputs), checks))
    return records


def _run_witness(cfg: SuiteConfig):
    pairs = ((0.5, 2.0), (0.3, 1.0), (1.0, 4.0), (2.0, np.inf))
    thetas = (0.25, 0.4, 0.5, 0.75)
    records = []
    counter = 0
    for dim in cfg.dims:
        for trial in range(cfg.trials):
            rng = trial_rng(cfg.seed, cfg.suite, counter)
            counter += 1
            from .weighted import extremal_witness

            state = sample_faithful_state(dim, rng)
            x = ginibre(dim, rng)
            p0, p1 = pairs[trial % len(pairs)]
            theta = float(rng.choice(thetas))
            fam = extremal_witness(state, x, p0, p1, theta)
            report = three_lines_check(fam, None, p0, p1, theta)
            checks = [
                {
                    "name": "witness_tightness",
                    "p0": p0,
                    "p1": p1,
                    "theta": theta,
                    "slack": report.slack,
                    "violation": _rel(abs(report.slack), report.bound),
                }
            ]
            records.append((dim, trial, _digest([state.density, x]), checks))
    return records


def _run_hirschman(cfg: SuiteConfig):
    records = []
    thetas = cfg.p_grid or (0.1, 0.25, 0.5, 0.75, 0.9)
    kernel_checks = []
    for theta in thetas:
        mass, err = kernel_mass(theta, cfg.quadrature)
        kernel_checks.append(
            {"name": "kernel_mass", "theta": float(theta), "quad_error": err, "violation": abs(mass - 1.0)}
        )
    records.append((0, -1, _digest([]), kernel_checks))

    counter = 0
    for dim in cfg.dims:
        for trial in range(cfg.trials):
            rng = trial_rng(cfg.seed, cfg.suite, counter)
            counter += 1
            a = random_faithful_psd(dim, rng)
            b = random_faithful_psd(dim, rng)
            theta = float(rng.choice((0.25, 0.5, 0.75)))
            p0, p1 = sorted(float(v) for v in rng.choice((0.5, 1.0, 2.0), size=2, replace=False))
            fam = FamilyProduct((MatrixPower(a), Const(b)))
            rep = hirschman_check(fam, p0, p1, theta, quad=cfg.quadrature)
            checks = [
                {
                    "name": "hirschman_power_product",
                    "p0": p0,
                    "p1": p1,
                    "theta": theta,
                    "quad_error": rep.quad_error,
                    "violation": -rep.slack,
                }
            ]
            records.append((dim, trial, _digest([a, b]), checks))
    return records


def _run_product_power(cfg: SuiteConfig):
    r_values = (0.3, 0.5, 1.0)
    p_values = cfg.p_grid or (0.5, 1.0, 2.0)
    records = []
    counter = 0
    for dim in cfg.dims:
        for trial in range(cfg.trials):
            rng = trial_rng(cfg.seed, cfg.suite, counter)
            counter += 1
            n = 1 + trial % 3
            r = float(r_values[trial % len(r_values)])
            p = float(p_values[(trial // 3) % len(p_values)])
            commuting = trial % 5 == 4
            if commuting:
                d_vals = [np.diag(rng.random(dim) + 0.05) for _ in range(n)]
                factors = [v.astype(complex) for v in d_vals]
            else:
                factors = [random_faithful_psd(dim, rng) for _ in range(n)]
            rep = product_power_check(factors, r, p, quad=cfg.quadrature)
            equality = commuting or n == 1
            checks = [
                {
                    "name": "product_power_equality" if equality else "product_power",
                    "n": n,
                    "r": r,
                    "p": p,
                    "quad_error": rep.quad_error,
                    "violation": abs(rep.slack) if equality else -rep.slack,
                }
            ]
            records.append((dim, trial, _digest(factors), checks))
    return records


_MONO_GRID = (0.1, 0.2, 0.35, 0.5, 0.65, 0.8, 0.95, 1.1, 1.5, 2.0, 5.0, 10.0)


def _run_renyi_mono(cfg: SuiteConfig):
    grid = cfg.p_grid or _MONO_GRID
    records = []
    counter = 0
    for dim in cfg.dims:
        for trial in range(cfg.trials):
            rng = trial_rng(cfg.seed, cfg.suite, counter)
            counter += 1
            pair = state_pair(
                sample_faithful_state(dim, rng).density,
                sample_faithful_state(dim, rng).density,
            )
            check = monotonicity_check(pair, grid)
            checks = [
                {
                    "name": "renyi_monotonicity",
                    "grid": [float(p) for p in grid],
                    "violation": check.max_violation,
                }
            ]
            records.append(
                (dim, trial, _digest([pair.rho.density, pair.sigma.density]), checks)
            )
    return records


def _sample_block_spec(dim: int, rng: np.random.Generator):
    """Random basis and partition; sigma assembled block-diagonal in it."""
    basis = random_unitary(dim, rng)
    cut = 1 + int(rng.integers(0, dim - 1)) if dim > 1 else 1
    if dim == 1:
        blocks = ((0,),)
    else:
        blocks = (tuple(range(cut)), tuple(range(cut, dim)))
    spec = BlockPartition(blocks=blocks, basis=basis)
    weights = rng.random(len(blocks)) + 0.2
    weights /= weights.sum()
    diag_blocks = []
    for b, w in zip(blocks, weights):
        k = len(b)
        blk = random_faithful_psd(k, rng)
        diag_blocks.append(w * blk / np.trace(blk).real)
    sigma = np.zeros((dim, dim), dtype=complex)
    for b, blk in zip(blocks, diag_blocks):
        ix = np.asarray(b)
        sigma[np.ix_(ix, ix)] = blk
    sigma = basis @ sigma @ basis.conj().T
    return spec, faithful_state(sigma)


def _sample_dpi_fixture(dim: int, kind: str, rng: np.random.Generator):
    if kind == "tensor":
        da, db = 2, dim // 2
        sa = sample_faithful_state(da, rng)
        sb = sample_faithful_state(db, rng)
        sigma = faithful_state(np.kron(sa.density, sb.density))
        spec = TensorFactor(dim_a=da, dim_b=db)
    elif kind == "trivial":
        sigma = sample_faithful_state(dim, rng)
        spec = TrivialSubalgebra(dim=dim)
    else:
        spec, sigma = _sample_block_spec(dim, rng)
    expectation = conditional_expectation(spec, sigma)
    rho = sample_faithful_state(dim, rng)
    pair = state_pair(rho.density, sigma.density)
    return pair, expectation, kind


_DPI_GRID = (0.5, 0.75, 1.5, 2.0, 5.0)


def _run_dpi(cfg: SuiteConfig):
    grid = cfg.p_grid or _DPI_GRID
    for p in grid:
        if not ((0.5 <= p < 1.0) or p > 1.0):
            raise ConfigError(
                f"p_grid value {p} lies outside the asserted DPI range [1/2,1) u (1,inf)"
            )
    records = []
    counter = 0
    for dim in cfg.dims:
        for trial in range(cfg.trials):
            rng = trial_rng(cfg.seed, cfg.suite, counter)
            counter += 1
            kinds = ["pinching", "trivial"] if dim % 2 else ["pinching", "tensor", "trivial"]
            kind = kinds[trial % len(kinds)]
            for _attempt in range(8):
                try:
                    pair, expectation, kind = _sample_dpi_fixture(dim, kind, rng)
                    check = dpi_check(pair, expectation, grid)
                    break
                except FaithfulnessLostError:
                    continue
            else:
                raise RuntimeError("could not sample a faithful DPI fixture")
            checks = [
                {
                    "name": f"dpi_{kind}",
                    "grid": [float(p) for p in grid],
                    "violation": check.max_violation,
                }
            ]
            records.append(
                (dim, trial, _digest([pair.rho.density, pair.sigma.density]), checks)
            )
    return records


_EQUALITY_GRID = (0.25, 0.5, 2.0, 10.0)


def _run_dpi_equality(cfg: SuiteConfig):
    grid = cfg.p_grid or _EQUALITY_GRID
    records = []
    counter = 0
    for dim in cfg.dims:
        for trial in range(cfg.trials):
            rng = trial_rng(cfg.seed, cfg.suite, counter)
            counter += 1
            use_tensor = dim % 2 == 0 and trial % 2 == 0
            if use_tensor:
                da, db = 2, dim // 2
                sa = sample_faithful_state(da, rng)
                sb = sample_faithful_state(db, rng)
                sigma = faithful_state(np.kron(sa.density, sb.density))
                spec = TensorFactor(dim_a=da, dim_b=db)
                expectation = conditional_expectation(spec, sigma)
                rho_n = sample_faithful_state(da, rng)
                pair_n = state_pair(rho_n.density, sa.density)
                kind = "tensor"
            else:
                spec, sigma = _sample_block_spec(dim, rng)
                expectation = conditional_expectation(spec, sigma)
                rho_blocks = np.zeros((dim, dim), dtype=complex)
                weights = rng.random(len(spec.blocks)) + 0.2
                weights /= weights.sum()
                for b, w in zip(spec.blocks, weights):
                    k = len(b)
                    blk = random_faithful_psd(k, rng)
                    ix = np.asarray(b)
                    rho_blocks[np.ix_(ix, ix)] = w * blk / np.trace(blk).real
                rho_n = spec.basis @ rho_blocks @ spec.basis.conj().T
                pair_n = state_pair(rho_n, sigma.density)
                kind = "pinching"
            check = equality_condition_check(pair_n, expectation, grid)
            checks = [
                {
                    "name": f"equality_{kind}",
                    "grid": [float(p) for p in grid],
                    "violation": check.max_violation,
                }
            ]
            records.append(
                (dim, trial, _digest([pair_n.rho.density, expectation.sigma.density]), checks)
            )
    return records


def _run_riesz_thorin(cfg: SuiteConfig):
    thetas = (0.25, 0.5, 0.75)
    records = []
    counter = 0
    for dim in cfg.dims:
        for trial in range(cfg.trials):
            rng = trial_rng(cfg.seed, cfg.suite, counter)
            counter += 1
            checks = []
            x = ginibre(dim, rng)
            if trial % 2 == 0:
                # unitary conjugation with the tracial weight: every weighted
                # norm is exactly invariant, so both boundary bounds are 1
                from .states import maximally_mixed

                state = maximally_mixed(dim)
                u = random_unitary(dim, rng)
                y = u @ x @ u.conj().T
                p0, p1 = 0.5, 2.0
                for theta in thetas:
                    pt = p_theta(p0, p1, theta)
                    num = weighted_norm(state, y, pt)
                    den = weighted_norm(state, x, pt)
                    checks.append(
                        {
                            "name": "rt_unitary",
                            "p_theta": pt,
                            "violation": _rel(num - den, den),
                        }
                    )
                inputs = [x, u]
            else:
                kind = ("pinching", "tensor", "trivial")[trial % 3]
                if kind == "tensor" and dim % 2:
                    kind = "pinching"
                pair, expectation, kind = _sample_dpi_fixture(dim, kind, rng)
                smap = expectation.contraction()
                sigma_n = restricted_sigma(expectation)
                for theta in thetas:
                    pt = p_theta(1.0, np.inf, theta)
                    num = weighted_norm(sigma_n, smap(x), pt)
                    den = weighted_norm(expectation.sigma, x, pt)
                    checks.append(
                        {
                            "name": f"rt_contraction_{kind}",
                            "p_theta": pt,
                            "violation": _rel(num - den, den),
                        }
                    )
                inputs = [x, expectation.sigma.density]
            records.append((dim, trial, _digest(inputs), checks))
    return records


_SUITES = {
    "schatten": (_run_schatten, 1e-9),
    "weighted": (_run_weighted, 1e-9),
    "three_lines": (_run_three_lines, 1e-8),
    "hirschman": (_run_hirschman, 1e-8),
    "product_power": (_run_product_power, 1e-6),
    "renyi_mono": (_run_renyi_mono, 1e-8),
    "dpi": (_run_dpi, 1e-8),
    "dpi_equality": (_run_dpi_equality, 1e-9),
    "witness": (_run_witness, 1e-6),
    "riesz_thorin": (_run_riesz_thorin, 1e-9),
}


def suite_names() -> tuple[str, ...]:
    return tuple(_SUITES)


def validate_config(cfg: SuiteConfig) -> None:
    if cfg.suite not in _SUITES:
        raise ConfigError(f"unknown suite {cfg.suite!r}; choose from {', '.join(_SUITES)}")
    if cfg.trials < 1:
        raise ConfigError(f"trials must be >= 1, got {cfg.trials}")
    if not cfg.dims or any(d < 1 for d in cfg.dims):
        raise ConfigError(f"dims must be positive integers, got {cfg.dims}")
    if cfg.seed < 0 or cfg.seed > 2**64 - 1:
        raise ConfigError("seed must fit in 64 unsigned bits")
    if cfg.p_grid is not None:
        for p in cfg.p_grid:
            if not p > 0:
                raise ConfigError(f"p_grid entries must be positive, got {p}")
        if cfg.suite in ("renyi_mono", "dpi", "dpi_equality") and any(
            p == 1.0 for p in cfg.p_grid
        ):
            raise ConfigError("divergence grids cannot contain p = 1")
        if cfg.suite == "renyi_mono" and sorted(cfg.p_grid) != list(cfg.p_grid):
            raise ConfigError("renyi_mono p_grid must be sorted ascending")
        if cfg.suite == "dpi":
            for p in cfg.p_grid:
                if not ((0.5 <= p < 1.0) or p > 1.0):
                    raise ConfigError(
                        f"dpi p_grid value {p} outside the asserted range [1/2,1) u (1,inf)"
                    )
        if cfg.suite == "hirschman":
            for t in cfg.p_grid:
                if not 0.0 < t < 1.0:
                    raise ConfigError(f"hirschman theta grid needs values in (0,1), got {t}")


def run_suite(cfg: SuiteConfig) -> VerificationReport:
    """Run one suite and aggregate its report."""
    validate_config(cfg)
    runner, default_tol = _SUITES[cfg.suite]
    tol = cfg.tolerance(default_tol)
    start = time.perf_counter()
    raw = runner(cfg)
    wall = time.perf_counter() - start
    records = []
    max_violation = 0.0
    for dim, trial, digest, checks in raw:
        worst = max((c["violation"] for c in checks), default=0.0)
        max_violation = max(max_violation, worst)
        records.append(
            {
                "dim": dim,
                "trial": trial,
                "digest": digest,
                "checks": checks,
                "violation": worst,
            }
        )
    config_echo = {
        "suite": cfg.suite,
        "dims": list(cfg.dims),
        "trials": cfg.trials,
        "seed": cfg.seed,
        "p_grid": None if cfg.p_grid is None else [float(p) for p in cfg.p_grid],
        "tolerance_overrides": dict(cfg.tolerance_overrides),
        "quadrature": {"half_width": cfg.quadrature.half_width, "step": cfg.quadrature.step},
    }
    return VerificationReport(
        suite=cfg.suite,
        version=REPORT_VERSION,
        config=config_echo,
        tolerance=tol,
        records=records,
        max_violation=max_violation,
        passed=max_violation <= tol,
        wall_time=wall,
    )
