import numpy as np
import pytest

from schattenkit import (
    ConvergenceFailureError,
    NonHermitianError,
    SingularPowerError,
    hermitian_eigen,
    matrix_power,
    polar,
    singular_values,
)
from schattenkit.spectral import support_projection

from conftest import ginibre, haar_unitary, wishart


def test_eigen_diagonal():
    dec = hermitian_eigen(np.diag([3.0, 4.0]))
    assert np.allclose(dec.eigenvalues, [4.0, 3.0])
    # unitary is a permutation
    assert np.allclose(np.abs(dec.unitary), [[0, 1], [1, 0]])


def test_eigen_identity():
    dec = hermitian_eigen(np.eye(3))
    assert np.allclose(dec.eigenvalues, [1.0, 1.0, 1.0])


def test_eigen_reassembly(rng):
    a = wishart(4, rng)
    a = (a + a.conj().T) / 2
    dec = hermitian_eigen(a)
    scale = np.abs(dec.eigenvalues).max()
    assert np.abs(dec.reassemble() - a).max() <= 1e-10 * scale
    assert np.abs(dec.unitary @ dec.unitary.conj().T - np.eye(4)).max() <= 1e-10
    assert np.all(np.diff(dec.eigenvalues) <= 0)


def test_eigen_rejects_non_hermitian(rng):
    x = ginibre(3, rng)
    x[0, 1] += 1.0
    with pytest.raises(NonHermitianError):
        hermitian_eigen(x)


def test_power_identity_complex_exponent():
    out = matrix_power(np.eye(2), 0.5 + 2j)
    assert np.abs(out - np.eye(2)).max() < 1e-14


def test_power_sqrt_diagonal():
    out = matrix_power(np.diag([4.0, 9.0]), 0.5)
    assert np.abs(out - np.diag([2.0, 3.0])).max() < 1e-12


def test_imaginary_power_unitary_on_support(rng):
    # oracle: support projection from eigenvalue thresholding
    a = wishart(4, rng)
    a = (a + a.conj().T) / 2
    for t in (0.3, -1.7):
        u = matrix_power(a, 1j * t)
        p_supp = support_projection(a)
        assert np.abs(u @ u.conj().T - p_supp).max() <= 1e-10


def test_imaginary_power_singular_support(rng):
    # rank-2 PSD in dimension 4: the imaginary power is a partial isometry
    g = ginibre(4, rng)[:, :2]
    a = g @ g.conj().T
    u = matrix_power(a, 0.7j)
    p_supp = support_projection(a)
    assert np.abs(u @ u.conj().T - p_supp).max() <= 1e-10


def test_negative_power_of_singular_raises(rng):
    g = ginibre(3, rng)[:, :2]
    a = g @ g.conj().T
    with pytest.raises(SingularPowerError):
        matrix_power(a, -0.5)
    with pytest.raises(SingularPowerError):
        matrix_power(a, -1.0 + 2j)


def test_positive_fractional_power_of_singular_ok(rng):
    g = ginibre(3, rng)[:, :2]
    a = g @ g.conj().T
    root = matrix_power(a, 0.5)
    assert np.abs(root @ root - a).max() <= 1e-10 * np.abs(a).max()


def test_power_group_law(rng):
    a = wishart(4, rng, ridge=0.1)
    a = (a + a.conj().T) / 2
    z1, z2 = 0.4 - 0.9j, -0.7 + 0.2j
    lhs = matrix_power(a, z1) @ matrix_power(a, z2)
    rhs = matrix_power(a, z1 + z2)
    assert np.abs(lhs - rhs).max() <= 1e-9 * np.abs(rhs).max()


def test_power_one_is_identity_map(rng):
    a = wishart(5, rng)
    a = (a + a.conj().T) / 2
    assert np.abs(matrix_power(a, 1.0) - a).max() <= 1e-10 * np.abs(a).max()


def test_power_rejects_non_psd():
    with pytest.raises(ValueError):
        matrix_power(np.diag([1.0, -1.0]), 0.5)


def test_singular_values_nilpotent():
    s = singular_values(np.array([[0.0, 2.0], [0.0, 0.0]]))
    assert np.allclose(s, [2.0, 0.0])


def test_singular_values_unitary(rng):
    u = haar_unitary(4, rng)
    assert np.abs(singular_values(u) - 1.0).max() < 1e-12


def test_singular_values_against_gram_oracle(rng):
    # independent route: eigenvalues of x*x from the Hermitian eigensolver
    x = ginibre(5, rng)
    gram = x.conj().T @ x
    oracle = np.sqrt(np.clip(np.linalg.eigvalsh((gram + gram.conj().T) / 2), 0, None))[::-1]
    assert np.abs(singular_values(x) - oracle).max() <= 1e-10


def test_singular_values_adjoint_and_unitary_invariance(rng):
    x = ginibre(4, rng)
    u, v = haar_unitary(4, rng), haar_unitary(4, rng)
    assert np.abs(singular_values(x) - singular_values(x.conj().T)).max() <= 1e-10
    assert np.abs(singular_values(u @ x @ v) - singular_values(x)).max() <= 1e-10


def test_polar_psd_input(rng):
    a = wishart(3, rng)
    a = (a + a.conj().T) / 2
    u, absx = polar(a)
    assert np.abs(absx - a).max() <= 1e-10 * np.abs(a).max()
    assert np.abs(u - support_projection(a)).max() <= 1e-8


def test_polar_unitary_input(rng):
    v = haar_unitary(4, rng)
    u, absx = polar(v)
    assert np.abs(u - v).max() <= 1e-10
    assert np.abs(absx - np.eye(4)).max() <= 1e-10


def test_polar_reassembly_and_partial_isometry(rng):
    x = ginibre(5, rng)
    u, absx = polar(x)
    assert np.abs(x - u @ absx).max() <= 1e-10 * np.abs(x).max()
    # u*u is the projection onto the support of |x|
    p = u.conj().T @ u
    assert np.abs(p @ p - p).max() <= 1e-10
    assert np.abs(p @ absx - absx).max() <= 1e-10 * np.abs(absx).max()


def test_polar_rank_deficient(rng):
    g = ginibre(4, rng)[:, :2]
    x = g @ ginibre(4, rng)[:2, :]
    u, absx = polar(x)
    assert np.abs(x - u @ absx).max() <= 1e-10 * np.abs(x).max()
    p = u.conj().T @ u
    assert np.abs(p - support_projection(absx)).max() <= 1e-8


def test_rejects_nonfinite():
    with pytest.raises(ValueError):
        singular_values(np.array([[np.nan, 0.0], [0.0, 1.0]]))
    with pytest.raises(ValueError):
        hermitian_eigen(np.array([[np.inf, 0.0], [0.0, 1.0]]))
