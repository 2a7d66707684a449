import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qtexture.errors import NotHermitian, NotPSD
from qtexture.linalg import (
    DEFAULT_TOL,
    Tolerances,
    hermitian_eig,
    numerical_rank,
    psd_sqrt,
    support_projector,
    trace_norm,
)
from qtexture.states import sigma_alpha, textureless_state


def random_hermitian(d, rng, scale=1.0):
    g = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    return scale * (g + g.conj().T) / 2.0


def test_tolerances_must_be_positive():
    with pytest.raises(ValueError):
        Tolerances(psd_tol=0.0)
    with pytest.raises(ValueError):
        Tolerances(rank_rel_tol=-1e-12)


def test_eig_identity():
    w, v = hermitian_eig(np.eye(2))
    np.testing.assert_allclose(w, [1.0, 1.0])
    np.testing.assert_allclose(v.conj().T @ v, np.eye(2), atol=1e-12)


def test_eig_flat_projector_d2():
    flat = textureless_state(2).amplitudes
    w, _ = hermitian_eig(np.outer(flat, flat.conj()))
    np.testing.assert_allclose(w, [0.0, 1.0], atol=1e-12)


def test_eig_pauli_x():
    w, _ = hermitian_eig(np.array([[0.0, 1.0], [1.0, 0.0]]))
    np.testing.assert_allclose(w, [-1.0, 1.0], atol=1e-12)


def test_eig_rejects_non_hermitian():
    with pytest.raises(NotHermitian):
        hermitian_eig(np.array([[0.0, 1.0], [0.0, 0.0]]))


def test_eig_reconstruction_and_orthonormality():
    rng = np.random.default_rng(11)
    for _ in range(200):
        d = int(rng.integers(2, 7))
        m = random_hermitian(d, rng, scale=float(rng.uniform(0.1, 10.0)))
        w, v = hermitian_eig(m)
        assert np.all(np.diff(w) >= 0.0)
        recon = (v * w) @ v.conj().T
        norm = max(1.0, np.linalg.norm(m))
        assert np.linalg.norm(recon - m) <= 1e-9 * norm
        np.testing.assert_allclose(v.conj().T @ v, np.eye(d), atol=1e-9)


def test_trace_norm_zero_matrix():
    for d in (1, 2, 5):
        assert trace_norm(np.zeros((d, d))) == 0.0


def test_trace_norm_flat_minus_bell():
    from qtexture.states import bell_state

    flat = textureless_state(4).amplitudes
    psi = bell_state("-").amplitudes
    m = np.outer(flat, flat.conj()) - np.outer(psi, psi.conj())
    assert abs(trace_norm(m) - 2.0) < 1e-12


def test_trace_norm_flat_minus_fourier_mixture_is_two():
    from qtexture.checks import fourier_mixture

    rng = np.random.default_rng(5)
    flat = textureless_state(6).amplitudes
    for _ in range(20):
        n = int(rng.integers(2, 7))
        p = rng.exponential(size=n - 1)
        p /= p.sum()
        mix = fourier_mixture(6, p)
        m = np.outer(flat, flat.conj()) - mix.matrix
        assert abs(trace_norm(m) - 2.0) < 1e-10


def test_trace_norm_dominates_trace():
    # equality exactly when the matrix is PSD
    rng = np.random.default_rng(23)
    for _ in range(1000):
        d = int(rng.integers(2, 7))
        m = random_hermitian(d, rng)
        tn = trace_norm(m)
        tr = float(np.trace(m).real)
        assert tn >= abs(tr) - 1e-12
        g = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
        psd = g @ g.conj().T
        assert abs(trace_norm(psd) - np.trace(psd).real) <= 1e-9 * max(1.0, np.trace(psd).real)


@given(
    diag=st.lists(st.floats(min_value=0.0, max_value=100.0), min_size=1, max_size=5),
    c=st.floats(min_value=1e-3, max_value=1e3),
)
@settings(max_examples=60, deadline=None)
def test_psd_sqrt_scaling_property(diag, c):
    # sqrt(c*M) = sqrt(c)*sqrt(M) for c > 0
    m = np.diag(np.array(diag, dtype=complex))
    a = psd_sqrt(c * m)
    b = np.sqrt(c) * psd_sqrt(m)
    assert np.abs(a - b).max() <= 1e-9 * max(1.0, np.abs(b).max())


def test_psd_sqrt_analytic_cases():
    np.testing.assert_allclose(psd_sqrt(np.eye(3)), np.eye(3), atol=1e-12)
    flat = textureless_state(3).amplitudes
    p = np.outer(flat, flat.conj())
    np.testing.assert_allclose(psd_sqrt(p), p, atol=1e-12)
    np.testing.assert_allclose(psd_sqrt(np.diag([4.0, 9.0])), np.diag([2.0, 3.0]), atol=1e-12)


def test_psd_sqrt_squares_back():
    rng = np.random.default_rng(31)
    for _ in range(200):
        d = int(rng.integers(2, 7))
        g = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
        m = g @ g.conj().T
        r = psd_sqrt(m)
        assert np.abs(r - r.conj().T).max() <= 1e-12
        assert np.linalg.norm(r @ r - m) <= 1e-8 * max(1.0, np.linalg.norm(m))


def test_psd_sqrt_clips_small_negatives_only():
    m = np.diag([1.0, -0.5e-9])
    r = psd_sqrt(m)
    np.testing.assert_allclose(r, np.diag([1.0, 0.0]), atol=1e-12)
    with pytest.raises(NotPSD):
        psd_sqrt(np.diag([1.0, -1e-6]))


def test_support_projector_rank1_and_full():
    flat = textureless_state(2).amplitudes
    p = np.outer(flat, flat.conj())
    np.testing.assert_allclose(support_projector(p), p, atol=1e-12)
    np.testing.assert_allclose(support_projector(np.eye(4) / 4.0), np.eye(4), atol=1e-12)


def test_support_projector_sigma_one():
    # two eigenvalues 1/2 on the symmetric pair subspace, two zeros
    rho = sigma_alpha(1.0)
    p = support_projector(rho.matrix)
    v1 = np.zeros(4, dtype=complex)
    v1[0] = v1[3] = 1.0 / np.sqrt(2.0)
    v2 = np.zeros(4, dtype=complex)
    v2[1] = v2[2] = 1.0 / np.sqrt(2.0)
    expected = np.outer(v1, v1.conj()) + np.outer(v2, v2.conj())
    np.testing.assert_allclose(p, expected, atol=1e-10)
    assert numerical_rank(rho.matrix) == 2


def test_support_projector_idempotent_and_reproducing():
    rng = np.random.default_rng(47)
    for _ in range(200):
        d = int(rng.integers(2, 7))
        r = int(rng.integers(1, d + 1))
        g = rng.standard_normal((d, r)) + 1j * rng.standard_normal((d, r))
        m = g @ g.conj().T
        p = support_projector(m)
        assert np.abs(p @ p - p).max() <= 1e-9
        assert np.abs(p - p.conj().T).max() <= 1e-9
        assert np.abs(p @ m - m).max() <= 1e-8


def test_support_projector_zero_matrix_is_zero():
    assert np.abs(support_projector(np.zeros((3, 3)))).max() == 0.0


def test_rejects_nonfinite_entries():
    with pytest.raises(ValueError):
        hermitian_eig(np.array([[np.nan, 0.0], [0.0, 1.0]]))
    with pytest.raises(ValueError):
        trace_norm(np.array([[np.inf, 0.0], [0.0, 1.0]]))


def test_custom_tolerances_are_respected():
    loose = Tolerances(hermiticity_tol=1e-2)
    m = np.array([[1.0, 1e-4], [0.0, 1.0]])
    with pytest.raises(NotHermitian):
        hermitian_eig(m, DEFAULT_TOL)
    w, _ = hermitian_eig(m, loose)
    assert w.shape == (2,)
