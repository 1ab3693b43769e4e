import time

import numpy as np
import pytest

from nlft import matrix as mc
from nlft import transforms as tf
from nlft.partitions import aq_brute
from nlft.extraction import f_n_poly

from conftest import max_abs

I = np.eye(2)


def test_signal_flags():
    assert tf.Signal([1.0, 2.0]).real_valued
    assert not tf.Signal([1.0, 2j]).real_valued
    assert tf.Signal([3.0]).N == 1
    with pytest.raises(ValueError):
        tf.Signal([])
    with pytest.raises(ValueError):
        tf.g_n(tf.Signal([1.0, 1j]), 0)


@pytest.mark.parametrize("n", range(6))
def test_constant_zero_is_identity(n):
    assert max_abs(tf.nlft_constant(0, n) - I) < 1e-15


def test_constant_at_zero_frequency_is_rotation():
    assert max_abs(tf.nlft_constant(0.9, 0) - mc.rotation(0.9)) < 1e-15


def test_constant_matches_fine_step_product():
    ref = tf.nlft_constant(0.5, 2)
    step = tf.nlft_step(tf.Signal.constant(0.5, 4096), 2)
    assert max_abs(step - ref) < 1e-6


def test_step_zero_signal():
    assert max_abs(tf.nlft_step(np.zeros(5), 3) - I) < 1e-14


@pytest.mark.parametrize("n", [-2, 0, 1, 5])
def test_step_single_sample_equals_constant(n):
    assert max_abs(tf.nlft_step([0.8], n) - tf.nlft_constant(0.8, n)) == 0


def test_step_is_su2_for_complex_samples(rng):
    u = rng.normal(size=12) + 1j * rng.normal(size=12)
    assert mc.is_su2(tf.nlft_step(u, 3), 1e-12)


def test_step_self_convergence_on_smooth_profile():
    n = 1
    prof = lambda x: np.sin(2 * np.pi * x)
    vals = {N: tf.nlft_step(tf.Signal.sampled(prof, N), n) for N in (64, 128, 256, 512)}
    drift = [max_abs(vals[2 * N] - vals[N]) for N in (64, 128, 256)]
    for a, b in zip(drift, drift[1:]):
        assert 1.6 <= a / b <= 2.4


def test_step_approaches_constant_monotonically():
    # constant steps commute exactly, so the error is pure round-off
    errs = [max_abs(tf.nlft_step(tf.Signal.constant(0.7, N), 3) - tf.nlft_constant(0.7, 3))
            for N in (1, 4, 16, 64)]
    assert max(errs) < 1e-12


def test_dyson_order_zero():
    assert max_abs(tf.nlft_dyson([0.3], 1, 0, 16) - I) == 0


def test_dyson_matches_closed_form():
    out = tf.nlft_dyson(tf.Signal.constant(0.3, 1), 1, 12, 2048)
    assert max_abs(out - tf.nlft_constant(0.3, 1)) < 1e-6


@pytest.mark.parametrize("n", [0, 1, 2])
def test_dyson_terms_bounded_by_simplex_volume(n):
    from math import factorial

    # at n = 0 the bound is attained; allow for the O(h**2) quadrature error
    u = 0.9
    terms = tf.dyson_terms([u], n, 8, 8192)
    for d, term in enumerate(terms, 1):
        assert max_abs(term) <= u**d / factorial(d) * (1 + 1e-6)


def test_dyson_converges_to_step_for_varying_signal():
    sig = tf.Signal([0.4, -0.2, 0.7, 0.1])
    coarse = max_abs(tf.nlft_dyson(sig, 2, 14, 1025) - tf.nlft_step(sig, 2))
    fine = max_abs(tf.nlft_dyson(sig, 2, 14, 4097) - tf.nlft_step(sig, 2))
    assert fine < 1e-6
    assert 10 < coarse / fine < 22  # second order in the grid spacing


def test_volume_expansion_trivial():
    assert max_abs(tf.nlft_volume_expansion(0.0, 3, 5, 100) - I) == 0
    first = tf.volume_expansion_terms(0.7, 0, 1, 100)[0]
    assert max_abs(first - 0.7 * mc.J) < 1e-14


@pytest.mark.parametrize("n", range(4))
def test_volume_expansion_matches_closed_form(n):
    out = tf.nlft_volume_expansion(0.5, n, 14, 2000)
    assert max_abs(out - tf.nlft_constant(0.5, n)) < 1e-6


def test_f_n_trivial():
    assert max_abs(tf.f_n(np.zeros(4), 2) - I) == 0
    u0 = 0.3 - 0.2j
    assert max_abs(tf.f_n([u0], 0) - np.array([[1, u0], [-np.conj(u0), 1]])) == 0
    with pytest.raises(IndexError):
        tf.f_n(np.zeros(4), 4)


def test_f_n_matches_partition_expansion_for_constant_signal():
    N, u = 6, 0.37
    for n in range(N):
        expected = I.astype(complex)
        for d in range(1, N + 1):
            coef = sum(aq_brute(N, l, d) * mc.e_delta(-2 * l, n, N) for l in range(N))
            expected = expected + (u / N) ** d * coef @ mc.j_power(d)
        assert max_abs(tf.f_n(tf.Signal.constant(u, N), n) - expected) < 1e-14


def test_f_n_determinant(rng):
    u = rng.normal(size=10) + 1j * rng.normal(size=10)
    for n in range(10):
        assert abs(mc.det(tf.f_n(u, n)) - tf.det_f_n_expected(u)) < 1e-12 * tf.det_f_n_expected(u)


def test_g_n_zero_signal():
    for n in range(5):
        assert max_abs(tf.g_n(np.zeros(5), n) - I) == 0
        assert max_abs(tf.g_n_split(np.zeros(5), n) - (-1) ** n * I) < 1e-14


def test_g_n_split_form_differs_by_sign(rng):
    u = rng.normal(size=9)
    for n in range(9):
        assert max_abs(tf.g_n_split(u, n) - (-1) ** n * tf.g_n(u, n)) < 1e-12


def test_tan_relation(rng):
    for _ in range(20):
        u = tf.Signal(rng.normal(scale=2, size=16))
        for n in range(16):
            rhs = tf.cos_prefactor(u) * tf.f_n(tf.tan_signal(u), n)
            assert max_abs(tf.g_n(u, n) - rhs) < 1e-12


def test_f_n_and_g_n_agree_to_first_order():
    prof = lambda x: np.cos(2 * np.pi * x) + 0.5
    gap = [
        max(max_abs(tf.f_n(tf.Signal.sampled(prof, N), n) - tf.g_n(tf.Signal.sampled(prof, N), n))
            for n in range(3))
        for N in (32, 64, 128, 256)
    ]
    for a, b in zip(gap, gap[1:]):
        assert 1.6 <= a / b <= 2.4


def test_spectral_table_zero_signal():
    seq = tf.spectral_table("F_N", np.zeros(7))
    assert seq.indices == tuple(range(7))
    assert max_abs(seq.values - I) == 0


@pytest.mark.parametrize("kind,fn", [("F_N", tf.f_n), ("G_N", tf.g_n), ("step", tf.nlft_step)])
def test_spectral_table_matches_pointwise(kind, fn, rng):
    u = rng.normal(size=8)
    seq = tf.spectral_table(kind, u)
    for n in range(8):
        assert max_abs(seq[n] - fn(u, n)) < 1e-13


def test_spectral_table_rejects_unknown_kind():
    with pytest.raises(ValueError):
        tf.spectral_table("nope", [1.0])


def test_spectral_table_fast(rng):
    u = rng.normal(size=256)
    t0 = time.perf_counter()
    tf.spectral_table("F_N", u)
    tf.spectral_table("G_N", u)
    assert time.perf_counter() - t0 < 1.0


def test_power_series_coefficients_match_partition_sum():
    N = 7
    for n in range(N):
        poly = f_n_poly(N, n, N)
        for d in range(1, N + 1):
            expected = sum(aq_brute(N, l, d) * mc.e_delta(-2 * l, n, N) for l in range(N))
            expected = expected @ mc.j_power(d) / N**d
            assert max_abs(poly[d] - expected) < 1e-13
