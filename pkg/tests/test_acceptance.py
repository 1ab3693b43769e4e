"""Acceptance criteria; each test prints one PASS/FAIL line."""

import math
import time

import numpy as np
import pytest

from nlft import distributions as dist
from nlft import extraction as ex
from nlft import matrix as mc
from nlft import partitions as pt
from nlft import transforms as tf


@pytest.fixture
def report(capsys):
    def _report(number, ok, detail):
        with capsys.disabled():
            print(f"\nACCEPTANCE {number}: {'PASS' if ok else 'FAIL'} - {detail}")
        assert ok, detail

    return _report


def test_1_closed_form_equals_enumeration(report):
    pt._aq_histogram.cache_clear()
    t0 = time.perf_counter()
    bad = []
    for N in range(1, 13):
        for d in range(1, N + 1):
            closed = [pt.aq_closed(N, l, d) for l in range(N)]
            brute = [pt.aq_brute(N, l, d) for l in range(N)]
            if closed != brute or sum(closed) != math.comb(N, d):
                bad.append((N, d))
    elapsed = time.perf_counter() - t0
    report(1, not bad and elapsed < 30,
           f"aq_closed == aq_brute and row sums C(N,d) for N<=12; mismatches={bad}; {elapsed:.2f}s (<30s)")


def test_2_transform_extraction_of_aq(report):
    ex._f_n_coefficients.cache_clear()
    t0 = time.perf_counter()
    bad, worst = [], 0.0
    for N in range(1, 11):
        for d in range(1, N + 1):
            for l in range(N):
                got = ex.extract_aq_checked(N, l, d)
                worst = max(worst, got.residue)
                if got.value != pt.aq_brute(N, l, d):
                    bad.append((N, l, d))
    elapsed = time.perf_counter() - t0
    report(2, not bad and worst < 1e-6 and elapsed < 60,
           f"extract_aq == aq_brute for N<=10; max residue {worst:.2e} (<1e-6); {elapsed:.2f}s (<60s)")


def test_3_non_distinct_equivalence(report):
    ex._ap_contractions.cache_clear()
    t0 = time.perf_counter()
    bad = []
    for N in range(1, 7):
        for d in range(1, 5):
            brute = [pt.ap_brute(N, l, d) for l in range(N)]
            via_alt = [pt.ap_via_alt(N, l, d) for l in range(N)]
            extracted = [ex.extract_ap(N, l, d) for l in range(N)]
            if not brute == via_alt == extracted or sum(brute) != math.comb(N + d - 1, d):
                bad.append((N, d))
    elapsed = time.perf_counter() - t0
    report(3, not bad and elapsed < 60,
           f"ap_brute == ap_via_alt == extract_ap, sums C(N+d-1,d), N<=6, d<=4; mismatches={bad}; {elapsed:.2f}s (<60s)")


def test_4_multinomial_identity(report):
    rng = np.random.default_rng(4)
    worst_diff, worst_mass = 0.0, 0.0
    for N in range(1, 6):
        for _ in range(100):
            u = rng.dirichlet(np.ones(N))
            u[-1] = 1 - u[:-1].sum()
            for d in range(1, 5):
                transform = ex.p_alt_table(u, d)
                direct = ex.p_alt_direct_table(u, d)
                worst_diff = max(worst_diff, float(np.abs(transform - direct).max()))
                worst_mass = max(worst_mass, abs(transform.sum() - 1))
    report(4, worst_diff < 1e-9 and worst_mass < 1e-10,
           f"max |p_alt - p_alt_direct| = {worst_diff:.2e} (<1e-9); max |sum - 1| = {worst_mass:.2e} (<1e-10)")


def test_5_volume_beta_identity(report):
    z_scores = {}
    for d in (2, 3, 4):
        for k, l in enumerate((0.25, 0.5, 0.75)):
            est = dist.vol_mc(d, l, 0.02, 10**6, seed=500 + 10 * d + k)
            z_scores[(d, l)] = (est.estimate - dist.vol_formula(d, l)) / est.stderr
    mc_ok = all(abs(z) <= 3 for z in z_scores.values())

    sizes = [50, 100, 200, 400]
    limit_ok, finals = True, {}
    for d in (2, 3, 4):
        for lam in (0.3, 0.5):
            target = math.factorial(d) * dist.vol_formula(d, lam)
            errs = [
                abs(math.factorial(d) * pt.aq_closed(N, round(lam * N), d) / N ** (d - 1) - target)
                for N in sizes
            ]
            # non-increasing; d = 2 is exact at every N
            monotone = all(b <= a + 1e-12 for a, b in zip(errs, errs[1:]))
            finals[(d, lam)] = errs[-1]
            limit_ok &= monotone and errs[-1] < 0.05
    worst_z = max(abs(z) for z in z_scores.values())
    report(5, mc_ok and limit_ok,
           f"MC vs vol_formula max |z| = {worst_z:.2f} (<=3); scaled AQ errors monotone, "
           f"max final {max(finals.values()):.4f} (<0.05)")


def test_6_discrete_beta_convergence(report):
    sizes = [64, 128, 256, 512]
    ratios, c_ratios = [], []
    for a, b in ((0, 0), (1, 1), (2, 3)):
        for lam in (0.3, 0.5):
            errs = [r.abs_err for r in dist.convergence_table(a, b, lam, sizes)]
            ratios += [e2 / e1 for e1, e2 in zip(errs, errs[1:])]
        c_err = [abs(dist.c_norm(N, a, b) - 1) for N in sizes]
        c_ratios += [e2 / e1 for e1, e2 in zip(c_err, c_err[1:])]
    uniform = max(abs(dist.c_norm(N, 0, 0) - N / (N - 1)) for N in range(2, 600))
    ok = (all(0.3 <= r <= 0.7 for r in ratios + c_ratios) and uniform < 1e-12)
    report(6, ok,
           f"pmf error ratios in [{min(ratios):.3f}, {max(ratios):.3f}], c(N) ratios in "
           f"[{min(c_ratios):.3f}, {max(c_ratios):.3f}] (want [0.3, 0.7]); "
           f"|c(N) - N/(N-1)| <= {uniform:.1e} for a=b=0")


def test_7_series_consistency(report):
    sig = tf.Signal.constant(0.5, 1)
    dyson, volume = [], []
    for n in range(4):
        exact = tf.nlft_constant(0.5, n)
        dyson.append(mc.max_norm(tf.nlft_dyson(sig, n, 12, 2048) - exact))
        volume.append(mc.max_norm(tf.nlft_volume_expansion(0.5, n, 14, 2000) - exact))
    report(7, max(dyson) < 1e-6 and max(volume) < 1e-6,
           f"Dyson max err {max(dyson):.2e}, volume expansion max err {max(volume):.2e} (<1e-6)")


def test_8_structural_invariants(report):
    rng = np.random.default_rng(8)
    N = 16
    su2_ok, tan_err = True, 0.0
    for _ in range(100):
        u = tf.Signal(rng.normal(scale=2.0, size=N))
        g = tf.spectral_table("G_N", u)
        su2_ok &= all(mc.is_su2(g[n], 1e-10) for n in range(N))
        f_tan = tf.spectral_table("F_N", tf.tan_signal(u))
        tan_err = max(tan_err, float(np.abs(g.values - tf.cos_prefactor(u) * f_tan.values).max()))

    orth_err = 0.0
    for M in range(1, 65):
        up = np.array([[mc.e_delta(2 * l, n, M)[0, 0] for n in range(M)] for l in range(M)])
        dn = np.array([[mc.e_delta(-2 * l, n, M)[0, 0] for n in range(M)] for l in range(M)])
        top = up @ dn.T / M
        bottom = up.conj() @ dn.conj().T / M
        for block in (top, bottom):
            orth_err = max(orth_err, float(np.abs(block - np.eye(M)).max()))
    report(8, su2_ok and tan_err < 1e-12 and orth_err < 1e-12,
           f"G_N in SU(2) at 1e-10: {su2_ok}; tan relation err {tan_err:.1e} (<1e-12); "
           f"DFT orthogonality err {orth_err:.1e} (<1e-12) for N<=64")
