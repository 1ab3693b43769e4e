"""Periodic nonlinear Fourier transform, its discretizations and the
alternating-partition and beta-distribution identities they encode."""

from .distributions import (
    BetaShape,
    DiscreteBetaSpec,
    aq_beta_limit_check,
    beta_fn,
    beta_pdf,
    c_norm,
    convergence_table,
    discrete_beta_pmf,
    vol_formula,
    vol_mc,
)
from .extraction import (
    d_jet,
    extract_aq,
    extract_ap,
    f_n_poly,
    g_n_multipoly,
    idft_matrix,
    p_alt,
    p_alt_direct,
)
from .matrix import e_delta, e_matrix, exp_traceless, is_su2, j_power, rotation
from .partitions import (
    alt,
    ap_brute,
    ap_via_alt,
    aq_brute,
    aq_closed,
    aq_hat,
    odd_count,
    parity,
)
from .transforms import (
    Signal,
    SpectralSequence,
    f_n,
    g_n,
    nlft_constant,
    nlft_dyson,
    nlft_step,
    nlft_volume_expansion,
    spectral_table,
)

__version__ = "0.1.0"
