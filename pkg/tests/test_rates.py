import cmath
import math
from itertools import product

import numpy as np
import pytest
from numpy.testing import assert_allclose

from chiralret.core import (
    CODATA,
    LFC,
    MCP3,
    VACUUM,
    DegenerateInputError,
    Medium,
    TransferConfig,
    ValidationError,
    Variant,
    make_molecule,
)
from chiralret.greens import SeparationVector
from chiralret.rates import (
    DISC_LABELS,
    LABELS,
    ND_LABELS,
    DipoleVectors,
    closed_parts,
    free_space_gammas,
    matrix_element,
    medium_formula_gammas,
    rate_prefactor,
    rates_LR,
    reduced_gammas_closed,
    reduced_gammas_trace,
    reduced_rate_contribution,
    reduced_rate_total,
    trace_scan,
)

from .conftest import MERCURY, WATER

OMEGA = MCP3.omega0
K0 = OMEGA / CODATA.c
ACHIRAL = make_molecule("achiral", 2.44e-31, 3.31e-32, 0.0, "left", OMEGA)
GRID_MEDIA = [VACUUM, WATER, Medium.from_index(1.56 + 8e-6j), Medium.from_index(1.44 + 0.07j),
              MERCURY]


def test_rate_prefactor_forms_agree():
    k = CODATA
    assert_allclose(rate_prefactor(k), 2 * math.pi / (9 * k.eps0**2 * k.hbar**2), rtol=1e-14)


def test_dipole_vector_conventions():
    DipoleVectors([1e-31, 0, 0], [0, 1j * 1e-32, 0])
    with pytest.raises(ValidationError):
        DipoleVectors([1j * 1e-31, 0, 0], [0, 0, 0])
    with pytest.raises(ValidationError):
        DipoleVectors([1e-31, 0, 0], [1e-32, 0, 0])
    with pytest.raises(ValidationError):
        DipoleVectors([1e-31, 0], [0, 0, 0])


def test_matrix_element_ee_collinear_vacuum():
    d = 2.44e-31
    r = 7e-9
    A = D = DipoleVectors([0, 0, d], [0, 0, 0])
    rv = SeparationVector.along(r, (0, 0, 1))
    kr = K0 * r
    expected = -d * d * cmath.exp(1j * kr) * (2 - 2j * kr) / (4 * math.pi * CODATA.eps0 * r**3)
    assert_allclose(matrix_element("e", "e", A, D, rv, OMEGA, VACUUM), expected, rtol=1e-12)


def test_matrix_element_mixed_terms_cancel_for_parallel_dipoles():
    # d_e of each molecule parallel to d_m of the other: e . (u x v) = 0
    A = DipoleVectors([1e-31, 0, 0], [0, 2j * 1e-32, 0])
    D = DipoleVectors([0, 3e-31, 0], [4j * 1e-32, 0, 0])
    rv = SeparationVector.along(10e-9, (1, 2, 3))
    total = (matrix_element("e", "m", A, D, rv, OMEGA, VACUUM)
             + matrix_element("m", "e", A, D, rv, OMEGA, VACUUM))
    ref = abs(matrix_element("e", "e", A, D, rv, OMEGA, VACUUM))
    assert abs(total) <= 1e-14 * ref


def test_matrix_element_achiral_acceptor():
    A = DipoleVectors([1e-31, 2e-31, 0], [0, 0, 0])
    D = DipoleVectors([0, 3e-31, 1e-31], [4j * 1e-32, 0, 1j * 1e-32])
    rv = SeparationVector.along(10e-9, (1, 2, 3))
    for lam_D in LABELS:
        assert matrix_element("m", lam_D, A, D, rv, OMEGA, WATER, LFC.ONSAGER) == 0


def test_matrix_element_rejects_bad_omega():
    A = DipoleVectors([1e-31, 0, 0], [0, 0, 0])
    with pytest.raises(ValidationError):
        matrix_element("e", "e", A, A, SeparationVector.along(1e-9), 0.0, VACUUM)


def test_eeee_term_near_zone():
    cfg = TransferConfig(MCP3, MCP3, 1e-9)
    term = reduced_rate_contribution(("e", "e", "e", "e"), cfg)
    lead = 3 * MCP3.d_e**4 / (36 * math.pi * CODATA.eps0**2 * CODATA.hbar**2 * 1e-9**6)
    assert abs(term.imag) <= 1e-12 * abs(term)
    assert_allclose(term.real, lead, rtol=1e-3)


@pytest.mark.parametrize("labels", [("e", "m", "e", "e"), ("m", "e", "m", "m"),
                                    ("e", "e", "e", "m"), ("m", "m", "m", "e")])
def test_single_rotatory_terms_vanish_in_free_space(labels):
    cfg = TransferConfig(MCP3, MCP3, 50e-9)
    nd, _ = reduced_gammas_trace(cfg)
    assert abs(reduced_rate_contribution(labels, cfg)) <= 1e-12 * nd


@pytest.mark.parametrize("med", [VACUUM, WATER, MERCURY])
def test_label_swap_conjugates_and_total_is_real(med):
    cfg = TransferConfig(MCP3, MCP3, 30e-9, med, LFC.ONSAGER)
    for l1, l2, l3, l4 in product(LABELS, repeat=4):
        a = reduced_rate_contribution((l1, l2, l3, l4), cfg)
        b = reduced_rate_contribution((l2, l1, l4, l3), cfg)
        assert_allclose(a, np.conj(b), rtol=1e-12, atol=1e-12 * abs(a))
    total = reduced_rate_total(cfg)
    nd, disc = reduced_gammas_trace(cfg)
    assert abs(total.imag) <= 1e-12 * abs(total)
    assert_allclose(total.real, nd + disc, rtol=1e-12)


def test_label_sets():
    assert len(ND_LABELS) == 4 and len(DISC_LABELS) == 4
    assert not set(ND_LABELS) & set(DISC_LABELS)


def test_trace_achiral_pair_has_no_discrimination():
    _, disc = reduced_gammas_trace(TransferConfig(ACHIRAL, ACHIRAL, 5e-9, WATER, LFC.ONSAGER))
    assert disc == 0


def test_trace_far_zone_vacuum():
    nd, disc = reduced_gammas_trace(TransferConfig(MCP3, MCP3, 1e-6))
    assert_allclose(disc / nd, 0.068, atol=5e-4)


def test_trace_acceptor_flip():
    cfg = TransferConfig(MCP3, MCP3, 20e-9, MERCURY, LFC.ONSAGER)
    nd, disc = reduced_gammas_trace(cfg)
    nd2, disc2 = reduced_gammas_trace(cfg.replace(acceptor=MCP3.enantiomer()))
    assert nd2 == nd and disc2 == -disc


@pytest.mark.parametrize("med", GRID_MEDIA)
@pytest.mark.parametrize("lfc", list(LFC))
def test_trace_matches_product_consistent(med, lfc):
    for r in (1e-9, 1e-8, 1e-7, 1e-6):
        cfg = TransferConfig(MCP3, MCP3, r, med, lfc)
        nd_t, disc_t = reduced_gammas_trace(cfg)
        nd_c, disc_c = reduced_gammas_closed(cfg)
        assert abs(nd_c - nd_t) <= 1e-9 * nd_t
        assert abs(disc_c - disc_t) <= 1e-9 * nd_t


def test_as_printed_differs_in_far_zone():
    cfg = TransferConfig(MCP3, MCP3, 1e-6, WATER, LFC.ONSAGER, Variant.AS_PRINTED)
    nd_p, _ = reduced_gammas_closed(cfg)
    nd_t, _ = reduced_gammas_trace(cfg)
    assert abs(nd_p / nd_t - 1) > 1e-3


@pytest.mark.parametrize("variant", list(Variant))
def test_vacuum_closed_form_is_free_space(variant):
    for r in (1e-9, 1e-7, 1e-5):
        cfg = TransferConfig(MCP3, MCP3, r, variant=variant)
        assert reduced_gammas_closed(cfg) == free_space_gammas(cfg)


def test_medium_formula_reduces_to_free_space():
    for r in (1e-9, 1e-8, 1e-7, 1e-6):
        cfg = TransferConfig(MCP3, MCP3, r)
        assert_allclose(medium_formula_gammas(cfg), free_space_gammas(cfg), rtol=1e-12)


def test_water_lfc_far_zone():
    rb = rates_LR(TransferConfig(MCP3, MCP3, 1e-3, WATER, LFC.ONSAGER))
    assert_allclose(rb.S, 0.092, atol=1e-3)


def test_attenuation_factor():
    def att(im):
        return closed_parts(TransferConfig(MCP3, MCP3, 1e-7, Medium.from_index(1.4 + im * 1j))).log_att
    assert_allclose(np.exp(att(0.2)), np.exp(att(0.1)) ** 2, rtol=1e-14)
    assert_allclose(att(0.1), -2 * 0.1 * K0 * 1e-7, rtol=1e-14)


def test_rates_LR_examples():
    near = rates_LR(TransferConfig(MCP3, MCP3, 1e-9))
    far = rates_LR(TransferConfig(MCP3, MCP3, 1e-6))
    assert_allclose(near.S, 0.0353, atol=1e-4)
    assert_allclose(far.S, 0.0682, atol=1e-4)
    assert_allclose(far.S / near.S, 1.93, atol=5e-3)
    q = (MCP3.d_m / MCP3.d_e) ** 2
    assert_allclose(near.S, 2 * 0.98**2 * q / (1 + q * q), rtol=1e-3)
    assert_allclose(near.gamma_L + near.gamma_R, 2 * near.gamma_nd, rtol=1e-15)


def test_rates_LR_trace_method():
    cfg = TransferConfig(MCP3, MCP3, 3e-8, WATER, LFC.ONSAGER)
    assert_allclose(rates_LR(cfg, "trace").S, rates_LR(cfg).S, rtol=1e-9)
    with pytest.raises(ValueError):
        rates_LR(cfg, "bogus")


def test_rates_LR_degenerate():
    dark = make_molecule("dark", 0.0, 0.0, 0.0, "left", OMEGA)
    with pytest.raises(DegenerateInputError):
        rates_LR(TransferConfig(dark, MCP3, 1e-9))


def test_underflowed_rates_keep_finite_S():
    rb = rates_LR(TransferConfig(MCP3, MCP3, 1e-4, MERCURY, LFC.ONSAGER))
    assert rb.gamma_nd == 0.0
    assert math.isfinite(rb.S) and -1 <= rb.S <= 1


@pytest.mark.parametrize("med", [VACUUM, WATER, MERCURY])
@pytest.mark.parametrize("lfc", list(LFC))
def test_trace_scan_matches_dense_trace(med, lfc):
    cfg = TransferConfig(MCP3, MCP3, 1e-9, med, lfc)
    r = np.array([1e-9, 2e-8, 3e-7])
    nd, disc = trace_scan(cfg, r)
    for i, ri in enumerate(r):
        nd_t, disc_t = reduced_gammas_trace(cfg.replace(r=float(ri)))
        assert abs(nd[i] - nd_t) <= 1e-12 * nd_t
        assert abs(disc[i] - disc_t) <= 1e-12 * nd_t
