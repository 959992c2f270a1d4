import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from chiralret.core import LFC, MCP3, VACUUM, Medium, TransferConfig, ValidationError, Variant, make_molecule
from chiralret.greens import SeparationVector
from chiralret.oracle import (
    CheckResult,
    ConsistencyReport,
    OracleError,
    causal_response,
    curie_check,
    curl_fd_check,
    free_space_reduction,
    helmholtz_residual,
    limit_consistency,
    pole_quadrature_check,
    run_validation,
    trace_vs_closed,
)

from .conftest import MERCURY, WATER

OMEGA = MCP3.omega0
RV = SeparationVector.along(50e-9, (1, 2, 2))


@pytest.mark.parametrize("med", [VACUUM, WATER, MERCURY])
def test_curl_fd_second_order(med):
    res = curl_fd_check(RV, OMEGA, med, RV.r * 1e-2)
    for pair, order in res.orders.items():
        assert abs(order - 2) < 0.1, pair
        assert_allclose(res.errors_half[pair] / res.errors[pair], 0.25, atol=0.02)


def test_curl_fd_step_guard():
    with pytest.raises(ValidationError):
        curl_fd_check(RV, OMEGA, VACUUM, RV.r / 10)


@pytest.mark.parametrize("med", [VACUUM, WATER, MERCURY, Medium(2.0 + 0.1j, 1.5 + 0.05j)])
def test_helmholtz_residual_converges(med):
    r1 = helmholtz_residual(RV, OMEGA, med, RV.r * 1e-2)
    r2 = helmholtz_residual(RV, OMEGA, med, RV.r * 5e-3)
    assert math.log2(r1 / r2) >= 1.9
    assert helmholtz_residual(RV, OMEGA, med, RV.r * 1e-4) < 1e-6


def test_trace_vs_closed_identifies_default_variant():
    rep = trace_vs_closed()
    assert rep.matched_variant == Variant.PRODUCT_CONSISTENT.value
    assert rep.passed
    worst = {c.variant: c for c in rep.checks if c.name.startswith("trace_vs_closed")}
    assert worst["product_consistent"].max_rel_error <= 1e-9
    assert worst["as_printed"].informative and not worst["as_printed"].passed


def test_trace_vs_closed_is_deterministic():
    assert trace_vs_closed().to_csv() == trace_vs_closed().to_csv()


def test_trace_vs_closed_without_match_is_fatal():
    with pytest.raises(OracleError):
        trace_vs_closed(tol=0.0)


def test_free_space_reduction():
    res = free_space_reduction()
    assert res.passed and res.max_rel_error <= 1e-12


@pytest.mark.parametrize("med,lfc", [(VACUUM, LFC.OFF), (WATER, LFC.ONSAGER),
                                     (MERCURY, LFC.ONSAGER), (Medium.from_index(2.0), LFC.OFF)])
def test_limit_consistency(med, lfc):
    rep = limit_consistency(TransferConfig(MCP3, MCP3, 1e-9, med, lfc))
    assert rep.passed
    names = [c.name for c in rep.checks]
    lossless = med.eps.imag == 0 and med.mu.imag == 0
    assert any(n.startswith("limit_far") for n in names) == lossless


def test_limit_consistency_achiral():
    achiral = make_molecule("achiral", 2e-31, 3e-32, 0.0, "left", OMEGA)
    rep = limit_consistency(TransferConfig(achiral, achiral, 1e-9))
    assert rep.passed


@pytest.mark.parametrize("med", [VACUUM, WATER])
def test_curie(med):
    assert curie_check((1e-9, 1e-6), OMEGA, 16, med) <= 1e-12


def test_pole_identity_power0():
    eps = (0.02 * OMEGA, 0.01 * OMEGA, 0.005 * OMEGA)
    res = pole_quadrature_check(OMEGA, eps, 50 * OMEGA, MERCURY, 0)
    assert res.extrapolated_deviation <= 1e-3
    assert res.monotone
    assert res.tail_variation <= 1e-3


def test_pole_identity_deviation_shrinks_with_epsilon():
    res = pole_quadrature_check(OMEGA, (0.04 * OMEGA, 0.02 * OMEGA), 50 * OMEGA, WATER, 2)
    assert res.deviations[1] < res.deviations[0]


def test_causal_response_matches_medium_at_resonance():
    G = causal_response(OMEGA, MERCURY)
    assert np.isfinite(G(OMEGA)) and G(OMEGA) != 0


@pytest.mark.parametrize("kw", [dict(med=Medium(1.96, 1.0)), dict(omega_max=10 * OMEGA),
                                dict(epsilons=(0.01 * OMEGA, 0.02 * OMEGA)),
                                dict(epsilons=(0.01 * OMEGA,)), dict(power=3)])
def test_pole_check_validation(kw):
    args = dict(omega_D=OMEGA, epsilons=(0.02 * OMEGA, 0.01 * OMEGA), omega_max=50 * OMEGA,
                med=MERCURY)
    args.update(kw)
    with pytest.raises(ValidationError):
        pole_quadrature_check(**args)


def test_report_semantics():
    rep = ConsistencyReport()
    rep.add(CheckResult("a", 0.0, 1.0, True))
    rep.add(CheckResult("b", 2.0, 1.0, False, informative=True))
    assert rep.passed
    assert "INFO  b" in rep.to_text()
    rep.add(CheckResult("c", 2.0, 1.0, False))
    assert not rep.passed
    lines = rep.to_csv().splitlines()
    assert lines[0] == "check,max_rel_error,tolerance,passed,informative,variant"
    assert lines[1] == "a,0.00000000000e+00,1.00000000000e+00,1,0,"


def test_run_validation_passes():
    rep = run_validation()
    failing = [c.name for c in rep.checks if not c.passed and not c.informative]
    assert rep.passed, failing
    assert rep.matched_variant == Variant.PRODUCT_CONSISTENT.value
    runtime = [c for c in rep.checks if c.name == "runtime_s"][0]
    assert runtime.max_rel_error < 60
