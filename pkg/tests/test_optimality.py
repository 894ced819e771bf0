"""Tests for the optimality certificate and the independent optimizer."""

import math

import numpy as np
import pytest

from mirrorclone.cloners import FIDELITY_MINIMUM_ANGLE, mpcc_choi, mpcc_fidelity, trace_over_outputs
from mirrorclone.fidelity import PriorDistribution, score_operator
from mirrorclone.optimality import (
    OptimalityCertificate,
    certificate,
    choi_pattern_defect,
    lagrange_operator,
    optimize_map,
    proportionality_defect,
    random_trace_preserving_choi,
)

GRID = np.concatenate([np.linspace(0.0, math.pi, 41), [FIDELITY_MINIMUM_ANGLE]])


def test_lagrange_operator_is_half_fidelity_identity():
    for theta in (0.0, 0.6, FIDELITY_MINIMUM_ANGLE, math.pi / 2, 2.5, math.pi):
        lam = lagrange_operator(mpcc_choi(theta), score_operator(PriorDistribution.mirror(theta)))
        want = 0.5 * mpcc_fidelity(theta) * np.eye(2)
        assert np.abs(lam - want).max() < 1e-12


def test_lagrange_operator_validation():
    with pytest.raises(ValueError):
        lagrange_operator(np.eye(4), np.eye(8))


def test_proportionality_defect():
    assert proportionality_defect(3.7 * np.eye(2)) == 0.0
    assert abs(proportionality_defect(np.diag([1.0, 2.0])) - 0.5) < 1e-15


def test_certificate_closed_spectrum_at_equator():
    cert = certificate(math.pi / 2)
    d1, d2, d3, d4 = cert.delta_closed_form
    s = math.sqrt(2.0)
    assert abs(d1 - s / 8.0) < 1e-12
    assert abs(d2 - s / 8.0) < 1e-12
    assert abs(d3 - s / 4.0) < 1e-12
    assert abs(d4) < 1e-12
    assert cert.psd_ok and cert.saturation_ok


def test_certificate_pole_is_tight():
    cert = certificate(0.0)
    assert cert.trace_gap == 0.0
    assert abs(cert.lambda_scalar - 0.5) < 1e-12  # F = 1 there
    assert min(cert.delta_spectrum) >= -1e-12


def test_certificate_grid_all_pass():
    for theta in GRID:
        cert = certificate(float(theta))
        assert isinstance(cert, OptimalityCertificate)
        assert cert.psd_ok, theta
        assert cert.saturation_ok, theta
        assert cert.delta_spectrum[0] >= -1e-10, theta
        assert cert.spectrum_residual <= 1e-10, theta
        assert cert.fidelity_identity_residual <= 1e-10, theta
        assert cert.proportionality <= 1e-12, theta
        # the two printed forms of the multiplier scale agree with Tr(lam)/2
        assert cert.weights_form_residual <= 1e-12, theta
        assert cert.half_fidelity_residual <= 1e-12, theta
        # the scalar identity pins the smallest closed-form eigenvalue to zero
        assert abs(cert.delta_closed_form[3]) <= 1e-12, theta
        assert len(cert.delta_spectrum) == 8


def test_certificate_spectrum_is_doubly_degenerate():
    cert = certificate(0.9)
    closed_doubled = sorted(
        [cert.delta_closed_form[i] for i in range(4) for _ in range(2)]
    )
    worst = max(abs(s - c) for s, c in zip(cert.delta_spectrum, closed_doubled))
    assert worst < 1e-10


def test_analytic_choi_is_fixed_point_of_the_update():
    # complementary slackness: R chi R = (F/2)^2 chi, so one update step is a no-op
    for theta in (0.4, math.pi / 3, 2.0):
        chi = mpcc_choi(theta)
        score = score_operator(PriorDistribution.mirror(theta))
        f = mpcc_fidelity(theta)
        mid = score @ chi @ score
        assert np.abs(mid - (f / 2.0) ** 2 * chi).max() < 1e-12
        d = trace_over_outputs(mid)
        assert np.abs(d - (f / 2.0) ** 2 * np.eye(2)).max() < 1e-12


def test_random_start_is_feasible_and_reproducible():
    a = random_trace_preserving_choi(np.random.default_rng(9))
    b = random_trace_preserving_choi(np.random.default_rng(9))
    assert np.array_equal(a, b)
    assert np.abs(trace_over_outputs(a) - np.eye(2)).max() < 1e-12
    w = np.linalg.eigvalsh(a)
    assert w[0] > 1e-6  # Ginibre start is full rank
    assert np.abs(a - a.conj().T).max() < 1e-12


@pytest.mark.parametrize("theta", [0.0, math.pi / 3, FIDELITY_MINIMUM_ANGLE, math.pi / 2])
def test_optimizer_reaches_the_closed_form(theta):
    score = score_operator(PriorDistribution.mirror(theta))
    f_ref = mpcc_fidelity(theta)
    for seed in (0, 1):
        res = optimize_map(score, seed=seed)
        assert res.converged
        assert abs(res.f_star - f_ref) < 1e-8
        # feasible iterates can approach the optimum only from below
        assert max(res.fidelity_history) <= f_ref + 1e-9
        assert res.max_tp_defect < 1e-10
        assert res.min_eigenvalue > -1e-10
        assert len(res.fidelity_history) == res.iterations + 1
        assert res.f_star == max(res.fidelity_history)


def test_optimizer_contract_in_the_slow_convergence_band():
    # hardest measured case: near theta = 0.31 the linear rate drops to
    # 1 - rho ~ 5e-5 and this start is still 1.4e-6 short after 20000
    # iterations.  At default arguments the result must sit inside the
    # accuracy promise even though the step-size test never fires.
    theta = 0.31
    score = score_operator(PriorDistribution.mirror(theta))
    res = optimize_map(score, seed=9)
    f_ref = mpcc_fidelity(theta)
    assert not res.converged
    assert res.f_star >= f_ref - 1e-6
    assert res.f_star <= f_ref + 1e-10


def test_optimizer_multi_start_consistency():
    # independent random starts must land on the same optimal value
    score = score_operator(PriorDistribution.mirror(math.pi / 3))
    values = [optimize_map(score, seed=seed).f_star for seed in range(5)]
    assert max(values) - min(values) < 1e-8


def test_optimizer_finds_the_analytic_pattern_off_degeneracy():
    # away from the poles and the equator the optimum is unique
    theta = 1.0
    score = score_operator(PriorDistribution.mirror(theta))
    res = optimize_map(score, seed=3)
    assert choi_pattern_defect(res.chi_star, theta) < 1e-3


def test_pattern_defect_zero_on_analytic_matrix():
    for theta in (0.3, 1.2, 2.8):
        assert choi_pattern_defect(mpcc_choi(theta), theta) == 0.0


def test_optimize_map_validation():
    score = score_operator(PriorDistribution.mirror(1.0))
    with pytest.raises(ValueError):
        optimize_map(np.eye(4))
    with pytest.raises(ValueError):
        optimize_map(score, tol=0.0)
    with pytest.raises(ValueError):
        optimize_map(score, max_iter=0)
