import math
import random

import numpy as np
import pytest

from fracsum import (
    DomainError,
    EigenCandidate,
    PoleError,
    ZetaZero,
    boundary_report,
    eigen_residual,
    eigenvalue_of,
    find_critical_zeros,
    frac_power,
    half_shift_norm,
    riemann_zeta,
    scan_s_plane,
)
from oracles import alt_series_zeta

# classical ordinates, used only as coarse anchors (1e-6)
T1, T2, T3 = 14.134725142, 21.022039639, 25.010857580


# ------------------------------------------------------------ eigenvalue

def test_eigenvalue_fixed_points():
    assert eigenvalue_of(0.5) == 0.0
    assert eigenvalue_of(2.0) == 3j
    lam = eigenvalue_of(0.5 + 14.1347j)
    assert lam == -2 * 14.1347 + 0j
    assert lam.imag == 0.0


def test_eigenvalue_imag_tracks_distance_from_critical_line():
    for s in (0.3 + 5j, 0.9 - 2j, 0.55 + 30j):
        assert abs(eigenvalue_of(s).imag - (2 * s.real - 1)) == 0.0


# ---------------------------------------------------------- eigen_residual

def test_eigen_residual_at_s2():
    rep = eigen_residual(2.0, include_numeric=False)
    assert rep.lam == 3j
    assert abs(rep.analytic_residual - abs(riemann_zeta(2.0))) < 1e-12
    assert not rep.is_eigen
    assert not rep.lambda_is_real
    assert rep.boundary_f0 == 0.0
    assert abs(rep.boundary_fhalf - (-2.0 * riemann_zeta(2.0))) < 1e-12
    assert math.isnan(rep.numeric_residual)


def test_eigen_residual_at_s1_replaces_pole_constant():
    rep = eigen_residual(1.0, include_numeric=False)
    assert rep.analytic_residual == 1.0
    assert rep.lam == 1j
    assert rep.zeta_s is None


def test_eigen_residual_at_first_zero():
    t = 14.1347251417
    rep = eigen_residual(0.5 + 1j * t, include_numeric=False)
    assert rep.is_eigen
    assert rep.analytic_residual < 1e-6
    assert rep.lambda_is_real
    assert rep.lam.imag == 0.0
    assert abs(rep.lam.real + 2 * t) < 1e-12
    assert abs(rep.boundary_fhalf) < 1e-6


def test_eigen_residual_numeric_on_reduced_grid():
    from fracsum import OperatorConfig
    cfg = OperatorConfig(sample_grid=(0.5, 1.5))
    rep = eigen_residual(2.0, cfg)
    assert rep.numeric_residual < 1e-3


def test_eigen_residual_requires_right_half_plane():
    with pytest.raises(DomainError):
        eigen_residual(-0.2 + 3j)
    with pytest.raises(DomainError):
        eigen_residual(0.0)


# ------------------------------------------------------------ zero finding

def test_no_zeros_below_first():
    assert find_critical_zeros(0.0, 10.0) == []


def test_first_zero_bracketed():
    zeros = find_critical_zeros(10.0, 15.0)
    assert len(zeros) == 1
    z = zeros[0]
    assert abs(z.t - T1) < 1e-6
    assert z.residual < 1e-8
    assert z.bracket[1] - z.bracket[0] < 1e-9
    assert z.index == 1


def test_zeros_up_to_26():
    # the third ordinate 25.0108... also lies below 26
    zeros = find_critical_zeros(10.0, 26.0)
    assert [z.index for z in zeros] == [1, 2, 3]
    assert abs(zeros[0].t - T1) < 1e-6
    assert abs(zeros[1].t - T2) < 1e-6
    assert abs(zeros[2].t - T3) < 1e-6


def test_zero_count_up_to_sixty_is_thirteen():
    # N(60) = 13 by the argument-principle count; the finder must agree and
    # stay stable under grid refinement
    zeros = find_critical_zeros(0.0, 60.0)
    assert len(zeros) == 13
    fine = find_critical_zeros(0.0, 60.0, grid_step=0.025)
    assert len(fine) == 13
    for a, b in zip(zeros, fine):
        assert abs(a.t - b.t) < 1e-8


def test_zeros_increasing_and_residuals_certified():
    zeros = find_critical_zeros(0.0, 40.0)
    ts = [z.t for z in zeros]
    assert ts == sorted(ts)
    for z in zeros:
        assert z.residual < 1e-8
        assert abs(alt_series_zeta(0.5 + 1j * z.t)) < 1e-8


def test_zero_finder_domain():
    with pytest.raises(DomainError):
        find_critical_zeros(5.0, 3.0)
    with pytest.raises(DomainError):
        find_critical_zeros(-1.0, 5.0)
    with pytest.raises(DomainError):
        find_critical_zeros(0.0, 150.0)


def test_zero_finder_parallel_matches_serial():
    serial = find_critical_zeros(0.0, 30.0)
    threaded = find_critical_zeros(0.0, 30.0, jobs=4)
    assert [z.t for z in serial] == [z.t for z in threaded]


def test_zero_finder_covers_partial_final_cell():
    # the first zero sits at 14.1347...; a range ending just past it must
    # still bracket it even though the 0.05 grid does not land on t_max
    zeros = find_critical_zeros(14.12, 14.1347999)
    assert len(zeros) == 1
    assert abs(zeros[0].t - T1) < 1e-6


# -------------------------------------------------------- boundary report

def test_boundary_identity_at_s2():
    rep = boundary_report(2.0)
    assert rep.f0 == 0.0
    assert abs(rep.f_minus_half - (-math.pi ** 2 / 3.0)) < 1e-12
    assert rep.identity_defect < 1e-10


def test_boundary_identity_at_half():
    rep = boundary_report(0.5)
    expect = (2.0 - math.sqrt(2.0)) * alt_series_zeta(0.5)
    assert abs(rep.f_minus_half - expect) < 1e-10


def test_boundary_conditions_coincide_at_zero():
    zeros = find_critical_zeros(10.0, 15.0)
    s = 0.5 + 1j * zeros[0].t
    rep = boundary_report(s)
    assert abs(rep.f0) == 0.0
    assert abs(rep.f_minus_half) < 1e-6
    assert rep.identity_defect < 1e-9


def test_boundary_report_random_defect():
    rng = random.Random(23)
    for _ in range(10):
        s = complex(rng.uniform(-0.9, 2.5), rng.uniform(-20.0, 20.0))
        if abs(s - 1.0) < 0.1:
            continue
        assert boundary_report(s).identity_defect < 1e-9


def test_boundary_report_pole_and_domain():
    with pytest.raises(PoleError):
        boundary_report(1.0)
    with pytest.raises(DomainError):
        boundary_report(-1.5)


# ------------------------------------------------------------------ scan

def test_scan_minima_track_zeros():
    cells = scan_s_plane((0.1, 0.9), (10.0, 30.0), 9, 41)
    assert len(cells) == 9 * 41
    column = [c for c in cells if abs(c.s.real - 0.5) < 1e-12]
    assert len(column) == 41
    # within each zero's neighbourhood, the cell with the smallest analytic
    # residual must be the one nearest the true ordinate
    step = 0.5
    for t_true in (T1, T2, T3):
        window = [c for c in column if abs(c.s.imag - t_true) <= 2.0]
        best = min(window, key=lambda c: c.analytic_residual)
        assert abs(best.s.imag - t_true) <= step


def test_scan_is_im_major_and_deterministic():
    cells = scan_s_plane((0.2, 0.8), (0.0, 2.0), 3, 3)
    ims = [c.s.imag for c in cells]
    assert ims == sorted(ims)
    res = [c.s.real for c in cells[:3]]
    assert res == [0.2, 0.5, 0.8]
    again = scan_s_plane((0.2, 0.8), (0.0, 2.0), 3, 3)
    assert cells == again


def test_scan_flags_pole_cells():
    cells = scan_s_plane((0.9, 1.1), (-0.0005, 0.0005), 3, 3)
    flags = {c.flag for c in cells}
    assert "pole" in flags
    pole_cells = [c for c in cells if c.flag == "pole"]
    assert all(abs(c.s - 1.0) < 1e-3 for c in pole_cells)
    ok_cells = [c for c in cells if c.flag == "ok"]
    assert ok_cells and all(np.isfinite(c.abs_zeta) for c in ok_cells)


def test_scan_single_column_on_critical_line():
    cells = scan_s_plane((0.5, 0.5), (0.0, 5.0), 1, 11)
    assert len(cells) == 11
    assert all(c.lam.imag == 0.0 for c in cells)
    assert all(c.lambda_is_real for c in cells)


def test_scan_parallel_deterministic():
    a = scan_s_plane((0.2, 0.8), (5.0, 9.0), 4, 7)
    b = scan_s_plane((0.2, 0.8), (5.0, 9.0), 4, 7, jobs=4)
    assert a == b


def test_scan_isolates_per_cell_failures():
    # far above the supported strip the tail refuses; the scan must flag the
    # cells and carry on instead of aborting
    cells = scan_s_plane((0.5, 0.5), (149.0, 151.0), 1, 3)
    assert all(c.flag == "error:ConvergenceError" for c in cells)
    assert all(math.isnan(c.abs_zeta) for c in cells)
    assert all(c.lam == eigenvalue_of(c.s) for c in cells)


def test_scan_rejects_left_half_plane():
    with pytest.raises(DomainError):
        scan_s_plane((-0.5, 0.5), (0.0, 1.0), 3, 3)
    with pytest.raises(DomainError):
        scan_s_plane((0.0, 0.5), (0.0, 1.0), 3, 3)


# ------------------------------------------------------- half-shift norm

def test_half_shift_decay_exponents():
    res = half_shift_norm(2.0, 200.0)
    assert -4.2 <= res.decay_exponent <= -3.8
    res = half_shift_norm(0.75 + 5j, 400.0)
    assert -1.7 <= res.decay_exponent <= -1.3
    res = half_shift_norm(0.25, 400.0)
    assert -0.7 <= res.decay_exponent <= -0.3


def test_half_shift_tail_increments_distinguish_half_line():
    # Re(s) > 1/2: truncation increments shrink; Re(s) < 1/2: they grow
    for s, shrinking in ((0.75 + 5j, True), (0.25 + 0j, False)):
        n1 = half_shift_norm(s, 200.0).truncated_norm_sq
        n2 = half_shift_norm(s, 400.0).truncated_norm_sq
        n3 = half_shift_norm(s, 800.0).truncated_norm_sq
        inc1, inc2 = n2 - n1, n3 - n2
        assert inc1 > 0 and inc2 > 0
        assert (inc2 < inc1) == shrinking


def test_half_shift_norm_domain():
    with pytest.raises(DomainError):
        half_shift_norm(-0.5, 400.0)
    with pytest.raises(DomainError):
        half_shift_norm(0.75, 50.0)
    with pytest.raises(DomainError):
        half_shift_norm(0.75, 400.0, quad_points=10)


# -------------------------------------------------------------- reality

def test_reality_criterion():
    zeros = find_critical_zeros(0.0, 60.0)
    for z in zeros:
        assert eigenvalue_of(0.5 + 1j * z.t).imag == 0.0
    rng = random.Random(17)
    for _ in range(10):
        re = rng.uniform(0.06, 0.94)
        if abs(re - 0.5) < 0.05:
            re = 0.5 + (0.06 if re >= 0.5 else -0.06)
        s = complex(re, rng.uniform(0.5, 55.0))
        assert abs(eigenvalue_of(s).imag) >= 0.1


def test_zero_eigen_correspondence():
    zeros = find_critical_zeros(0.0, 60.0)
    for z in zeros[:10]:
        rep = eigen_residual(0.5 + 1j * z.t, include_numeric=False)
        assert rep.analytic_residual < 1e-6
    rng = random.Random(17)
    for _ in range(10):
        re = rng.uniform(0.06, 0.94)
        if abs(re - 0.5) < 0.05:
            re = 0.5 + (0.06 if re >= 0.5 else -0.06)
        s = complex(re, rng.uniform(0.5, 55.0))
        rep = eigen_residual(s, include_numeric=False)
        assert rep.analytic_residual > 1e-2


# -------------------------------------------------------------- candidates

def test_eigen_candidate_eval():
    cand = EigenCandidate(alpha=1.0, beta=0.0, s=2.0)
    f = cand.as_eval_fn()
    assert abs(complex(f(0.0))) == 0.0
    assert abs(complex(f(1.0)) - 1.0) < 1e-12
    shifted = EigenCandidate(alpha=2.0, beta=1j, s=1.5)
    g = shifted.as_eval_fn()
    assert abs(complex(g(0.0)) - 1j) < 1e-14


def test_eigen_candidate_validation():
    with pytest.raises(DomainError):
        EigenCandidate(alpha=1.0, beta=0.0, s=-0.5)
    EigenCandidate(alpha=0.0, beta=2.0, s=-0.5)  # pure constant is fine


def test_zeta_zero_is_frozen_record():
    z = ZetaZero(index=1, t=14.1, residual=1e-9, bracket=(14.0, 14.2))
    with pytest.raises(AttributeError):
        z.t = 15.0
