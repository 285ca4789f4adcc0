import math

import numpy as np
import pytest
from hypothesis import given, settings
from scipy.optimize import brentq

from dephasing_sps.errors import GridTooCoarse, GridTooNarrow, Multimodal, NonPositiveWidth, ValidationError, ZeroCoupling
from dephasing_sps.params import SystemParams, preset
from dephasing_sps.spectra import (
    Spectrum,
    cavity_spectrum_closed_form,
    cavity_spectrum_uncoupled,
    closed_form_maxima,
    complex_frequencies,
    count_peaks,
    default_grid,
    emitter_spectrum_uncoupled,
    filter_product_spectrum,
    fwhm,
    is_doublet,
    l2_distance,
    lorentzian_spectrum,
    peak_frequency,
    secular_roots,
)

from conftest import system_params


def vieta_residuals(p):
    w_at, w_cav = complex_frequencies(p)
    r = secular_roots(p)
    s = r.lambda_plus + r.lambda_minus
    prod = r.lambda_plus * r.lambda_minus
    target = w_at * w_cav - p.g**2
    return (
        abs(s - (w_at + w_cav)) / (abs(w_at) + abs(w_cav)),
        abs(prod - target) / (abs(w_at * w_cav) + p.g**2),
    )


# --- secular roots --------------------------------------------------------


def test_roots_decoupled():
    p = SystemParams.from_detuning(0, 85, 1, 20, 300)
    r = secular_roots(p)
    assert r.lambda_minus == complex(0, -10.5)
    assert r.lambda_plus == complex(300, -42.5)


def test_roots_press_resonant():
    r = secular_roots(preset("press"))
    assert r.lambda_minus == pytest.approx(complex(-28, -21.5), abs=1e-12)
    assert r.lambda_plus == pytest.approx(complex(28, -21.5), abs=1e-12)
    assert r.splitting == pytest.approx(56)


def test_roots_hennessy_dephased():
    p = preset("hennessy", gamma_star=500)
    r = secular_roots(p)
    # independent: companion-matrix roots of the quadratic
    w_at, w_cav = complex_frequencies(p)
    ref = sorted(np.roots([1, -(w_at + w_cav), w_at * w_cav - p.g**2]), key=lambda z: abs(z.imag))
    assert r.lambda_minus == pytest.approx(ref[0], abs=1e-9)
    assert r.lambda_plus == pytest.approx(ref[1], abs=1e-9)
    assert r.lambda_minus.imag == pytest.approx(-84.874, abs=1e-3)
    assert r.lambda_plus.imag == pytest.approx(-215.626, abs=1e-3)
    assert r.lambda_minus.real == pytest.approx(0, abs=1e-9)


@given(system_params())
def test_roots_vieta_and_passivity(p):
    ds, dp = vieta_residuals(p)
    assert ds < 1e-10 and dp < 1e-10
    r = secular_roots(p)
    assert r.lambda_plus.imag < 0 and r.lambda_minus.imag < 0
    assert abs(r.lambda_minus.imag) <= abs(r.lambda_plus.imag) * (1 + 1e-12)


def test_vieta_at_extreme_scale_separation():
    # cancellation-prone: tiny emitter width, cavity far away
    p = SystemParams.from_detuning(0.5, 1.0, 1e-3, 0, 1e6)
    assert max(vieta_residuals(p)) < 1e-12


def _set_motion(r1, r2):
    a = [r1.lambda_plus, r1.lambda_minus]
    b = [r2.lambda_plus, r2.lambda_minus]
    return min(max(abs(a[0] - b[0]), abs(a[1] - b[1])), max(abs(a[0] - b[1]), abs(a[1] - b[0])))


def test_roots_continuous_across_exceptional_point():
    kappa, gamma_tot = 85.0, 501.0
    g_crit = abs(gamma_tot - kappa) / 4
    motions = []
    for h in (1e-2, 1e-4, 1e-6):
        gs = g_crit + h * np.arange(-50, 51)
        roots = [secular_roots(SystemParams(g, kappa, 1.0, gamma_tot - 1.0)) for g in gs]
        motions.append(max(_set_motion(a, b) for a, b in zip(roots, roots[1:])))
    # square-root branch point: motion ~ sqrt(h)
    assert motions[1] < motions[0] / 5 and motions[2] < motions[1] / 5
    assert motions[2] < 0.05


# --- closed-form spectrum -------------------------------------------------


def test_closed_form_zero_coupling():
    with pytest.raises(ZeroCoupling):
        cavity_spectrum_closed_form(SystemParams(0, 85, 1))


def test_closed_form_grid_too_narrow():
    p = preset("press")
    with pytest.raises(GridTooNarrow):
        cavity_spectrum_closed_form(p, np.linspace(-50, 50, 1001))


@settings(max_examples=50, deadline=None)
@given(system_params(g=(0.5, 300)))
def test_closed_form_normalised(p):
    s = cavity_spectrum_closed_form(p)
    assert s.integral() == pytest.approx(1, abs=1e-6)
    assert np.all(s.values >= 0) and np.all(np.isfinite(s.values))


def test_press_detuned_emits_at_emitter():
    p = preset("press", delta=1000)
    assert abs(peak_frequency(cavity_spectrum_closed_form(p)) - p.omega0) < 5


def test_press_dephased_detuned_emits_at_cavity():
    p = preset("press", gamma_star=500, delta=1000)
    s = cavity_spectrum_closed_form(p)
    assert abs(peak_frequency(s) - p.omega_cav) < 5
    assert fwhm(s) == pytest.approx(p.kappa, rel=0.15)


def test_closed_form_shift_invariance():
    p = preset("hennessy", gamma_star=120, delta=250)
    shift = 1234.5
    q = p.replace(omega0=p.omega0 + shift, delta=p.delta)
    grid = default_grid(p)
    a = cavity_spectrum_closed_form(p, grid)
    b = cavity_spectrum_closed_form(q, grid + shift)
    np.testing.assert_allclose(b.values, a.values, rtol=1e-8)


def test_weak_coupling_limit_is_filter_product():
    dists = []
    for g in (10, 1, 0.1):
        p = preset("press", g=g, gamma_star=100, delta=300)
        grid = default_grid(p)
        dists.append(l2_distance(filter_product_spectrum(p, grid), cavity_spectrum_closed_form(p, grid)))
    assert dists[0] > dists[1] > dists[2]
    assert dists[2] < 1e-5
    # distance ~ g**2
    assert dists[1] / dists[2] == pytest.approx(100, rel=0.05)


# --- Lorentzians and filter product --------------------------------------


def test_lorentzian_half_maximum():
    grid = np.linspace(-50, 50, 100001)
    s = lorentzian_spectrum(0, 2, grid)
    i0, i1 = np.searchsorted(grid, [0, 1])
    assert s.values[i0] / s.values[i1] == pytest.approx(2, rel=1e-9)
    with pytest.raises(NonPositiveWidth):
        lorentzian_spectrum(0, 0, grid)


def test_lorentzian_fwhm_self_consistent():
    grid = np.linspace(-200, 200, 20001)
    assert fwhm(lorentzian_spectrum(0, 10, grid)) == pytest.approx(10, abs=0.1)
    assert abs(peak_frequency(lorentzian_spectrum(42, 5, grid)) - 42) <= grid[1] - grid[0]


def test_uncoupled_emitter_width():
    p = preset("press", gamma_star=500)
    grid = np.linspace(-20000, 20000, 400001)
    assert fwhm(emitter_spectrum_uncoupled(p, grid)) == pytest.approx(501, abs=0.2)
    assert fwhm(cavity_spectrum_uncoupled(p, grid)) == pytest.approx(85, abs=0.2)


def test_filter_product_white_light():
    p = SystemParams.from_detuning(35, 10, 1, 2000, 0)
    grid = default_grid(p)
    assert l2_distance(filter_product_spectrum(p, grid), cavity_spectrum_uncoupled(p, grid)) < 0.05


def test_filter_product_squared_lorentzian_width():
    # equal widths: (x^2 + 1)^2 = 2 at half maximum, x in units of the half-width
    half_max_x = math.sqrt(math.sqrt(2) - 1)
    p = SystemParams.from_detuning(1, 10, 4, 6, 0)
    grid = np.linspace(-300, 300, 60001)
    assert fwhm(filter_product_spectrum(p, grid)) / 10 == pytest.approx(half_max_x, abs=1e-4)
    assert half_max_x == pytest.approx(0.6436, abs=1e-4)


def test_filter_product_matches_closed_form_weak_press():
    p = preset("press", gamma_star=500, delta=1000)
    grid = default_grid(p)
    assert l2_distance(filter_product_spectrum(p, grid), cavity_spectrum_closed_form(p, grid)) < 0.05


def test_filter_product_symmetric_peak():
    p = preset("press", gamma_star=500)
    assert peak_frequency(filter_product_spectrum(p)) == p.omega0


# --- lineshape analysis ---------------------------------------------------


def test_fwhm_press_resonant_is_multimodal():
    s = cavity_spectrum_closed_form(preset("press"))
    assert count_peaks(s) == 2
    with pytest.raises(Multimodal):
        fwhm(s)


def test_fwhm_hennessy_dephased_resonant():
    p = preset("hennessy", gamma_star=500)
    a, b = (-lam.imag for lam in secular_roots(p))
    # half maximum of 1/((w²+a²)(w²+b²)): u² + (a²+b²)u - a²b² = 0 with u = w²
    u = (-(a * a + b * b) + math.sqrt((a * a + b * b) ** 2 + 4 * a * a * b * b)) / 2
    expected = 2 * math.sqrt(u)
    s = cavity_spectrum_closed_form(p)
    assert fwhm(s) == pytest.approx(expected, abs=s.grid[1] - s.grid[0])
    assert expected == pytest.approx(150.25, abs=0.01)


def test_fwhm_grid_errors():
    grid = np.linspace(-10, 10, 2001)
    with pytest.raises(GridTooCoarse):
        fwhm(lorentzian_spectrum(0, 0.03, grid))
    with pytest.raises(GridTooNarrow):
        fwhm(lorentzian_spectrum(0, 50, grid))


def test_fwhm_three_crossings():
    grid = np.linspace(-100, 100, 2001)
    values = np.exp(-((grid + 30) ** 2) / 20) + 0.8 * np.exp(-((grid - 30) ** 2) / 20)
    with pytest.raises(Multimodal):
        fwhm(Spectrum(grid, values, "qrt_oracle"))


def test_peak_tie_goes_low():
    grid = np.linspace(-10, 10, 21)
    values = np.exp(-np.abs(np.abs(grid) - 3))
    assert peak_frequency(Spectrum(grid, values, "filter_product")) == -3


def test_analytic_maxima_match_dense_grid():
    p = preset("press")
    maxima = closed_form_maxima(p)
    assert maxima == pytest.approx([-17.9374, 17.9374], abs=1e-4)
    grid = np.linspace(-100, 100, 2_000_001)
    s = cavity_spectrum_closed_form(p, np.linspace(-1000, 1000, 20001))
    dense = 1 / (np.abs(grid - secular_roots(p).lambda_plus) ** 2 * np.abs(grid - secular_roots(p).lambda_minus) ** 2)
    right = grid[grid > 0][np.argmax(dense[grid > 0])]
    assert right == pytest.approx(maxima[1], abs=2e-4)
    assert is_doublet(p) and count_peaks(s) == 2
    assert not is_doublet(preset("press", gamma_star=500, delta=1000))


def test_analytic_maxima_stationary():
    p = preset("hennessy", gamma_star=50, delta=-120)
    lp, lm = secular_roots(p)

    def slope(w):
        return (w - lp.real) * abs(w - lm) ** 2 + (w - lm.real) * abs(w - lp) ** 2

    for m in closed_form_maxima(p):
        root = brentq(slope, m - 1, m + 1)
        assert m == pytest.approx(root, abs=1e-7)


def test_spectrum_validation():
    with pytest.raises(ValidationError):
        Spectrum(np.array([0, 1, 1]), np.ones(3), "qd_uncoupled")
    with pytest.raises(ValidationError):
        Spectrum(np.arange(3.0), np.array([1, -1, 1.0]), "qd_uncoupled")
    with pytest.raises(ValidationError):
        Spectrum(np.arange(3.0), np.ones(3), "nonsense")


def test_l2_requires_shared_grid():
    a = lorentzian_spectrum(0, 1, np.linspace(-10, 10, 101))
    b = lorentzian_spectrum(0, 1, np.linspace(-10, 10, 103))
    with pytest.raises(ValidationError):
        l2_distance(a, b)
