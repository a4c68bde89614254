import numpy as np
import pytest
from scipy.integrate import simpson
from scipy.special import gammaln

from catforge.analysis import (
    BerrySpec,
    PhaseSpaceGrid,
    bell_projection_map,
    berry_phase_per_loop,
    berry_phase_quadrature,
    delta_berry,
    extract_relative_phase,
    fidelity,
    wigner,
)
from catforge.errors import SpaceMismatchError, UndefinedPhaseError
from catforge.fockspace import ProductSpace, StateVector, basis_state
from catforge.states import BellKind, bell_cat, cat, coherent
from catforge.protocol import solve_alpha_for_phase


# ------------------------------------------------------------------ fidelity


def test_fidelity_trivial_cases():
    s = ProductSpace.of_dims(4, 4)
    v00 = basis_state(s, (0, 0))
    v10 = basis_state(s, (1, 0))
    assert fidelity(v00, v00) == 1.0
    assert fidelity(v00, v10) == 0.0
    assert fidelity(cat(1.0, +1, 20), cat(1.0, -1, 20)) < 1e-28


def test_fidelity_symmetric_exactly():
    rng = np.random.default_rng(5)
    s = ProductSpace.of_dims(6)
    a = rng.normal(size=6) + 1j * rng.normal(size=6)
    b = rng.normal(size=6) + 1j * rng.normal(size=6)
    psi = StateVector(s, a / np.linalg.norm(a))
    phi = StateVector(s, b / np.linalg.norm(b))
    assert fidelity(psi, phi) == fidelity(phi, psi)


def test_fidelity_space_mismatch():
    with pytest.raises(SpaceMismatchError):
        fidelity(basis_state(ProductSpace.of_dims(4), (0,)), basis_state(ProductSpace.of_dims(5), (0,)))


# ------------------------------------------------------------- Berry phases


def _cat_vector_natural_gauge(alpha_mag, parity, phi, dim):
    """Raw coherent-state construction, independent of the package factories."""
    n = np.arange(dim)
    log_mag = -0.5 * alpha_mag**2 + n * np.log(alpha_mag) if alpha_mag > 0 else None
    c = np.exp(log_mag - 0.5 * gammaln(n + 1)) * np.exp(0.5j * phi * n)
    v = c * (1 + parity * (-1.0) ** n)
    return v / np.linalg.norm(v)


def _berry_quadrature_fd(alpha_mag, parity, n_phi=41, dim=60, h=1e-3):
    """Quadrature of -Im <C|d/dphi C> with a 4th-order finite-difference derivative."""
    phis = np.linspace(0.0, 2 * np.pi, n_phi)
    vals = np.empty(n_phi)
    for k, phi in enumerate(phis):
        f = lambda p: _cat_vector_natural_gauge(alpha_mag, parity, p, dim)
        d = (-f(phi + 2 * h) + 8 * f(phi + h) - 8 * f(phi - h) + f(phi - 2 * h)) / (12 * h)
        vals[k] = -np.imag(np.vdot(f(phi), d))
    return simpson(vals, x=phis)


@pytest.mark.parametrize("alpha_mag", [0.5, 1.0, 1.3, 1.5, 2.0])
@pytest.mark.parametrize("parity", [+1, -1])
def test_berry_closed_form_matches_quadrature_oracle(alpha_mag, parity):
    closed = berry_phase_per_loop(BerrySpec(alpha_mag, parity))
    oracle = _berry_quadrature_fd(alpha_mag, parity)
    assert abs(closed - oracle) < 1e-10


def test_berry_quadrature_helper_agrees():
    for parity in (+1, -1):
        assert abs(
            berry_phase_quadrature(1.3, parity) - berry_phase_per_loop(BerrySpec(1.3, parity))
        ) < 1e-10


def test_berry_large_alpha_limit():
    # both parities approach -pi |alpha|^2 and their difference vanishes
    spec_p, spec_m = BerrySpec(3.5, +1), BerrySpec(3.5, -1)
    for s in (spec_p, spec_m):
        assert berry_phase_per_loop(s) == pytest.approx(-np.pi * 3.5**2, rel=1e-9)
    assert abs(berry_phase_per_loop(spec_p) - berry_phase_per_loop(spec_m)) < 1e-8


def test_berry_difference_at_alpha_one():
    d = berry_phase_per_loop(BerrySpec(1.0, +1)) - berry_phase_per_loop(BerrySpec(1.0, -1))
    want = np.pi * 4 * np.exp(-2.0) / (1 - np.exp(-4.0))
    assert d == pytest.approx(want, abs=1e-12)
    assert want == pytest.approx(1.7324034014613259, abs=1e-10)
    assert delta_berry(1.0, 2) == pytest.approx(2 * want, abs=1e-12)


def test_delta_berry_values_and_monotonicity():
    root = solve_alpha_for_phase(np.pi, 2)
    assert 1.03 < root < 1.05
    assert delta_berry(root, 2) == pytest.approx(np.pi, abs=1e-9)
    assert delta_berry(3.0, 2) < 1e-5
    assert delta_berry(1.5, 2) > delta_berry(2.0, 2)
    with pytest.raises(ValueError):
        delta_berry(1.0, 3)


# ------------------------------------------------------- phase extraction


def test_extract_relative_phase_identity():
    dim = 20
    psi = coherent(1.0, dim)
    ph = extract_relative_phase(psi, cat(1.0, +1, dim), cat(1.0, -1, dim), psi)
    assert ph == pytest.approx(0.0, abs=1e-14)


def test_extract_relative_phase_known_rotation():
    dim = 20
    even, odd = cat(1.0, +1, dim), cat(1.0, -1, dim)
    psi_i = coherent(1.0, dim)
    for want in (0.7, -2.5, 3.1):
        amps = (even.overlap(psi_i) * even.amps + np.exp(1j * want) * odd.overlap(psi_i) * odd.amps)
        psi_f = StateVector(even.space, amps / np.linalg.norm(amps))
        got = extract_relative_phase(psi_f, even, odd, psi_i)
        assert got == pytest.approx(want, abs=1e-12)


def test_extract_relative_phase_undefined_for_parity_eigenstate():
    dim = 20
    even = cat(1.0, +1, dim)
    with pytest.raises(UndefinedPhaseError):
        extract_relative_phase(even, even, cat(1.0, -1, dim), even)


# ---------------------------------------------------------------- Wigner


def test_wigner_vacuum_peak():
    psi = basis_state(ProductSpace.of_dims(12), (0,))
    grid = PhaseSpaceGrid((-0.1, 0.1), (-0.1, 0.1), 3, 3)
    w = wigner(psi, grid)
    assert w[1, 1] == pytest.approx(2 / np.pi, abs=1e-10)
    assert np.isrealobj(w)


def test_wigner_cat_central_fringe_signs():
    dim = 25
    grid = PhaseSpaceGrid((-0.05, 0.05), (-0.05, 0.05), 3, 3)
    w_even = wigner(cat(1.5, +1, dim), grid)
    w_odd = wigner(cat(1.5, -1, dim), grid)
    assert w_even[1, 1] > 0
    assert w_odd[1, 1] < 0


def test_wigner_normalization_on_grid():
    dim = 30
    grid = PhaseSpaceGrid((-5.0, 5.0), (-5.0, 5.0), 81, 81)
    for psi in (coherent(1.0, dim), cat(2.0, +1, dim)):
        w = wigner(psi, grid)
        total = w.sum() * grid.cell_area()
        assert total == pytest.approx(1.0, abs=1e-3)


def test_wigner_rejects_multimode():
    with pytest.raises(SpaceMismatchError):
        wigner(basis_state(ProductSpace.of_dims(4, 4), (0, 0)), PhaseSpaceGrid((-1, 1), (-1, 1), 3, 3))


def test_phase_space_grid_validation():
    with pytest.raises(ValueError):
        PhaseSpaceGrid((-1, 1), (-1, 1), 1, 3)
    with pytest.raises(ValueError):
        PhaseSpaceGrid((1, -1), (-1, 1), 3, 3)


# ------------------------------------------------------ Bell projection map


def test_bell_projection_self_peak():
    a0, a2 = 1.0, 1.5
    dims = (18, 23)
    psi = bell_cat(BellKind.PHI_PLUS, a0, a2, dims)
    grid = PhaseSpaceGrid((-1.6, 1.6), (-0.4, 0.4), 17, 5)
    m = bell_projection_map(psi, grid, a2)
    i, j = np.unravel_index(np.nanargmax(m), m.shape)
    re, im = grid.axes()
    assert re[j] == pytest.approx(a0, abs=0.21)
    assert abs(im[i]) < 0.21
    assert np.nanmax(m) > 0.95


def test_bell_projection_minus_branch():
    a0, a2 = 1.0, 1.5
    dims = (18, 23)
    psi = bell_cat(BellKind.PHI_MINUS, a0, a2, dims)
    grid = PhaseSpaceGrid((-1.6, 1.6), (-0.4, 0.4), 17, 5)
    m = bell_projection_map(psi, grid, a2)
    i, j = np.unravel_index(np.nanargmax(m), m.shape)
    re, _ = grid.axes()
    assert re[j] == pytest.approx(-a0, abs=0.21)
    assert np.nanmax(m) > 0.95


def test_bell_projection_undefined_cells_near_origin():
    dims = (14, 18)
    psi = bell_cat(BellKind.PHI_PLUS, 0.8, 1.2, dims)
    grid = PhaseSpaceGrid((-1e-8, 1e-8), (-1e-8, 1e-8), 3, 3)
    m = bell_projection_map(psi, grid, 1.2)
    assert np.isnan(m).all()
