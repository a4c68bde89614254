import numpy as np
import pytest

from catforge.errors import ConstraintViolationError
from catforge.fockspace import (
    ProductSpace,
    annihilation,
    basis_state,
    parity_operator,
    spectral_dim,
)
from catforge.hamiltonian import (
    ChainParams,
    ChainTemplates,
    CouplingParams,
    KpoParams,
    chain_h,
    check_constraints,
    coupled_h,
    cross_kerr_from_circuit,
    ground_energy,
    single_kpo_h,
)
from catforge.states import SignPattern, cat, multimode_cat, proto_bell


def test_undriven_kpo_spectrum():
    h = single_kpo_h(KpoParams(1.0), 8).dense()
    # H|n> = -K n(n-1) |n>
    assert np.allclose(np.diag(h), [-n * (n - 1) for n in range(8)])
    space = ProductSpace.of_dims(8)
    for occ in ((0,), (1,)):
        v = basis_state(space, occ).amps
        assert np.linalg.norm(h @ v) < 1e-14
    v3 = basis_state(space, (3,)).amps
    assert np.allclose(h @ v3, -6.0 * v3)


@pytest.mark.parametrize("alpha", [1.0, 1.5, 2.0])
def test_cat_states_are_degenerate_eigenstates(alpha):
    dim = spectral_dim(alpha)
    h = single_kpo_h(KpoParams(1.0, alpha**2), dim)
    for par in (+1, -1):
        c = cat(alpha, par, dim)
        res = np.linalg.norm(h.matvec(c.amps) - alpha**4 * c.amps)
        assert res < 1e-8


def test_completed_square_identity():
    # -K a+2 a2 + eps a+2 + eps* a2  ==  -K (a+2 - conj(alpha)^2)(a2 - alpha^2) + K|alpha|^4
    dim = 17
    kerr, alpha = 0.8, 1.1 + 0.3j
    eps = kerr * alpha**2
    h = single_kpo_h(KpoParams(kerr, eps), dim).dense()
    a = annihilation(dim).dense()
    a2 = a @ a
    ad2 = a2.conj().T
    built = -kerr * (ad2 - np.conj(alpha) ** 2 * np.eye(dim)) @ (a2 - alpha**2 * np.eye(dim))
    built += kerr * abs(alpha) ** 4 * np.eye(dim)
    assert np.abs(h - built).max() < 1e-10


def test_builder_hermiticity():
    h1 = single_kpo_h(KpoParams(1.0, 1.2 + 0.7j), 15)
    assert h1.hermiticity_defect() < 1e-12
    h2 = coupled_h(KpoParams(1.0, 0.9), KpoParams(0.7, 0.4j), CouplingParams(0.3, 0.2 - 0.1j), (9, 9))
    assert h2.hermiticity_defect() < 1e-12


def test_coupled_h_reduces_to_uncoupled_sum():
    from catforge.fockspace import lift

    dims = (8, 7)
    p1, p2 = KpoParams(1.0, 0.5), KpoParams(1.3, 0.2j)
    h = coupled_h(p1, p2, CouplingParams(0.0, 0.0), dims).dense()
    space = ProductSpace.of_dims(*dims)
    want = lift(single_kpo_h(p1, 8), 0, space).dense() + lift(single_kpo_h(p2, 7), 1, space).dense()
    assert np.abs(h - want).max() < 1e-12


def test_coupled_coherent_eigenstates_at_constraint():
    a1, a2 = 1.2, 1.0
    dims = (spectral_dim(a1), spectral_dim(a2))
    c = CouplingParams(1.0, a1 * a2)
    h = coupled_h(KpoParams(1.0, a1**2), KpoParams(1.0, a2**2), c, dims)
    e = 1.0 * a1**4 + 1.0 * a2**4 + 1.0 * a1**2 * a2**2
    for par in (+1, -1):
        st = proto_bell(a1, a2, +1, par, dims)
        assert np.linalg.norm(h.matvec(st.amps) - e * st.amps) < 1e-8


def test_coupled_top_manifold_degeneracy_and_gap():
    # dense eigensolve in each total-parity sector at the constraint point
    a = 1.5
    dims = (20, 20)
    h = coupled_h(KpoParams(1.0, a * a), KpoParams(1.0, a * a), CouplingParams(1.0, a * a), dims).dense()
    space = ProductSpace.of_dims(*dims)
    signs = np.diag(parity_operator(space).dense()).real
    tops = {}
    gaps = {}
    for par in (+1, -1):
        mask = signs == par
        evals = np.linalg.eigvalsh(h[np.ix_(mask, mask)])[::-1]
        tops[par] = evals[0]
        gaps[par] = evals[0] - evals[1]
    e = 2 * a**4 + a**4  # K1|a|^4 + K2|a|^4 + K12 |a|^2 |a|^2 with all couplings 1
    assert tops[+1] == pytest.approx(e, abs=1e-8)
    assert tops[-1] == pytest.approx(e, abs=1e-8)
    assert abs(tops[+1] - tops[-1]) < 1e-8
    # frozen from this eigensolve: gap to the next level inside each sector
    assert gaps[+1] == pytest.approx(7.568188, abs=1e-4)
    assert gaps[-1] == pytest.approx(7.423238, abs=1e-4)


def test_chain_reduces_to_coupled():
    dims = (7, 7)
    p = ChainParams((KpoParams(1.0, 0.4), KpoParams(1.0, 0.3)), (CouplingParams(0.5, 0.12),))
    h2 = chain_h(p, dims).dense()
    hc = coupled_h(p.kpo[0], p.kpo[1], p.couplers[0], dims).dense()
    assert np.abs(h2 - hc).max() < 1e-13


def test_chain_three_mode_eigenstate_and_energy():
    # residuals at 1e-7 need the cutoff well above the propagation default
    a = 1.2
    dims = (24, 24, 24)
    kpo = tuple(KpoParams(1.0, a * a) for _ in range(3))
    cpl = tuple(CouplingParams(1.0, a * a) for _ in range(2))
    p = ChainParams(kpo, cpl)
    h = chain_h(p, dims)
    e = ground_energy(p)
    assert e == pytest.approx(3 * a**4 + 2 * a**4, abs=1e-12)
    for par in (+1, -1):
        st = multimode_cat((a, a, a), SignPattern.plus(3), par, dims)
        assert np.linalg.norm(h.matvec(st.amps) - e * st.amps) < 1e-7


def test_chain_ground_energy_matches_eigensolver():
    import scipy.sparse.linalg as spla

    a = 0.9
    dims = (14, 14, 14)
    p = ChainParams(
        tuple(KpoParams(1.0, a * a) for _ in range(3)),
        tuple(CouplingParams(1.0, a * a) for _ in range(2)),
    )
    h = chain_h(p, dims)
    top = spla.eigsh(h.matrix, k=3, which="LA", return_eigenvectors=False)
    assert np.max(top) == pytest.approx(ground_energy(p), abs=1e-8)

    dims2 = (25, 25)
    a1, a2 = 1.2, 0.8
    p2 = ChainParams(
        (KpoParams(1.0, a1 * a1), KpoParams(1.0, a2 * a2)), (CouplingParams(1.0, a1 * a2),)
    )
    h2 = coupled_h(p2.kpo[0], p2.kpo[1], p2.couplers[0], dims2).dense()
    evals = np.linalg.eigvalsh(h2)
    assert evals[-1] == pytest.approx(ground_energy(p2), abs=1e-8)


def test_ground_energy_examples_and_constraint_error():
    single = ChainParams((KpoParams(1.0, 4.0),))
    assert ground_energy(single) == pytest.approx(16.0)
    two = ChainParams((KpoParams(1.0, 1.0), KpoParams(1.0, 1.0)), (CouplingParams(1.0, 1.0),))
    assert ground_energy(two) == pytest.approx(3.0)
    # minus-sign constraint also valid
    two_m = ChainParams((KpoParams(1.0, 1.0), KpoParams(1.0, 1.0)), (CouplingParams(1.0, -1.0),))
    assert ground_energy(two_m) == pytest.approx(3.0)

    bad = ChainParams((KpoParams(1.0, 1.0), KpoParams(1.0, 1.0)), (CouplingParams(1.0, 0.5),))
    with pytest.raises(ConstraintViolationError) as err:
        ground_energy(bad)
    assert err.value.coupler == 0
    check_constraints(two)  # no raise


def test_per_mode_parity_commutes_iff_no_mixing_drive():
    dims = (8, 8)
    space = ProductSpace.of_dims(*dims)
    p0 = parity_operator(space, (0,)).dense()
    h_no_mix = coupled_h(KpoParams(1.0, 0.7), KpoParams(1.0, 0.4), CouplingParams(0.8, 0.0), dims).dense()
    assert np.abs(h_no_mix @ p0 - p0 @ h_no_mix).max() < 1e-12
    h_mix = coupled_h(KpoParams(1.0, 0.7), KpoParams(1.0, 0.4), CouplingParams(0.8, 0.3), dims).dense()
    assert np.abs(h_mix @ p0 - p0 @ h_mix).max() > 1e-3


def test_total_parity_always_commutes():
    dims = (8, 8)
    space = ProductSpace.of_dims(*dims)
    pt = parity_operator(space).dense()
    h = coupled_h(KpoParams(1.0, 0.7j), KpoParams(1.0, 0.4), CouplingParams(0.8, 0.3 - 0.2j), dims).dense()
    assert np.abs(h @ pt - pt @ h).max() < 1e-12


def test_templates_matvec_matches_matrix():
    dims = (6, 5, 4)
    space = ProductSpace.of_dims(*dims)
    tpl = ChainTemplates(space)
    p = ChainParams(
        (KpoParams(1.0, 0.3), KpoParams(0.9, 0.2j), KpoParams(1.1, 0.1)),
        (CouplingParams(0.4, 0.05), CouplingParams(0.2, 0.07j)),
    )
    rng = np.random.default_rng(3)
    v = rng.normal(size=space.total_dim) + 1j * rng.normal(size=space.total_dim)
    want = tpl.matrix(p).dense() @ v
    assert np.abs(tpl.matvec(p, v) - want).max() < 1e-12


def test_cross_kerr_from_circuit():
    assert cross_kerr_from_circuit(0.0, 0.3, 0.4) == 0.0
    assert cross_kerr_from_circuit(16.0, 1.0, 1.0) == pytest.approx(1.0)
    base = cross_kerr_from_circuit(5.0, 0.2, 0.3)
    assert cross_kerr_from_circuit(5.0, 0.4, 0.3) == pytest.approx(4 * base)
    with pytest.raises(ValueError):
        cross_kerr_from_circuit(-1.0, 0.1, 0.1)


def test_kpo_params_validation():
    with pytest.raises(ValueError):
        KpoParams(0.0)
    with pytest.raises(ValueError):
        CouplingParams(-0.1)
    with pytest.raises(ValueError):
        ChainParams((KpoParams(1.0),), (CouplingParams(0.1),))
