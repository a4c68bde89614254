import numpy as np
import pytest

from catforge.errors import InvalidDimensionError, SpaceMismatchError
from catforge.fockspace import (
    ModeSpace,
    ProductSpace,
    annihilation,
    basis_state,
    creation,
    default_dim,
    identity,
    lift,
    number_operator,
    parity_operator,
    tensor,
)


def ket(space, occ):
    return basis_state(space, occ).amps


def test_annihilation_ladder_rule():
    a = annihilation(6).dense()
    # <n-1| a |n> = sqrt(n)
    for n in range(1, 6):
        assert a[n - 1, n] == pytest.approx(np.sqrt(n), abs=1e-15)
    assert np.count_nonzero(a) == 5


def test_annihilation_on_fock_states():
    s = ProductSpace.of_dims(5)
    a = annihilation(5)
    assert np.allclose(a.matvec(ket(s, (1,))), ket(s, (0,)))
    assert np.allclose(a.matvec(ket(s, (0,))), 0.0)
    assert np.vdot(ket(s, (2,)), a.matvec(ket(s, (3,)))) == pytest.approx(np.sqrt(3), abs=1e-12)


def test_annihilation_rejects_small_dim():
    with pytest.raises(InvalidDimensionError):
        annihilation(1)
    with pytest.raises(InvalidDimensionError):
        ModeSpace(0)


def test_commutator_exact_below_truncation_edge():
    dim = 9
    a = annihilation(dim).dense()
    comm = a @ a.conj().T - a.conj().T @ a
    for n in range(dim - 1):
        assert comm[n, n] == pytest.approx(1.0, abs=1e-12)
    # truncation breaks the commutator only in the last element
    assert comm[dim - 1, dim - 1] == pytest.approx(1.0 - dim, abs=1e-12)


def test_lift_identity_and_single_mode_action():
    space = ProductSpace.of_dims(4, 4)
    lifted = lift(identity(4), 0, space)
    assert np.allclose(lifted.dense(), np.eye(16))

    a0 = lift(annihilation(4), 0, space)
    a1 = lift(annihilation(4), 1, space)
    psi = ket(space, (1, 1))
    assert np.allclose(a0.matvec(psi), ket(space, (0, 1)))
    assert np.allclose(a1.matvec(psi), ket(space, (1, 0)))


def test_lift_errors():
    space = ProductSpace.of_dims(4, 4)
    with pytest.raises(SpaceMismatchError):
        lift(annihilation(5), 0, space)
    with pytest.raises(SpaceMismatchError):
        lift(annihilation(4), 2, space)


def test_lifted_operators_commute_across_modes():
    space = ProductSpace.of_dims(4, 3, 2)
    a = lift(annihilation(4), 0, space).dense()
    c = lift(creation(3), 1, space).dense()
    assert np.abs(a @ c - c @ a).max() < 1e-12


def test_parity_operator_values():
    space = ProductSpace.of_dims(3, 3)
    p = parity_operator(space)
    for occ, want in (((0, 0), 1), ((1, 0), -1), ((1, 1), 1), ((2, 1), -1)):
        v = ket(space, occ)
        assert np.vdot(v, p.matvec(v)).real == pytest.approx(want)


def test_parity_squares_to_identity_exactly():
    space = ProductSpace.of_dims(4, 3)
    p = parity_operator(space).dense()
    assert np.array_equal(p @ p, np.eye(space.total_dim))


def test_parity_mode_subset_and_empty_error():
    space = ProductSpace.of_dims(3, 3)
    p0 = parity_operator(space, (0,))
    v = ket(space, (1, 1))
    assert np.vdot(v, p0.matvec(v)).real == pytest.approx(-1.0)
    with pytest.raises(SpaceMismatchError):
        parity_operator(space, ())


def test_tensor_products():
    s2 = ProductSpace.of_dims(2)
    zero = basis_state(s2, (0,))
    one = basis_state(s2, (1,))
    both = tensor(zero, zero)
    assert np.allclose(both.amps, ket(ProductSpace.of_dims(2, 2), (0, 0)))
    assert np.allclose(tensor(one, zero).amps, ket(ProductSpace.of_dims(2, 2), (1, 0)))

    from catforge.fockspace import StateVector

    plus = StateVector(s2, np.array([1, 1]) / np.sqrt(2))
    out = tensor(plus, zero)
    want = (ket(ProductSpace.of_dims(2, 2), (0, 0)) + ket(ProductSpace.of_dims(2, 2), (1, 0))) / np.sqrt(2)
    assert np.allclose(out.amps, want)
    assert out.norm() == pytest.approx(1.0, abs=1e-12)


def test_basis_ordering_first_mode_slowest():
    space = ProductSpace.of_dims(2, 3)
    assert space.index_of((0, 2)) == 2
    assert space.index_of((1, 0)) == 3
    occ = space.occupations()
    assert tuple(occ[3]) == (1, 0)


def test_default_dim_rule():
    assert default_dim(0.0) == 10
    assert default_dim(1.5) == 23
    assert default_dim(2.0) == 28
