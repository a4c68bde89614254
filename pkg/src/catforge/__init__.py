"""catforge: truncated Fock-space simulation of Bell-cat preparation in
coupled Kerr parametric oscillators."""

from .fockspace import (
    ModeSpace,
    Operator,
    ProductSpace,
    StateVector,
    annihilation,
    basis_state,
    creation,
    default_dim,
    identity,
    lift,
    number_operator,
    parity_operator,
    spectral_dim,
    tensor,
)
from .states import (
    BellKind,
    Displacement,
    SignPattern,
    bell_cat,
    cat,
    cat_norm,
    coherent,
    multimode_cat,
    nu_coefficients,
    proto_bell,
)
from .hamiltonian import (
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
from .protocol import (
    DriveParams,
    DriveSchedule,
    ProtocolSpec,
    Segment,
    assert_schedule_constraints,
    bell_init_protocol,
    diabatic_switchoff,
    multimode_append_protocol,
    rotation_loop,
    sigma_from_signs,
    solve_alpha_for_phase,
    tanh_ramp,
)
from .evolver import EvolveConfig, Trajectory, gap_scan, propagate, record_fidelity
from .analysis import (
    BerrySpec,
    PhaseSpaceGrid,
    bell_projection_map,
    berry_phase_per_loop,
    berry_phase_quadrature,
    delta_berry,
    extract_relative_phase,
    fidelity,
    total_parity_expectation,
    wigner,
)

__version__ = "0.1.0"
