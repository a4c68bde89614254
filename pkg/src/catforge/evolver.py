"""Time-dependent Schrödinger propagation of state vectors under drive schedules.

Solves i d|psi>/dt = H(t)|psi> (hbar = 1) with an adaptive embedded
Runge-Kutta method (DOP853 by default) on the complex amplitude vector;
H(t) is applied through cached operator templates with scalar coefficients
evaluated at the integrator's internal abscissae. Segment boundaries are
mandatory break points, and zero-duration steps carry the state across
unchanged.

The matrix-vector product is single-threaded and deterministic; distinct
runs are independent and may execute in parallel processes.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import solve_ivp

from .errors import IntegrationFailureError, NormDriftWarning, TruncationLeakWarning
from .fockspace import ProductSpace, StateVector, parity_diagonal
from .hamiltonian import ChainTemplates
from .protocol import DriveSchedule


@dataclass(frozen=True)
class EvolveConfig:
    """Integrator tolerances and recording choices for one propagation."""

    rel_tol: float = 1e-9
    abs_tol: float = 1e-12
    max_step: float = np.inf
    store_points: int = 201
    store_every: int = 1
    method: str = "DOP853"
    records: tuple[str, ...] = ("norm", "total_parity")
    leak_threshold: float = 1e-8

    def __post_init__(self):
        if self.rel_tol <= 0 or self.abs_tol <= 0:
            raise ValueError("tolerances must be positive")
        if self.store_points < 2:
            raise ValueError("store_points must be >= 2")
        if self.store_every < 1:
            raise ValueError("store_every must be >= 1")


@dataclass(frozen=True)
class Trajectory:
    """Time grid, stored states, and scalar series from one propagation run."""

    space: ProductSpace
    times: np.ndarray
    states: tuple[StateVector, ...]
    state_indices: tuple[int, ...]
    records: dict[str, np.ndarray] = field(default_factory=dict)

    def final_state(self) -> StateVector:
        return self.states[-1]

    def state_times(self) -> np.ndarray:
        return self.times[list(self.state_indices)]

    def norm_drift(self) -> float:
        return float(np.abs(self.records["norm"] - 1.0).max())


def propagate(
    schedule: DriveSchedule,
    psi0: StateVector,
    cfg: EvolveConfig = EvolveConfig(),
    templates: ChainTemplates | None = None,
    target_factory=None,
) -> Trajectory:
    """Propagate psi0 under the schedule and record the requested series.

    Raises IntegrationFailureError when the stepper stalls; warns when the
    norm drifts beyond 10 * rel_tol or population reaches the top two Fock
    levels of any mode.
    """
    space = psi0.space
    if space.n_modes != schedule.initial.n_modes:
        raise ValueError(
            f"schedule drives {schedule.initial.n_modes} modes, state has {space.n_modes}"
        )
    if abs(psi0.norm() - 1.0) > 1e-10:
        raise ValueError("initial state must be normalized")
    if templates is None:
        templates = ChainTemplates(space)

    total = schedule.total_duration
    times = [0.0]
    ys = [psi0.amps.astype(complex)]
    y = ys[0]

    for t0, t1, params_fn in schedule.chunks():

        def rhs(t, vec, _fn=params_fn):
            return -1j * templates.matvec(_fn(t).to_chain(), vec)

        n = max(int(round(cfg.store_points * (t1 - t0) / total)), 2)
        t_eval = np.linspace(t0, t1, n + 1)[1:]
        sol = solve_ivp(
            rhs,
            (t0, t1),
            y,
            method=cfg.method,
            rtol=cfg.rel_tol,
            atol=cfg.abs_tol,
            max_step=cfg.max_step,
            t_eval=t_eval,
            dense_output=False,
        )
        if not sol.success:
            raise IntegrationFailureError(
                f"integration failed in [{t0}, {t1}]: {sol.message}", time=float(sol.t[-1])
            )
        for k in range(sol.y.shape[1]):
            ys.append(sol.y[:, k].copy())
        times.extend(t_eval.tolist())
        y = ys[-1]

    times = np.asarray(times)
    records = _compute_records(space, templates, schedule, times, ys, cfg, target_factory)
    _check_health(space, times, ys, records, cfg)

    idx = tuple(range(0, len(times), cfg.store_every))
    if idx[-1] != len(times) - 1:
        idx = idx + (len(times) - 1,)
    states = tuple(StateVector(space, ys[i]) for i in idx)
    return Trajectory(space, times, states, idx, records)


def _compute_records(space, templates, schedule, times, ys, cfg, target_factory):
    records: dict[str, np.ndarray] = {}
    arr = np.column_stack(ys)
    norms = np.linalg.norm(arr, axis=0)
    if "norm" in cfg.records:
        records["norm"] = norms
    if "total_parity" in cfg.records:
        signs = parity_diagonal(space)
        records["total_parity"] = np.einsum("i,ik->k", signs, np.abs(arr) ** 2).real
    if "mode_parity" in cfg.records:
        for j in range(space.n_modes):
            signs = parity_diagonal(space, (j,))
            records[f"mode_parity_{j}"] = np.einsum("i,ik->k", signs, np.abs(arr) ** 2).real
    if "energy" in cfg.records:
        vals = np.empty(len(times))
        for k, t in enumerate(times):
            vals[k] = np.vdot(arr[:, k], templates.matvec(schedule.params(t).to_chain(), arr[:, k])).real
        records["energy"] = vals
    if target_factory is not None:
        vals = np.empty(len(times))
        for k, t in enumerate(times):
            tgt = target_factory(float(t))
            vals[k] = abs(np.vdot(tgt.amps, arr[:, k])) ** 2
        records["fidelity"] = vals
    return records


def _check_health(space, times, ys, records, cfg):
    norms = records.get("norm")
    if norms is None:
        norms = np.array([np.linalg.norm(y) for y in ys])
    drift = float(np.abs(norms - 1.0).max())
    if drift > 10.0 * cfg.rel_tol:
        warnings.warn(
            f"norm drifted by {drift:.2e} (budget {10 * cfg.rel_tol:.1e})",
            NormDriftWarning,
            stacklevel=3,
        )
    dims = space.dims
    worst = 0.0
    for y in ys[:: max(len(ys) // 32, 1)]:
        probs = np.abs(y.reshape(dims)) ** 2
        for j in range(space.n_modes):
            axes = tuple(k for k in range(space.n_modes) if k != j)
            marg = probs.sum(axis=axes)
            worst = max(worst, float(marg[-2:].sum()))
    if worst > cfg.leak_threshold:
        warnings.warn(
            f"population {worst:.2e} reached the top two Fock levels of a mode",
            TruncationLeakWarning,
            stacklevel=3,
        )


def record_fidelity(traj: Trajectory, target_factory) -> np.ndarray:
    """|<psi(t)|target(t)>|^2 over the stored states."""
    ts = traj.state_times()
    out = np.empty(len(ts))
    for k, (t, st) in enumerate(zip(ts, traj.states)):
        out[k] = abs(target_factory(float(t)).overlap(st)) ** 2
    return out


def gap_scan(
    schedule: DriveSchedule,
    times,
    parity: int,
    space: ProductSpace,
    templates: ChainTemplates | None = None,
    degeneracy_rtol: float = 1e-6,
) -> np.ndarray:
    """Spectral gap inside one total-parity sector along the schedule.

    The degenerate coherent manifold sits at the top of the rotating-frame
    spectrum; the gap is measured from the top eigenvalue cluster (detected
    at relative tolerance `degeneracy_rtol`) down to the next distinct level.
    """
    if parity not in (-1, 1):
        raise ValueError("parity must be +1 or -1")
    if templates is None:
        templates = ChainTemplates(space)
    mask = parity_diagonal(space) == parity
    gaps = np.empty(len(times))
    for k, t in enumerate(times):
        h = templates.matrix(schedule.params(float(t)).to_chain()).dense()
        sub = h[np.ix_(mask, mask)]
        evals = np.linalg.eigvalsh(sub)[::-1]
        top = evals[0]
        tol = degeneracy_rtol * max(1.0, abs(top))
        below = evals[evals < top - tol]
        if len(below) == 0:
            raise IntegrationFailureError(f"no distinct level below the manifold at t={t}")
        gaps[k] = top - below[0]
    return gaps
