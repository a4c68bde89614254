"""Typed drive-schedule segments and protocol factories.

A `DriveSchedule` maps time to the instantaneous control values
{K_j, eps_j, K_c, eps_c} through an ordered list of closed-form segments
(tanh switch-on ramps, holds, linear ramps, drive-phase rotations, and
zero-duration steps). Schedules also track the branch-resolved displacement
alpha_j(t) per mode, which a 2 pi advance of the drive phase maps to
-alpha_j; constraint-tagged couplers keep eps_c(t) = s K_c alpha_j alpha_k
at every instant.

Protocol factories assemble the Bell initialization (diabatic cross-Kerr
switch-on followed by adiabatic tanh ramps along a coupler constraint), the
diabatic switch-off used for robustness studies, Berry rotation loops, and
the sequential multi-mode appending construction.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field, replace

import numpy as np
from scipy.optimize import brentq

from .errors import ConstraintViolationError, PhaseRangeError
from .analysis import delta_berry
from .fockspace import (
    ProductSpace,
    StateVector,
    basis_state,
    default_dim,
    parity_diagonal,
    tensor,
)
from .hamiltonian import ChainParams, CouplingParams, KpoParams
from .states import BellKind, SignPattern, multimode_cat

_TANH_NORM = math.tanh(4.0) + 1.0


def tanh_shape(u: float) -> float:
    """Switch-on profile (tanh(8u - 4) + 1) / (tanh 4 + 1); exactly 1 at u = 1."""
    if u <= 0.0:
        return (math.tanh(-4.0) + 1.0) / _TANH_NORM
    if u >= 1.0:
        return 1.0
    return (math.tanh(8.0 * u - 4.0) + 1.0) / _TANH_NORM


@dataclass(frozen=True)
class DriveParams:
    """Instantaneous control values for all modes and nearest-neighbor couplers."""

    eps: tuple[complex, ...]
    kerr: tuple[float, ...]
    coupler_eps: tuple[complex, ...]
    coupler_kerr: tuple[float, ...]

    def __post_init__(self):
        if len(self.coupler_eps) != len(self.coupler_kerr):
            raise ValueError("coupler arrays must have equal length")
        if len(self.eps) != len(self.kerr):
            raise ValueError("mode arrays must have equal length")

    @property
    def n_modes(self) -> int:
        return len(self.eps)

    def with_value(self, fieldname: str, index: int, value) -> "DriveParams":
        vals = list(getattr(self, fieldname))
        vals[index] = value
        return replace(self, **{fieldname: tuple(vals)})

    def to_chain(self) -> ChainParams:
        return ChainParams(
            tuple(KpoParams(k, e) for k, e in zip(self.kerr, self.eps)),
            tuple(CouplingParams(k, e) for k, e in zip(self.coupler_kerr, self.coupler_eps)),
        )

    @staticmethod
    def idle(kerr: tuple[float, ...]) -> "DriveParams":
        n = len(kerr)
        return DriveParams((0j,) * n, tuple(kerr), (0j,) * max(n - 1, 0), (0.0,) * max(n - 1, 0))


@dataclass(frozen=True)
class ControlState:
    """Drive parameters plus the branch-tracked displacement per mode."""

    params: DriveParams
    alpha: tuple[complex, ...]


class Segment:
    """One closed-form piece of a schedule. Subclasses are frozen dataclasses
    carrying a `duration` and a `kind` tag."""

    def at(self, t_local: float, start: ControlState) -> ControlState:
        raise NotImplementedError

    def end(self, start: ControlState) -> ControlState:
        return self.at(self.duration, start)

    def coupler_signs(self) -> tuple[tuple[int, int], ...]:
        """Couplers whose drive this segment generates from a constraint."""
        return ()


@dataclass(frozen=True)
class Hold(Segment):
    duration: float
    kind: str = field(default="hold", init=False)

    def __post_init__(self):
        if self.duration <= 0:
            raise ValueError("hold needs a positive duration")

    def at(self, t_local, start):
        return start


@dataclass(frozen=True)
class ParamStep(Segment):
    """Instantaneous reassignment of named parameters (duration zero)."""

    assignments: tuple[tuple[str, int, complex], ...]
    kind: str = field(default="step", init=False)
    duration: float = field(default=0.0, init=False)

    def at(self, t_local, start):
        params = start.params
        alpha = list(start.alpha)
        for fieldname, idx, value in self.assignments:
            if fieldname in ("kerr", "coupler_kerr"):
                value = float(complex(value).real)
            params = params.with_value(fieldname, idx, value)
            if fieldname == "eps":
                alpha[idx] = cmath.sqrt(complex(value) / params.kerr[idx])
        return ControlState(params, tuple(alpha))


@dataclass(frozen=True)
class LinearRamp(Segment):
    """Linear interpolation of named parameters from their current values."""

    duration: float
    targets: tuple[tuple[str, int, complex], ...]
    kind: str = field(default="linear_ramp", init=False)

    def __post_init__(self):
        if self.duration <= 0:
            raise ValueError("linear ramp needs a positive duration; use a step instead")

    def at(self, t_local, start):
        u = min(max(t_local / self.duration, 0.0), 1.0)
        params = start.params
        alpha = list(start.alpha)
        for fieldname, idx, target in self.targets:
            begin = getattr(start.params, fieldname)[idx]
            value = begin + (complex(target) - begin) * u
            if fieldname in ("kerr", "coupler_kerr"):
                value = value.real
            params = params.with_value(fieldname, idx, value)
            if fieldname == "eps":
                alpha[idx] = cmath.sqrt(complex(value) / params.kerr[idx])
        return ControlState(params, tuple(alpha))


@dataclass(frozen=True)
class DriveRamp(Segment):
    """Tanh switch-on of two-photon drives, with optional per-mode delays and
    constraint-tagged couplers following eps_c = s K_c alpha_j alpha_k."""

    duration: float
    eps_targets: tuple[tuple[int, complex], ...]
    delays: tuple[tuple[int, float], ...] = ()
    signs: tuple[tuple[int, int], ...] = ()
    kind: str = field(default="tanh_ramp", init=False)

    def __post_init__(self):
        if self.duration <= 0:
            raise ValueError("ramp needs a positive duration")
        for _, d in self.delays:
            if d < 0 or d >= self.duration:
                raise ValueError("delay must lie in [0, duration)")

    def _mode_values(self, t_local: float, kerr) -> dict[int, tuple[complex, complex]]:
        delays = dict(self.delays)
        out = {}
        for mode, eps_f in self.eps_targets:
            d = delays.get(mode, 0.0)
            if t_local < d:
                out[mode] = (0j, 0j)
                continue
            u = (t_local - d) / (self.duration - d)
            s = tanh_shape(u)
            eps = complex(eps_f) * s
            alpha = cmath.sqrt(complex(eps_f) / kerr[mode]) * math.sqrt(s)
            out[mode] = (eps, alpha)
        return out

    def at(self, t_local, start):
        params = start.params
        alpha = list(start.alpha)
        for mode, (eps, al) in self._mode_values(t_local, start.params.kerr).items():
            params = params.with_value("eps", mode, eps)
            alpha[mode] = al
        for c, s in self.signs:
            eps_c = s * params.coupler_kerr[c] * alpha[c] * alpha[c + 1]
            params = params.with_value("coupler_eps", c, eps_c)
        return ControlState(params, tuple(alpha))

    def coupler_signs(self):
        return self.signs


@dataclass(frozen=True)
class Rotation(Segment):
    """Uniform rotation of one drive phase: phi advances 2 pi per loop, |alpha|
    constant, so each loop maps alpha -> -alpha on the branch cut."""

    mode: int
    loops: int
    period: float
    track_coupler: bool = True
    signs: tuple[tuple[int, int], ...] = ()
    kind: str = field(default="rotate", init=False)

    def __post_init__(self):
        if self.loops <= 0 or self.period <= 0:
            raise ValueError("rotation needs positive loops and period")
        object.__setattr__(self, "duration", self.loops * self.period)

    def _alpha_mode(self, t_local: float, start: ControlState) -> complex:
        if t_local >= self.duration:
            return start.alpha[self.mode] * (-1) ** self.loops
        return start.alpha[self.mode] * cmath.exp(1j * math.pi * t_local / self.period)

    def at(self, t_local, start):
        al = self._alpha_mode(t_local, start)
        alpha = list(start.alpha)
        alpha[self.mode] = al
        params = start.params.with_value("eps", self.mode, start.params.kerr[self.mode] * al * al)
        if self.track_coupler:
            for c, s in self.signs:
                eps_c = s * params.coupler_kerr[c] * alpha[c] * alpha[c + 1]
                params = params.with_value("coupler_eps", c, eps_c)
        return ControlState(params, tuple(alpha))

    def coupler_signs(self):
        return self.signs if self.track_coupler else ()


class DriveSchedule:
    """Immutable piecewise-defined control schedule.

    `params(t)` and `alpha(t)` are pure functions of t, defined on
    [0, total_duration]; zero-duration steps act between segments.
    """

    def __init__(self, initial: DriveParams, segments):
        self.initial = initial
        self.segments = tuple(segments)
        alpha0 = tuple(
            cmath.sqrt(complex(e) / k) for e, k in zip(initial.eps, initial.kerr)
        )
        starts = [ControlState(initial, alpha0)]
        t = 0.0
        offsets = []
        for seg in self.segments:
            offsets.append(t)
            t += seg.duration
            starts.append(seg.end(starts[-1]))
        self.total_duration = t
        self._offsets = np.array(offsets)
        self._ends = np.array([o + s.duration for o, s in zip(offsets, self.segments)])
        self._starts = tuple(starts)

    def _locate(self, t: float) -> tuple[int, float]:
        if t < -1e-12 or t > self.total_duration + 1e-12:
            raise ValueError(f"t={t} outside schedule span [0, {self.total_duration}]")
        t = min(max(t, 0.0), self.total_duration)
        idx = int(np.searchsorted(self._ends, t, side="left"))
        while idx < len(self.segments) and self.segments[idx].duration == 0.0:
            idx += 1
        if idx >= len(self.segments):
            return len(self.segments) - 1, self.segments[-1].duration
        return idx, t - self._offsets[idx]

    def state_at(self, t: float) -> ControlState:
        idx, local = self._locate(t)
        return self.segments[idx].at(local, self._starts[idx])

    def params(self, t: float) -> DriveParams:
        return self.state_at(t).params

    def alpha(self, t: float) -> tuple[complex, ...]:
        return self.state_at(t).alpha

    def chain(self, t: float) -> ChainParams:
        return self.params(t).to_chain()

    def end_params(self) -> DriveParams:
        return self._starts[-1].params

    def boundaries(self) -> np.ndarray:
        """Segment edges, mandatory integrator break points."""
        times = np.concatenate(([0.0], self._ends))
        return np.unique(times)

    def coupler_signs(self) -> dict[int, int]:
        tags: dict[int, int] = {}
        for seg in self.segments:
            tags.update(dict(seg.coupler_signs()))
        return tags

    def tagged_segments(self):
        for off, seg in zip(self._offsets, self.segments):
            if seg.coupler_signs():
                yield float(off), seg

    def chunks(self):
        """(t_start, t_end, params_fn) per nonzero-duration segment, with step
        effects folded into the segment start states. params_fn takes global
        time and is right-continuous at t_start, so integrators never see the
        pre-step values of a discontinuity."""
        out = []
        for off, seg, start in zip(self._offsets, self.segments, self._starts):
            if seg.duration == 0.0:
                continue

            def params_fn(t, _seg=seg, _off=off, _start=start):
                local = min(max(t - _off, 0.0), _seg.duration)
                return _seg.at(local, _start).params

            out.append((float(off), float(off + seg.duration), params_fn))
        return out


@dataclass(frozen=True)
class ProtocolSpec:
    """Initial state, schedule, and target of one preparation protocol."""

    initial_state: StateVector
    schedule: DriveSchedule
    target_state: StateVector
    target_factory: object = None  # optional t -> StateVector
    kind: BellKind | None = None
    sigma: SignPattern | None = None
    parity: int = +1

    def __post_init__(self):
        pi_init = _parity_of(self.initial_state)
        pi_target = _parity_of(self.target_state)
        if abs(pi_init - pi_target) > 1e-9:
            raise ValueError(
                f"initial total parity {pi_init:+.3f} differs from target {pi_target:+.3f}"
            )


def _parity_of(psi: StateVector) -> float:
    signs = parity_diagonal(psi.space)
    return float((signs * np.abs(psi.amps) ** 2).sum())


def tanh_ramp(tau: float, final: complex, mode: int = 0) -> DriveRamp:
    """Tanh switch-on of one two-photon drive to `final`, reached exactly at tau."""
    if tau <= 0:
        raise ValueError("ramp duration must be positive")
    return DriveRamp(tau, ((mode, complex(final)),))


def sigma_from_signs(n_modes: int, signs: dict[int, int]) -> SignPattern:
    """Sign pattern realized by coupler constraint signs: sigma_{j+1} = s_j sigma_j."""
    sigma = [1]
    for c in range(n_modes - 1):
        sigma.append(sigma[-1] * signs.get(c, 1))
    return SignPattern(tuple(sigma))


def bell_init_protocol(
    kind: BellKind,
    alpha_f: tuple[float, float],
    kerr: tuple[float, float] = (1.0, 1.0),
    k12: float = 1.0,
    tau: float = 20.0,
    stagger: float = 0.25,
    dims=None,
) -> ProtocolSpec:
    """Fock-to-Bell initialization: cross-Kerr stepped on, drives tanh-ramped
    along eps_12 = s K_12 alpha_1 alpha_2.

    The Phi kinds start from |0,0>; the Psi kinds start from |1,0> and delay
    the second drive by `stagger * tau` so alpha_2/alpha_1 -> 0 at early
    times, selecting the |1,0> limit of the odd manifold.
    """
    a1, a2 = complex(alpha_f[0]), complex(alpha_f[1])
    if abs(a1) == 0 or abs(a2) == 0:
        raise ValueError("target amplitudes must be nonzero")
    if stagger < 0:
        raise ValueError("stagger fraction must be >= 0")
    if tau <= 0:
        raise ValueError("ramp duration must be positive")
    s = kind.constraint_sign
    parity = kind.total_parity
    if dims is None:
        dims = (default_dim(a1), default_dim(a2))
    dims = (int(dims[0]), int(dims[1]))
    space = ProductSpace.of_dims(*dims)

    delays = ((1, stagger * tau),) if parity == -1 and stagger > 0 else ()
    segments = [
        ParamStep((("coupler_kerr", 0, k12),)),
        DriveRamp(
            tau,
            ((0, kerr[0] * a1 * a1), (1, kerr[1] * a2 * a2)),
            delays=delays,
            signs=((0, s),),
        ),
    ]
    schedule = DriveSchedule(DriveParams.idle(tuple(kerr)), segments)

    occ0 = (0, 0) if parity == +1 else (1, 0)
    initial = basis_state(space, occ0)
    sigma = sigma_from_signs(2, {0: s})
    target = multimode_cat((a1, a2), sigma, parity, dims)

    def target_factory(t: float) -> StateVector:
        al = schedule.alpha(t)
        return multimode_cat(al, sigma, parity, dims)

    return ProtocolSpec(initial, schedule, target, target_factory, kind, sigma, parity)


def diabatic_switchoff(tau_off: float, coupler: int = 0) -> list[Segment]:
    """Step the two-mode drive to zero, then ramp the cross-Kerr off over tau_off.

    During the ramp the coupler constraint is deliberately violated. tau_off = 0
    steps both parameters.
    """
    if tau_off < 0:
        raise ValueError("switch-off time must be >= 0")
    step = ParamStep((("coupler_eps", coupler, 0j),))
    if tau_off == 0:
        return [step, ParamStep((("coupler_kerr", coupler, 0.0),))]
    return [step, LinearRamp(tau_off, (("coupler_kerr", coupler, 0.0),))]


def rotation_loop(
    mode: int,
    loops: int,
    period: float,
    track_coupler: bool = True,
    allow_odd: bool = False,
    signs: tuple[tuple[int, int], ...] = (),
) -> Rotation:
    """Adiabatic rotation of one drive phase; `loops` full 2 pi advances.

    Even loop counts return alpha to itself and cancel the parity phase; odd
    counts (alpha -> -alpha) must be enabled explicitly via allow_odd.
    """
    if loops % 2 != 0 and not allow_odd:
        raise ValueError("odd loop counts flip the cat parity phase; pass allow_odd=True")
    return Rotation(mode, loops, period, track_coupler, signs)


def multimode_append_protocol(
    existing: ProtocolSpec,
    alpha_n: complex,
    kerr_n: float,
    k_coupler: float,
    tau: float,
    sign: int = +1,
    dim_n: int | None = None,
) -> ProtocolSpec:
    """Extend an N-1 mode cat protocol by one mode: step on the new cross-Kerr,
    then ramp eps_N and eps_{N-1,N} together under the coupler constraint."""
    if sign not in (-1, 1):
        raise ValueError("sign must be +1 or -1")
    if tau <= 0:
        raise ValueError("ramp duration must be positive")
    old = existing.schedule
    n_old = old.initial.n_modes
    end = old.end_params()
    try:
        from .hamiltonian import check_constraints

        check_constraints(end.to_chain())
    except ConstraintViolationError as err:
        raise ConstraintViolationError(
            f"existing protocol breaks its coupler constraint: {err}", coupler=err.coupler
        ) from err

    a_n = complex(alpha_n)
    if dim_n is None:
        dim_n = default_dim(a_n)
    kerr = tuple(old.initial.kerr) + (float(kerr_n),)
    initial_params = DriveParams.idle(kerr)
    new_coupler = n_old - 1
    segments = list(old.segments) + [
        ParamStep((("coupler_kerr", new_coupler, float(k_coupler)),)),
        DriveRamp(tau, ((n_old, kerr_n * a_n * a_n),), signs=((new_coupler, sign),)),
    ]
    schedule = DriveSchedule(initial_params, segments)

    dims = existing.initial_state.space.dims + (int(dim_n),)
    initial = tensor(existing.initial_state, basis_state(ProductSpace.of_dims(int(dim_n)), (0,)))

    signs_map = schedule.coupler_signs()
    sigma = sigma_from_signs(n_old + 1, signs_map)
    parity = existing.parity
    alphas_final = old.alpha(old.total_duration) + (a_n,)
    target = multimode_cat(alphas_final, sigma, parity, dims)

    def target_factory(t: float) -> StateVector:
        return multimode_cat(schedule.alpha(t), sigma, parity, dims)

    return ProtocolSpec(initial, schedule, target, target_factory, existing.kind, sigma, parity)


def solve_alpha_for_phase(target_phase: float, loops: int, asymptote_ok: bool = False) -> float:
    """|alpha| whose even/odd Berry-phase difference after `loops` rotations
    equals target_phase; bracketed root-finding on |alpha|^2."""
    if loops % 2 != 0 or loops <= 0:
        raise ValueError("loops must be a positive even count")
    sup = loops * math.pi
    if target_phase <= 0.0 or target_phase >= sup:
        if asymptote_ok and target_phase == 0.0:
            return math.inf
        raise PhaseRangeError(
            f"target phase {target_phase} outside the attainable range (0, {sup})",
            max_attainable=sup,
        )

    def f(x):
        return delta_berry(math.sqrt(x), loops) - target_phase

    # sinh(2x) stays finite up to x = 350
    x = brentq(f, 1e-12, 350.0, xtol=1e-14, rtol=8.9e-16)
    return math.sqrt(x)


def assert_schedule_constraints(
    schedule: DriveSchedule, n_samples: int = 1000, rel_tol: float = 1e-10, seed: int = 7
) -> float:
    """Check the coupler relation eps_c = s K_c alpha_j alpha_k at random times
    within every constraint-tagged segment. Returns the worst relative defect."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    tagged = list(schedule.tagged_segments())
    if not tagged:
        return 0.0
    per = max(n_samples // len(tagged), 1)
    for offset, seg in tagged:
        ts = offset + rng.uniform(0.0, seg.duration, size=per)
        for t in ts:
            state = schedule.state_at(float(t))
            for c, s in seg.coupler_signs():
                want = s * state.params.coupler_kerr[c] * state.alpha[c] * state.alpha[c + 1]
                have = state.params.coupler_eps[c]
                scale = max(abs(want), abs(have), 1e-300)
                defect = abs(have - want) / scale
                worst = max(worst, defect)
                if defect > rel_tol:
                    raise ConstraintViolationError(
                        f"coupler {c} off constraint by {defect:.3e} at t={t:.6f}", coupler=c
                    )
    return worst
