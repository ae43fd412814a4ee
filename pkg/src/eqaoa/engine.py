"""QAOA evolution loops, parameter schedules and the parameter update rule."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DegeneracyError, DomainError
from .hamiltonian import NormalizedDiagonal, ProjectorHamiltonian, eval_projector
from .statevector import (
    DiagonalPhase,
    apply_mixer,
    expectation,
    init_uniform,
    probability_mass,
)

VARIANTS = ("full", "reduced")
GAMMA_FORMS = ("literal", "odd")


def _log(x, base):
    if base in (2, 2.0, "2"):
        return math.log2(x)
    if base in ("e", math.e):
        return math.log(x)
    return math.log(x, float(base))


def beta_default(n):
    """Mixer angle ``1/n``: rescales the spectrum of ``sum_m Z_m`` to [-1, 1]."""
    if n < 1:
        raise DomainError(f"n must be positive, got {n}")
    return 1.0 / n


def iteration_count(n, m, variant="full", log_base=2):
    """Depth of a scheduled run.

    ``full``: ``ceil(n log m / sqrt 2)``; ``reduced``:
    ``ceil(n log(2m/n) / sqrt 2)``.
    """
    if n < 1:
        raise DomainError(f"n must be positive, got {n}")
    if m < 2:
        raise DomainError(f"iteration count needs m >= 2, got {m}")
    if variant == "full":
        arg = m
    elif variant == "reduced":
        arg = 2 * m / n
    else:
        raise DomainError(f"unknown schedule variant {variant!r}")
    return max(1, math.ceil(n * _log(arg, log_base) / math.sqrt(2)))


def max_turns(n, m, variant="full", log_base=2):
    """Largest ``t`` in ``gamma_s = (2t+1) pi``: ``log m`` (full) or ``ceil(log 2mn)`` (reduced)."""
    if variant == "full":
        return _log(m, log_base)
    return math.ceil(_log(2 * m * n, log_base))


@dataclass(frozen=True)
class Schedule:
    """Fixed QAOA parameter schedule for one problem size.

    ``p_max`` defaults to :func:`iteration_count` and ``beta`` to ``1/n``.
    """

    n: int
    m: int
    variant: str = "full"
    gamma_form: str = "literal"
    log_base: object = 2
    p_max: int | None = None
    beta: float | None = None

    def __post_init__(self):
        if self.variant not in VARIANTS:
            raise DomainError(f"variant must be one of {VARIANTS}, got {self.variant!r}")
        if self.gamma_form not in GAMMA_FORMS:
            raise DomainError(f"gamma_form must be one of {GAMMA_FORMS}, got {self.gamma_form!r}")
        if self.p_max is None:
            object.__setattr__(self, "p_max", iteration_count(self.n, self.m, self.variant, self.log_base))
        if self.beta is None:
            object.__setattr__(self, "beta", beta_default(self.n))
        if self.p_max < 1:
            raise DomainError(f"p_max must be >= 1, got {self.p_max}")
        if not self.beta > 0:
            raise DomainError(f"beta must be positive, got {self.beta}")

    def gamma(self, p):
        return gamma_schedule(p, self.n, self.m, self)

    def gammas(self):
        return [self.gamma(p) for p in range(1, self.p_max + 1)]

    def angles(self):
        """``[(gamma_p, beta_p)]`` for ``p = 1..p_max``."""
        return [(g, self.beta) for g in self.gammas()]


def gamma_schedule(p, n, m, schedule):
    """Global phase ``gamma_s`` applied at iteration ``p`` (1-based).

    literal: ``(floor(2 sqrt2 p / n) + 1) pi`` for both variants.
    odd, full: ``(2 floor(sqrt2 p / n) + 1) pi``.
    odd, reduced: ``(2 floor(t_max p / p_max) + 1) pi``, ``t_max = ceil(log 2mn)``.
    """
    if not 1 <= p <= schedule.p_max:
        raise DomainError(f"iteration {p} outside [1, {schedule.p_max}]")
    if schedule.gamma_form == "literal":
        k = math.floor(2 * math.sqrt(2) * p / n) + 1
    elif schedule.variant == "full":
        k = 2 * math.floor(math.sqrt(2) * p / n) + 1
    else:
        t_max = max_turns(n, m, "reduced", schedule.log_base)
        k = 2 * ((t_max * p) // schedule.p_max) + 1
    return k * math.pi


@dataclass(frozen=True)
class RunConfig:
    schedule: Schedule
    target: frozenset
    record_expectation: bool = False
    mixer_form: str = "direct"

    def __post_init__(self):
        target = frozenset(int(z) for z in self.target)
        if not target:
            raise DomainError("run target set must be nonempty")
        object.__setattr__(self, "target", target)


@dataclass(frozen=True)
class IterationRecord:
    p: int
    gamma_s: float
    target_probability: float
    expectation: float | None = None


@dataclass
class Trajectory:
    records: list = field(default_factory=list)
    state: object = None

    @property
    def max_target_probability(self):
        return max((r.target_probability for r in self.records), default=0.0)

    @property
    def target_probabilities(self):
        return np.array([r.target_probability for r in self.records])

    @property
    def gammas(self):
        return np.array([r.gamma_s for r in self.records])

    def __len__(self):
        return len(self.records)


def _evolve(n, values, gamma_of, config):
    schedule = config.schedule
    target = np.fromiter(sorted(config.target), dtype=np.int64)
    phase = DiagonalPhase(values)
    state = init_uniform(n)
    traj = Trajectory()
    for p in range(1, schedule.p_max + 1):
        g = gamma_of(p)
        phase.apply(state, g)
        apply_mixer(state, schedule.beta, config.mixer_form)
        e = expectation(state, values) if config.record_expectation else None
        traj.records.append(IterationRecord(p, g, probability_mass(state, target), e))
    traj.state = state
    return traj


def _gamma_source(config, gamma_s_schedule):
    sched = config.schedule
    if gamma_s_schedule is None:
        return lambda p: gamma_schedule(p, sched.n, sched.m, sched)
    if callable(gamma_s_schedule):
        return gamma_s_schedule
    seq = list(gamma_s_schedule)
    if len(seq) < sched.p_max:
        raise DomainError(f"{len(seq)} angles supplied for {sched.p_max} iterations")
    return lambda p: seq[p - 1]


def run_standard(diag, config, gamma_s_schedule=None):
    """Standard QAOA from the uniform state: phase ``exp(-i gamma_p H_C)``, then the mixer.

    ``gamma_s_schedule`` (callable of ``p`` or sequence) overrides the
    schedule's angles.
    """
    if isinstance(diag, NormalizedDiagonal):
        n, values = diag.n, diag.values
    else:
        values = np.asarray(diag, dtype=np.float64)
        n = values.shape[0].bit_length() - 1
    return _evolve(n, values, _gamma_source(config, gamma_s_schedule), config)


def run_enhanced(h, config, gamma_s_schedule=None):
    """Enhanced QAOA: per-term phases ``exp(-i gamma_s gamma_j p_j)``.

    All projector gates are diagonal and commute, so their product is applied
    as one phase with eigenvalues ``D(z) = sum_{j subset of z} gamma_j``,
    materialized once.  ``gamma_s_schedule`` maps ``p`` to ``gamma_s`` and
    defaults to the schedule in ``config``.
    """
    if not h.terms:
        raise DomainError("enhanced run needs at least one projector term")
    values = np.asarray(h.to_diagonal(), dtype=np.float64)
    return _evolve(h.n, values, _gamma_source(config, gamma_s_schedule), config)


def update_parameters(h, samples, alpha):
    """Reweight terms by how often measurements land inside each projector.

    ``e_j`` is the fraction of samples with ``p_j = 1``; the new coefficients
    are ``e_j**alpha * gamma_j`` rescaled to unit L1 norm (``0**0 = 1``).
    """
    if alpha < 0:
        raise DomainError(f"alpha must be nonnegative, got {alpha}")
    z = np.asarray(list(samples), dtype=np.int64)
    if z.size == 0:
        raise DomainError("parameter update needs at least one sample")
    new = {}
    for j, c in h.terms.items():
        e = float(np.mean(eval_projector(np.int64(j), z)))
        w = 1.0 if alpha == 0 else e**alpha
        new[j] = w * c
    norm = sum(abs(c) for c in new.values())
    if norm == 0:
        raise DegeneracyError("every coefficient vanished after the update")
    return ProjectorHamiltonian(h.n, {j: c / norm for j, c in new.items()})
