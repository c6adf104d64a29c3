"""Bang-bang pulse schedules and the controlled decoherence exponent.

Ideal instantaneous pi pulses at instants 0 < tau_1 < ... < tau_N < tau_f
turn the free exponent Gamma0(t) into a piecewise expression: between the
n-th and (n+1)-th pulse,

    Gamma_n(t) = (-1)^n Gamma0(t)
               + 2 sum_{j<=n} (-1)^(j+n) Gamma0(t - tau_j)
               + 2 sum_{j<=n} (-1)^(j+1) Gamma0(tau_j)
               + 4 sum_{j<=n} sum_{k<j} (-1)^(j+k+1) Gamma0(tau_j - tau_k),

    Gamma(t) = Gamma0(t) for t <= tau_1, Gamma_N(t) beyond the last pulse.

The last two sums depend only on the schedule, so they are evaluated once
per (schedule, bath) pair; each time evaluation is then O(N).  An
independent filter-function quadrature of the same quantity acts as the
oracle in the tests.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .quadrature import adaptive_panel_quad, oscillation_breakpoints
from .spectral import _TAIL_CUTOFFS, SpectralParams, gamma0_analytic


@dataclass(frozen=True)
class PulseSchedule:
    """Ordered pi-pulse instants within (0, tau_f), times in units 1/w_c.

    Immutable after construction; an empty schedule means free decay.
    """

    instants: tuple = ()
    tau_f: float = 10.0

    def __post_init__(self):
        object.__setattr__(self, "instants", tuple(float(x) for x in self.instants))
        if not self.tau_f > 0:
            raise ValueError(f"tau_f must be positive, got {self.tau_f}")
        taus = self.instants
        if any(b <= a for a, b in zip(taus, taus[1:])):
            raise ValueError("pulse instants must be strictly increasing")
        if taus and not (0.0 < taus[0] and taus[-1] < self.tau_f):
            raise ValueError("pulse instants must lie strictly inside (0, tau_f)")

    @property
    def n_pulses(self):
        return len(self.instants)

    @property
    def spacing(self):
        """Inter-pulse interval tau_f / (N + 1) for an equidistant train."""
        return self.tau_f / (self.n_pulses + 1)


def pdd_schedule(n_pulses: int, tau_f: float) -> PulseSchedule:
    """Equally spaced train: tau_n = n * tau_f / (N + 1), n = 1..N."""
    if n_pulses < 0:
        raise ValueError("n_pulses must be nonnegative")
    step = tau_f / (n_pulses + 1)
    return PulseSchedule(tuple(step * n for n in range(1, n_pulses + 1)), tau_f)


class ControlledDecoherence:
    """Gamma(t) evaluator for one (free exponent, schedule) pair.

    ``base`` is the free exponent Gamma0 as a vectorized callable of time.
    The schedule-only partial sums are cached at construction, so the
    instance is read-only afterwards and safe to share across threads.
    """

    def __init__(self, base, schedule: PulseSchedule, base_derivative=None):
        self.base = base
        self.schedule = schedule
        self.base_derivative = base_derivative
        taus = np.asarray(schedule.instants, dtype=float)
        self._taus = taus

        n = len(taus)
        static = np.zeros(n + 1)
        g_tau = base(taus) if n else np.zeros(0)
        for j in range(1, n + 1):
            inner = 0.0
            if j >= 2:
                diffs = taus[j - 1] - taus[: j - 1]
                signs = (-1.0) ** (j + np.arange(1, j) + 1)
                inner = 4.0 * float(np.dot(signs, base(diffs)))
            static[j] = static[j - 1] + 2.0 * (-1.0) ** (j + 1) * g_tau[j - 1] + inner
        self._static = static

    def _pulse_count(self, t):
        # number of pulses strictly before t; t == tau_j stays on the
        # left branch, which Gamma_n continuity makes equivalent
        return np.searchsorted(self._taus, t, side="left")

    def _evaluate(self, fn, t, include_static):
        tt = np.atleast_1d(np.asarray(t, dtype=float))
        if np.any(tt < 0):
            raise ValueError("t must be nonnegative")
        n = self._pulse_count(tt)
        out = (-1.0) ** n * fn(tt)
        if include_static:
            out = out + self._static[n]
        for j in range(1, len(self._taus) + 1):
            mask = n >= j
            if not mask.any():
                break
            out[mask] += (
                2.0 * (-1.0) ** (j + n[mask]) * fn(tt[mask] - self._taus[j - 1])
            )
        return float(out[0]) if np.ndim(t) == 0 else out

    def __call__(self, t):
        return self._evaluate(self.base, t, include_static=True)

    def derivative(self, t):
        """dGamma/dt between pulses (the schedule-only sums are constant)."""
        if self.base_derivative is None:
            raise ValueError("no base derivative supplied")
        return self._evaluate(self.base_derivative, t, include_static=False)


def controlled_gamma(base, schedule: PulseSchedule, t):
    """One-shot Gamma(t); build a :class:`ControlledDecoherence` instead
    when sweeping many times against the same schedule."""
    return ControlledDecoherence(base, schedule)(t)


def controlled_gamma_quadrature(p: SpectralParams, schedule: PulseSchedule,
                                t, tol=1e-9):
    """Gamma(t) via the filter-function integral (independent oracle).

    Evaluates

        Gamma(t) = int_0^inf  J(w) / (2 w^2) * |f_n(w, t)|^2 dw,
        f_n(w,t) = 1 + (-1)^(n+1) e^(iwt) + 2 sum_{j<=n} (-1)^j e^(iw tau_j),

    with n the number of pulses before t, using the same adaptive panel
    scheme as the free-exponent oracle.
    """
    t = float(t)
    if t < 0:
        raise ValueError("t must be nonnegative")
    if t == 0.0 or p.eta == 0.0:
        return 0.0
    taus = np.asarray([x for x in schedule.instants if x < t], dtype=float)
    n = len(taus)
    u = p.omega_c * t
    v = p.omega_c * taus
    sign_t = (-1.0) ** (n + 1)
    signs_j = (-1.0) ** np.arange(1, n + 1)
    upper = _TAIL_CUTOFFS + 5.0 * p.s

    def integrand(x):
        f = 1.0 + sign_t * np.exp(1j * u * x)
        if n:
            f = f + 2.0 * (np.exp(1j * np.outer(x, v)) * signs_j).sum(axis=1)
        mod2 = np.abs(f) ** 2
        with np.errstate(divide="ignore", invalid="ignore"):
            val = 0.5 * x ** (p.s - 2.0) * np.exp(-x) * mod2
        return np.where(x > 0, val, 0.0)

    pts = oscillation_breakpoints(u, upper)
    return p.eta * adaptive_panel_quad(integrand, 0.0, upper, pts, rel_tol=tol)


def free_decoherence(p: SpectralParams):
    """Gamma0 for the given bath as a vectorized callable of time."""
    def base(t):
        return gamma0_analytic(p, t)
    return base
