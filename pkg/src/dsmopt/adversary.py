"""Closed-loop worst-case inputs against arbitrary ADCs.

The adversary keeps its own copy of the shaping-filter state, driven by the
ADC's observed outputs.  At every step it picks the input that places the
next filtered error exactly halfway between two multiples of
|CB| * delta, so no choice of u[n] in delta*Z can make |q[n+1]| smaller
than |CB| * delta / 2.
"""
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import (ContractViolationError, IncompatibleLevelSetError,
                     PreconditionError)

__all__ = ['AdversaryState', 'AttackResult', 'attack', 'LOWER_BOUND_TOL']

LOWER_BOUND_TOL = 1e-12


class AdversaryState:
    """Filter state and input rule for one attack loop.

    Call :meth:`next_input` and :meth:`observe` in strict alternation.
    """

    def __init__(self, filt, delta):
        if filt.cb == 0.0:
            raise PreconditionError("filter has CB = 0; apply extract_delay first")
        if not delta > 0:
            raise ValueError(f"delta must be positive, got {delta!r}")
        self.filter = filt
        self.delta = float(delta)
        self.gain_row = (filt.c @ filt.a) / filt.cb
        self.x = np.zeros(filt.m)
        self._pending = None

    def rho(self):
        """Integer k whose half-level (2k+1)/2*delta is nearest gain_row @ x.

        Ties go to the smaller k.
        """
        return int(_kernels.half_level_index(float(self.gain_row @ self.x), self.delta))

    def next_input(self):
        """Emit r[n] = (2 rho + 1)/2 * delta - gain_row @ x[n]."""
        if self._pending is not None:
            raise RuntimeError("next_input called twice without observe")
        g = float(self.gain_row @ self.x)
        k = _kernels.half_level_index(g, self.delta)
        r = (2.0 * k + 1.0) / 2.0 * self.delta - g
        # exactly |r| <= delta/2; the subtraction can overshoot by an ulp
        half = self.delta / 2.0
        r = min(half, max(-half, r))
        if not -1.0 <= r <= 1.0:
            raise ContractViolationError(
                f"adversarial input {r!r} left [-1, 1]; delta={self.delta} exceeds 2?")
        self._pending = r
        return r

    def observe(self, u):
        """Advance the filter state with the ADC's response to the last input."""
        if self._pending is None:
            raise RuntimeError("observe called before next_input")
        f = self.filter
        self.x = f.a @ self.x + f.b * (self._pending - u)
        self._pending = None
        return float(f.c @ self.x)


@dataclass(frozen=True)
class AttackResult:
    r: np.ndarray
    u: np.ndarray
    q: np.ndarray  # q[0..N]; q[0] = 0
    min_abs_q: float  # over n >= 1
    bound: float  # |CB| * delta / 2

    @property
    def passed(self):
        return self.min_abs_q >= self.bound - LOWER_BOUND_TOL


def _check_level(u, delta):
    m = u / delta
    if not np.isfinite(m) or abs(m - round(m)) > 1e-9 * max(1.0, abs(m)):
        raise IncompatibleLevelSetError(
            f"incompatible level set: ADC output {u!r} is not a multiple of delta={delta}")


def attack(adc, filt, delta, horizon):
    """Run the adversary against ``adc`` for ``horizon`` steps.

    ``adc`` is used as a black box (reset first, then stepped); only its
    outputs are observed.
    """
    if horizon < 1:
        raise ValueError("horizon must be at least 1")
    adv = AdversaryState(filt, delta)
    adc.reset()
    r = np.empty(horizon)
    u = np.empty(horizon)
    q = np.zeros(horizon + 1)
    for n in range(horizon):
        r[n] = adv.next_input()
        u[n] = adc.step(r[n])
        _check_level(u[n], adv.delta)
        q[n + 1] = adv.observe(u[n])
    return AttackResult(r, u, q, float(np.abs(q[1:]).min()),
                        abs(filt.cb) * adv.delta / 2.0)
