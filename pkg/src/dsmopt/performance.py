"""Average error intensity of an ADC as seen through the shaping filter."""
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .adversary import attack
from .ensembles import ADVERSARIAL
from .errors import ContractViolationError, NonFiniteError, PreconditionError
from .lti import simulate

__all__ = ['PhiFunction', 'AwaiEstimate', 'awai', 'closed_loop',
           'measure_performance', 'optimal_performance']


@dataclass(frozen=True)
class PhiFunction:
    """Error weighting phi(q) = f(|q|) with f nonnegative and nondecreasing.

    Use :meth:`abs`, :meth:`square` or :meth:`custom`.  ``f`` must accept
    numpy arrays of magnitudes.
    """
    kind: str
    f: Callable

    @classmethod
    def abs(cls):
        return cls('abs', lambda m: m)

    @classmethod
    def square(cls):
        return cls('square', np.square)

    @classmethod
    def custom(cls, f, name='custom'):
        return cls(name, f)

    @classmethod
    def from_name(cls, name):
        if name == 'abs':
            return cls.abs()
        if name == 'square':
            return cls.square()
        raise ValueError(f"unknown phi {name!r}; expected 'abs' or 'square'")

    def __call__(self, q):
        out = self.f(np.abs(np.asarray(q, dtype=float)))
        return float(out) if np.ndim(out) == 0 else out


@dataclass(frozen=True)
class AwaiEstimate:
    """Finite-horizon proxies for limsup (1/N) sum phi(q[n])."""
    full_mean: float
    suffix_mean: float  # trailing ceil(N/2) samples; the primary proxy
    max_window_mean: float
    horizon: int
    window: int


def awai(q, phi, window=None):
    """Average intensity statistics of the sequence ``q`` under ``phi``.

    ``window`` defaults to ``ceil(N/2)``.
    """
    q = np.asarray(q, dtype=float).reshape(-1)
    n = q.size
    if n == 0:
        raise PreconditionError("awai needs a nonempty sequence")
    if window is None:
        window = -(-n // 2)
    if not 1 <= window <= n:
        raise PreconditionError(f"window must be in [1, {n}], got {window}")
    if not np.all(np.isfinite(q)):
        bad = np.flatnonzero(~np.isfinite(q))
        raise NonFiniteError(
            f"non-finite error signal at {bad.size} samples (first n={bad[0]}); "
            f"last finite values: {q[max(0, bad[0] - 3):bad[0]].tolist()}")
    vals = np.asarray(phi(q), dtype=float)
    csum = np.concatenate(([0.0], np.cumsum(vals)))
    tail = -(-n // 2)
    window_means = (csum[window:] - csum[:-window]) / window
    lo, hi = vals.min(), vals.max()
    # clip away cumsum rounding so the statistics stay inside [min, max]
    clip = lambda v: float(min(max(v, lo), hi))
    return AwaiEstimate(
        full_mean=clip(csum[-1] / n),
        suffix_mean=clip(vals[n - tail:].mean()),
        max_window_mean=clip(window_means.max()),
        horizon=n,
        window=window,
    )


def closed_loop(adc, filt, r):
    """Run ``adc`` on ``r`` from reset; returns (u, w, q) with q = G * (r - u)."""
    r = np.asarray(r, dtype=float)
    adc.reset()
    u = np.asarray(adc.run(r), dtype=float)
    bad = [i for i, v in enumerate(u) if not adc.quant.contains(v)]
    if bad:
        raise ContractViolationError(
            f"ADC emitted {u[bad[0]]!r} at n={bad[0]}, outside its level set")
    w = r - u
    return u, w, simulate(filt, w)


def measure_performance(adc, filt, phi, ensemble, horizon, window=None):
    """Worst suffix-mean intensity of ``adc`` over an input ensemble.

    Each member of ``ensemble`` is either an input sequence or
    :data:`dsmopt.ensembles.ADVERSARIAL`, which runs the closed-loop
    adversary for ``horizon`` steps.  Sequences are truncated to
    ``horizon``.  The result is a lower estimate of the worst case.
    """
    worst = -math.inf
    for member in ensemble:
        if member is ADVERSARIAL:
            r = attack(adc, filt, adc.quant.delta, horizon).r
        else:
            r = np.asarray(member, dtype=float)[:horizon]
        _, _, q = closed_loop(adc, filt, r)
        worst = max(worst, awai(q, phi, window).suffix_mean)
    if worst == -math.inf:
        raise PreconditionError("empty ensemble")
    return worst


def optimal_performance(filt, quant, phi):
    """phi(|CB| delta / 2), the optimal worst-case intensity."""
    cb = filt.cb
    if cb == 0.0:
        raise PreconditionError("CB = 0; apply extract_delay first")
    return phi(abs(cb) * quant.delta / 2.0)
