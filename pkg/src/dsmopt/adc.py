"""Causal ADC models sharing a step/reset/run interface.

Every model maps input samples r[n] in [-1, 1] to outputs in the level set
of its quantizer, one sample at a time, using only past and present inputs.
"""
import abc
from fractions import Fraction
from typing import NamedTuple

import numpy as np

from . import _kernels
from .errors import InputDomainError, PreconditionError
from .lti import StateSpace
from .quantizer import UniformQuantizer, quantize, quantize_exact

try:
    from gmpy2 import mpq as _rational
except ImportError:  # pragma: no cover - gmpy2 is optional
    _rational = Fraction

__all__ = ['AdcModel', 'GreedyAdc', 'DsmLoopAdc', 'ClassicalDsm1',
           'MemorylessAdc', 'AdcTrace', 'make_adc', 'ADC_NAMES']


def _check_sample(r):
    r = float(r)
    if not -1.0 <= r <= 1.0:
        raise InputDomainError(f"input sample {r!r} outside [-1, 1]")
    return r


def _check_sequence(r):
    r = np.asarray(r, dtype=float).reshape(-1)
    bad = ~((r >= -1.0) & (r <= 1.0))
    if bad.any():
        n = int(np.argmax(bad))
        raise InputDomainError(f"input sample r[{n}] = {r[n]!r} outside [-1, 1]")
    return r


class AdcTrace(NamedTuple):
    u: np.ndarray
    argument: np.ndarray  # quantizer input at each step


class AdcModel(abc.ABC):
    """Causal map r[0..n] -> u[n] into the quantizer's level set."""

    quant: UniformQuantizer

    @abc.abstractmethod
    def step(self, r):
        """Consume r[n] and return u[n]."""

    @abc.abstractmethod
    def reset(self):
        """Return to the initial (zero) state."""

    def run(self, r):
        """Feed a whole sequence from the current state; returns u."""
        r = _check_sequence(r)
        return np.array([self.step(v) for v in r])


def _mat_vec(a, x):
    return [sum(aij * xj for aij, xj in zip(row, x)) for row in a]


def _dot(a, b):
    return sum(ai * bi for ai, bi in zip(a, b))


class _FilterAdc(AdcModel):
    """Shared machinery for the two state-space ADCs.

    With ``exact=True`` all arithmetic is carried out in exact rationals
    (gmpy2.mpq when available, else fractions.Fraction): the float filter
    entries, inputs and delta are converted without rounding, and outputs
    are returned as rationals.  This is slow and meant for verification.
    """

    def __init__(self, filt, quant, exact=False):
        if not isinstance(filt, StateSpace):
            raise TypeError("filt must be a StateSpace")
        cb = filt.cb
        if cb == 0.0:
            raise PreconditionError("filter has CB = 0; apply extract_delay first")
        self.filter = filt
        self.quant = quant
        self.exact = exact
        self._a = np.ascontiguousarray(filt.a)
        self._max_index = float(quant.m_levels)
        if exact:
            conv = lambda v: _rational(float(v))
            self._xa = [[conv(v) for v in row] for row in filt.a]
            self._xb = [conv(v) for v in filt.b]
            self._xc = [conv(v) for v in filt.c]
            self._xcb = _dot(self._xc, self._xb)
            self._xdelta = conv(quant.delta)
        self.reset()

    def reset(self):
        if self.exact:
            self.state = [_rational(0)] * self.filter.m
        else:
            self.state = np.zeros(self.filter.m)

    def trace(self, r):
        """Like :meth:`run` but also returns the quantizer inputs."""
        return AdcTrace(*self._run(_check_sequence(r)))

    def run(self, r):
        return self._run(_check_sequence(r))[0]

    def step(self, r):
        u, _ = self._run(np.array([_check_sample(r)]))
        return u[0] if self.exact else float(u[0])

    def _run_exact(self, r, argument, feed):
        u_out, arg_out = [], []
        for rn in r:
            rn = _rational(float(rn))
            theta = rn + argument()
            u = quantize_exact(self.quant, theta, self._xdelta)
            feed(rn - u)
            u_out.append(u)
            arg_out.append(theta)
        return np.array(u_out, dtype=object), np.array(arg_out, dtype=object)


class GreedyAdc(_FilterAdc):
    """Greedy ADC: u[n] = K_M((CB)^{-1} C A x[n] + r[n]).

    The internal state is a copy of the shaping filter driven by r - u, so
    ``q`` (= C x) is the filtered error seen so far.  Each decision
    minimises |q[n+1]| over the levels.
    """

    def __init__(self, filt, quant, exact=False):
        super().__init__(filt, quant, exact)
        self.gain_row = (filt.c @ filt.a) / filt.cb
        if exact:
            ca = [_dot(self._xc, col) for col in zip(*self._xa)]
            self._xgain = [v / self._xcb for v in ca]

    @property
    def q(self):
        if self.exact:
            return _dot(self._xc, self.state)
        return float(self.filter.c @ self.state)

    def _run(self, r):
        if self.exact:
            def feed(e):
                self.state = [v + bi * e for v, bi in
                              zip(_mat_vec(self._xa, self.state), self._xb)]
            return self._run_exact(r, lambda: _dot(self._xgain, self.state), feed)
        f = self.filter
        u, _, arg = _kernels.greedy_run(self._a, f.b, f.c, self.gain_row,
                                        self.quant.delta, self._max_index,
                                        self.state, r)
        return u, arg


class DsmLoopAdc(_FilterAdc):
    """Delta-sigma loop realisation of the greedy ADC.

    The quantizer sees y[n] = r[n] + (H * (r - u))[n] with
    H(z) = (CB)^{-1} z G(z) - 1, realised as (A, AB, C/CB, 0).
    """

    def __init__(self, filt, quant, exact=False):
        super().__init__(filt, quant, exact)
        self.ab = filt.a @ filt.b
        self.c_scaled = filt.c / filt.cb
        if exact:
            self._xab = _mat_vec(self._xa, self._xb)
            self._xcs = [v / self._xcb for v in self._xc]

    def _run(self, r):
        if self.exact:
            def feed(e):
                self.state = [v + abi * e for v, abi in
                              zip(_mat_vec(self._xa, self.state), self._xab)]
            return self._run_exact(r, lambda: _dot(self._xcs, self.state), feed)
        return _kernels.dsm_loop_run(self._a, self.ab, self.c_scaled,
                                     self.quant.delta, self._max_index,
                                     self.state, r)


class ClassicalDsm1(AdcModel):
    """First-order sigma-delta loop: integrate r - u[n-1], then quantize.

    s[n] = s[n-1] + r[n] - u[n-1],  u[n] = K_M(s[n]),  s[-1] = u[-1] = 0.
    With this timing the loop coincides with GreedyAdc on G(z) = 1/(z-1).
    """

    def __init__(self, quant):
        self.quant = quant
        self.reset()

    def reset(self):
        self.integrator = 0.0
        self.u_prev = 0.0

    def step(self, r):
        r = _check_sample(r)
        self.integrator += r - self.u_prev
        self.u_prev = quantize(self.quant, self.integrator)
        return self.u_prev


class MemorylessAdc(AdcModel):
    """Rounds each sample independently; baseline with no noise shaping."""

    def __init__(self, quant):
        self.quant = quant

    def reset(self):
        pass

    def step(self, r):
        return quantize(self.quant, _check_sample(r))


ADC_NAMES = ('greedy', 'dsm-loop', 'classical-dsm1', 'memoryless')


def make_adc(name, filt, quant):
    """Build an ADC by its short name (see ``ADC_NAMES``)."""
    if name == 'greedy':
        return GreedyAdc(filt, quant)
    if name == 'dsm-loop':
        return DsmLoopAdc(filt, quant)
    if name == 'classical-dsm1':
        return ClassicalDsm1(quant)
    if name == 'memoryless':
        return MemorylessAdc(quant)
    raise ValueError(f"unknown ADC {name!r}; expected one of {', '.join(ADC_NAMES)}")
