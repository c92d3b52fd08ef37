"""Discrete-time SISO state-space filters.

A shaping filter is a strictly causal system

    x[n+1] = A x[n] + B w[n],   x[0] = 0
    q[n]   = C x[n]

with transfer function G(z) = C (zI - A)^{-1} B.  This module simulates such
filters, removes leading delays so that the first Markov parameter CB is
nonzero, converts them to an equivalent difference equation in the
q/w samples, and computes the impulse response of the inverse numerator
F(z) = 1 / sum_j b_j z^{-j} together with a certified bound on its l1 norm.
"""
import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import (DegenerateFilterError, NonFiniteError, PreconditionError,
                     TruncationBudgetError)

__all__ = [
    'StateSpace', 'DifferenceEq', 'ImpulseSeries',
    'extract_delay', 'delay_count', 'simulate', 'to_difference_eq',
    'faddeev_leverrier', 'f_impulse', 'dsm1_filter', 'dsm2_filter',
    'UNIT_CIRCLE_TOL',
]

#: Roots of modulus >= 1 - UNIT_CIRCLE_TOL count as (at least) marginal.
UNIT_CIRCLE_TOL = 1e-9


def _frozen(arr):
    arr = np.array(arr, dtype=float)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class StateSpace:
    """SISO strictly causal filter (A, B, C).

    ``b`` and ``c`` are stored as 1-D arrays of length m; column or row
    shaped inputs are flattened.
    """
    a: np.ndarray
    b: np.ndarray
    c: np.ndarray

    def __post_init__(self):
        a = np.atleast_2d(np.asarray(self.a, dtype=float))
        b = np.asarray(self.b, dtype=float).reshape(-1)
        c = np.asarray(self.c, dtype=float).reshape(-1)
        m = a.shape[0]
        if a.ndim != 2 or a.shape != (m, m) or m == 0:
            raise ValueError(f"A must be a nonempty square matrix, got shape {a.shape}")
        if b.shape != (m,) or c.shape != (m,):
            raise ValueError(
                f"B and C must have {m} entries, got {b.size} and {c.size}")
        for name, arr in (('A', a), ('B', b), ('C', c)):
            if not np.all(np.isfinite(arr)):
                raise ValueError(f"{name} has non-finite entries")
        object.__setattr__(self, 'a', _frozen(a))
        object.__setattr__(self, 'b', _frozen(b))
        object.__setattr__(self, 'c', _frozen(c))

    @property
    def m(self):
        """State dimension."""
        return self.a.shape[0]

    @property
    def cb(self):
        """Leading Markov parameter CB."""
        return float(self.c @ self.b)

    def markov(self, count):
        """First ``count`` Markov parameters C A^i B, i = 0..count-1."""
        out = np.empty(count)
        v = self.b.copy()
        for i in range(count):
            out[i] = self.c @ v
            v = self.a @ v
        return out

    def __repr__(self):
        return (f"StateSpace(a={self.a.tolist()}, b={self.b.tolist()}, "
                f"c={self.c.tolist()})")


@dataclass(frozen=True)
class DifferenceEq:
    """q[n+1] = sum_i a_i q[n-i] + sum_j b_j w[n-j], i, j = 0..k.

    Trailing zero ``b`` coefficients are kept so that ``k = m - 1``.
    """
    a_coeffs: tuple
    b_coeffs: tuple

    def __post_init__(self):
        a = tuple(float(v) for v in self.a_coeffs)
        b = tuple(float(v) for v in self.b_coeffs)
        if len(a) != len(b) or not a:
            raise ValueError("a_coeffs and b_coeffs must be nonempty and equally long")
        object.__setattr__(self, 'a_coeffs', a)
        object.__setattr__(self, 'b_coeffs', b)

    @property
    def order(self):
        return len(self.a_coeffs) - 1

    def run(self, w):
        """Evaluate the recursion on ``w`` with zero initial conditions.

        Returns q[0..N-1] with q[0] = 0, directly comparable to
        :func:`simulate`.
        """
        w = np.asarray(w, dtype=float)
        n_steps = w.size
        q = np.zeros(n_steps)
        a, b = self.a_coeffs, self.b_coeffs
        for n in range(n_steps - 1):
            acc = 0.0
            for i, ai in enumerate(a):
                if n - i >= 0:
                    acc += ai * q[n - i]
            for j, bj in enumerate(b):
                if n - j >= 0:
                    acc += bj * w[n - j]
            q[n + 1] = acc
        return q


@dataclass(frozen=True)
class ImpulseSeries:
    """Impulse response c_0..c_L of F(z) with a certified l1 bound.

    ``l1_norm`` is ``sum(|coeffs|) + tail_bound``, or ``inf`` when the
    numerator polynomial has a root on or outside the unit circle.
    """
    coeffs: np.ndarray
    l1_norm: float
    tail_bound: float
    divergent: bool
    root_radius: float


def delay_count(ss):
    """Number of leading zero Markov parameters of ``ss``.

    Raises
    ------
    DegenerateFilterError
        If C A^i B = 0 for every i < m, i.e. G(z) is identically zero.
    """
    v = ss.b
    for i in range(ss.m):
        if ss.c @ v != 0.0:
            return i
        v = ss.a @ v
    raise DegenerateFilterError("degenerate filter: all Markov parameters are zero")


def extract_delay(ss):
    """Shift the filter output forward until CB is nonzero.

    Each shift replaces C by CA, which turns G(z) into z G(z).  A filter
    with CB != 0 is returned unchanged (the same object).
    """
    shifts = delay_count(ss)
    if shifts == 0:
        return ss
    c = ss.c
    for _ in range(shifts):
        c = c @ ss.a
    return StateSpace(ss.a, ss.b, c)


def simulate(ss, w):
    """Filter output q[0..N-1] for input ``w`` from the zero state.

    q[0] is always 0 since the filter is strictly causal.
    """
    w = np.asarray(w, dtype=float).reshape(-1)
    if not np.all(np.isfinite(w)):
        raise PreconditionError("input sequence contains non-finite samples")
    q = _kernels.simulate_ss(np.ascontiguousarray(ss.a), ss.b.copy(), ss.c.copy(), w)
    if not np.all(np.isfinite(q)):
        bad = int(np.argmin(np.isfinite(q)))
        raise NonFiniteError(f"filter output became non-finite at n={bad}")
    return q


def faddeev_leverrier(a):
    """Characteristic polynomial and adjugate coefficients of ``a``.

    Returns ``(p, mats)`` with det(zI - A) = z^m + p[1] z^{m-1} + ... + p[m]
    (``p[0] == 1``) and adj(zI - A) = sum_k mats[k] z^{m-1-k}.
    """
    a = np.asarray(a, dtype=float)
    m = a.shape[0]
    eye = np.eye(m)
    p = [1.0]
    mats = [eye]
    for k in range(1, m + 1):
        am = a @ mats[-1]
        pk = -np.trace(am) / k
        p.append(pk)
        if k < m:
            mats.append(am + pk * eye)
    return np.array(p), mats


def to_difference_eq(ss):
    """Equivalent difference equation of a filter with CB != 0.

    ``a_i`` come from det(zI - A) = z^m - sum_i a_i z^{m-1-i} and ``b_j``
    from the numerator C adj(zI - A) B = sum_j b_j z^{m-1-j}.
    """
    if ss.cb == 0.0:
        raise PreconditionError("CB = 0; call extract_delay first")
    p, mats = faddeev_leverrier(ss.a)
    a_coeffs = [-pk for pk in p[1:]]
    b_coeffs = [float(ss.c @ nk @ ss.b) for nk in mats]
    # b_0 = C I B holds exactly; pin it so it compares equal to ss.cb
    b_coeffs[0] = ss.cb
    return DifferenceEq(tuple(a_coeffs), tuple(b_coeffs))


def _strip_trailing_zeros(b):
    b = list(b)
    while len(b) > 1 and b[-1] == 0.0:
        b.pop()
    return b


def _companion(b):
    """Companion matrix of the recursion c_l = -(1/b0) sum_{j>=1} b_j c_{l-j}."""
    k = len(b) - 1
    t = np.zeros((k, k))
    t[0, :] = -np.asarray(b[1:]) / b[0]
    if k > 1:
        t[1:, :-1] = np.eye(k - 1)
    return t


def _tail_gain(t, budget):
    """Upper bound on sum_{j>=1} ||e1^T T^j||_1.

    Finds a power P = T^p with induced inf-norm theta < 1; then every term
    with index i + s*p is at most ||e1^T T^i||_1 * theta^s, so the whole sum
    is bounded by sum_{i=1..p} ||e1^T T^i||_1 / (1 - theta).
    """
    k = t.shape[0]
    power = np.eye(k)
    row_sum = 0.0
    best = np.inf
    for p in range(1, budget + 1):
        power = power @ t
        row_sum += np.abs(power[0]).sum()
        theta = np.abs(power).sum(axis=1).max()
        if theta < 1.0:
            best = min(best, row_sum / (1.0 - theta))
            if theta <= 0.5:
                break
    return best


def f_impulse(de, tol=1e-13, max_len=100_000):
    """Impulse response of F(z) = 1 / sum_j b_j z^{-j} with certified l1 norm.

    Parameters
    ----------
    de : DifferenceEq
        Source of the ``b`` coefficients; ``b_0`` must be nonzero.
    tol : float
        Stop once the certified tail bound is below this value.
    max_len : int
        Maximum number of coefficients to compute.

    Returns
    -------
    ImpulseSeries
        ``divergent`` is True (and ``l1_norm`` infinite) when the maximal
        root modulus of the numerator polynomial is at least
        ``1 - UNIT_CIRCLE_TOL``.

    Raises
    ------
    TruncationBudgetError
        If the tail bound does not fall below ``tol`` within ``max_len``
        coefficients.
    """
    if tol <= 0 or max_len < 1:
        raise ValueError("tol must be positive and max_len at least 1")
    b = _strip_trailing_zeros(de.b_coeffs)
    if b[0] == 0.0:
        raise PreconditionError("b_0 must be nonzero")
    k = len(b) - 1
    if k == 0:
        return ImpulseSeries(np.array([1.0 / b[0]]), abs(1.0 / b[0]), 0.0, False, 0.0)

    radius = float(np.max(np.abs(np.roots(b))))
    t = _companion(b)
    divergent = radius >= 1.0 - UNIT_CIRCLE_TOL
    gain = np.inf if divergent else _tail_gain(t, max_len)

    coeffs = [1.0 / b[0]]
    state = np.zeros(k)
    state[0] = coeffs[0]
    total = abs(coeffs[0])
    tail = gain * np.abs(state).max()
    length = min(max_len, 64) if divergent else max_len
    while len(coeffs) < length and not (tail < tol):
        state = t @ state
        coeffs.append(state[0])
        total += abs(state[0])
        if not divergent:
            tail = gain * np.abs(state).max()
    coeffs = np.array(coeffs)
    total = math.fsum(np.abs(coeffs))
    if divergent:
        return ImpulseSeries(coeffs, np.inf, np.inf, True, radius)
    if not tail < tol:
        raise TruncationBudgetError(
            f"truncation budget exceeded: tail bound {tail:.3g} > tol after "
            f"{max_len} coefficients", partial_sum=total, tail_bound=tail)
    return ImpulseSeries(coeffs, total + tail, tail, False, radius)


def dsm1_filter():
    """G(z) = 1/(z-1), the first-order accumulator."""
    return StateSpace([[1.0]], [1.0], [1.0])


def dsm2_filter():
    """G(z) = z/(z-1)^2, the double accumulator."""
    return StateSpace([[2.0, -1.0], [1.0, 0.0]], [1.0, 0.0], [1.0, 0.0])
