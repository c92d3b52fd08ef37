"""Compiled inner loops shared by the simulation modules.

Everything here works on plain float64 arrays; validation happens in the
public wrappers.
"""
import math

import numpy as np
from numba import njit


@njit(cache=True, nogil=True)
def nearest_level_index(theta, delta, max_index):
    """Index m minimising |theta - m*delta| over |m| <= max_index, ties to smaller m."""
    s = theta / delta
    if s > max_index + 2.0:
        s = max_index + 2.0
    elif s < -max_index - 2.0:
        s = -max_index - 2.0
    m0 = math.floor(s)
    best_m = 0.0
    best_d = np.inf
    for off in range(-1, 3):
        m = m0 + off
        if m > max_index:
            m = max_index
        elif m < -max_index:
            m = -max_index
        d = abs(theta - m * delta)
        if d < best_d:
            best_d = d
            best_m = m
    return best_m


@njit(cache=True, nogil=True)
def half_level_index(value, delta):
    """Integer k minimising |(2k+1)/2*delta - value|, ties to smaller k."""
    k0 = math.floor(value / delta - 0.5)
    best_k = 0.0
    best_d = np.inf
    for off in range(-1, 3):
        k = k0 + off
        d = abs((2.0 * k + 1.0) / 2.0 * delta - value)
        if d < best_d:
            best_d = d
            best_k = k
    return best_k


@njit(cache=True, nogil=True)
def simulate_ss(a, b, c, w):
    m = a.shape[0]
    n_steps = w.shape[0]
    q = np.empty(n_steps)
    x = np.zeros(m)
    xn = np.zeros(m)
    for n in range(n_steps):
        acc = 0.0
        for i in range(m):
            acc += c[i] * x[i]
        q[n] = acc
        for i in range(m):
            s = b[i] * w[n]
            for j in range(m):
                s += a[i, j] * x[j]
            xn[i] = s
        for i in range(m):
            x[i] = xn[i]
    return q


@njit(cache=True, nogil=True)
def greedy_run(a, b, c, gain, delta, max_index, x, r):
    """Run the greedy control law from state ``x`` (updated in place).

    Returns (u, q_next, argument) where q_next[n] = C x[n+1] and argument[n]
    is the quantizer input gain @ x[n] + r[n].
    """
    m = a.shape[0]
    n_steps = r.shape[0]
    u = np.empty(n_steps)
    q_next = np.empty(n_steps)
    arg = np.empty(n_steps)
    xn = np.zeros(m)
    for n in range(n_steps):
        theta = r[n]
        for i in range(m):
            theta += gain[i] * x[i]
        arg[n] = theta
        un = nearest_level_index(theta, delta, max_index) * delta
        u[n] = un
        e = r[n] - un
        for i in range(m):
            s = b[i] * e
            for j in range(m):
                s += a[i, j] * x[j]
            xn[i] = s
        acc = 0.0
        for i in range(m):
            x[i] = xn[i]
            acc += c[i] * xn[i]
        q_next[n] = acc
    return u, q_next, arg


@njit(cache=True, nogil=True)
def dsm_loop_run(a, ab, c_scaled, delta, max_index, xi, r):
    """Run the loop-filter form: y = r + c_scaled @ xi, xi+ = A xi + AB (r - u)."""
    m = a.shape[0]
    n_steps = r.shape[0]
    u = np.empty(n_steps)
    y = np.empty(n_steps)
    xn = np.zeros(m)
    for n in range(n_steps):
        yn = r[n]
        for i in range(m):
            yn += c_scaled[i] * xi[i]
        y[n] = yn
        un = nearest_level_index(yn, delta, max_index) * delta
        u[n] = un
        e = r[n] - un
        for i in range(m):
            s = ab[i] * e
            for j in range(m):
                s += a[i, j] * xi[j]
            xn[i] = s
        for i in range(m):
            xi[i] = xn[i]
    return u, y


@njit(cache=True, nogil=True)
def xorshift64star_uniform(state, n):
    """Draw n samples in [-1, 1) from xorshift64*; returns (samples, new_state)."""
    out = np.empty(n)
    s = np.uint64(state)
    mult = np.uint64(0x2545F4914F6CDD1D)
    scale = 2.0 ** -52
    for i in range(n):
        s ^= s >> np.uint64(12)
        s ^= s << np.uint64(25)
        s ^= s >> np.uint64(27)
        v = (s * mult) >> np.uint64(11)
        out[i] = float(v) * scale - 1.0
    return out, s
