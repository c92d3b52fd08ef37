"""Uniform saturating quantizer with downward tie-breaking."""
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import _kernels
from .errors import UnboundedLevelSetError

__all__ = ['UniformQuantizer', 'quantize', 'quantize_exact', 'levels']


@dataclass(frozen=True)
class UniformQuantizer:
    """Level set {m*delta : m integer, |m| <= m_levels}.

    ``m_levels`` may be ``math.inf`` for an unsaturated quantizer.  Only
    ``delta > 0`` and ``m_levels >= 1`` are enforced here; whether the pair
    also satisfies the optimality hypotheses (delta <= 2, m_levels*delta > 1)
    is reported by :func:`dsmopt.certify.certify`.
    """
    delta: float
    m_levels: float = math.inf

    def __post_init__(self):
        delta = float(self.delta)
        if not (math.isfinite(delta) and delta > 0):
            raise ValueError(f"delta must be positive and finite, got {self.delta!r}")
        m = self.m_levels
        if m != math.inf:
            if isinstance(m, float) and not m.is_integer():
                raise ValueError(f"m_levels must be an integer or inf, got {m!r}")
            m = int(m)
            if m < 1:
                raise ValueError(f"m_levels must be at least 1, got {m}")
        object.__setattr__(self, 'delta', delta)
        object.__setattr__(self, 'm_levels', m)

    @property
    def saturated(self):
        return self.m_levels != math.inf

    @property
    def max_output(self):
        """Largest representable magnitude M*delta (inf when unsaturated)."""
        return self.m_levels * self.delta if self.saturated else math.inf

    def index(self, theta):
        """Integer index m of the level chosen for ``theta``."""
        return int(_kernels.nearest_level_index(float(theta), self.delta,
                                                float(self.m_levels)))

    def __call__(self, theta):
        return quantize(self, theta)

    def contains(self, u, rtol=1e-9):
        """True if ``u`` is (numerically) one of the levels."""
        m = u / self.delta
        if not math.isfinite(m) or abs(m - round(m)) > rtol * max(1.0, abs(m)):
            return False
        return abs(round(m)) <= self.m_levels


def quantize(q, theta):
    """Nearest level to ``theta``; exact ties go to the smaller level.

    Values beyond the outermost level saturate to +/- M*delta.  The output
    is always computed as ``m * delta`` from an integer ``m``.
    """
    theta = float(theta)
    if not math.isfinite(theta):
        raise ValueError(f"theta must be finite, got {theta!r}")
    return _kernels.nearest_level_index(theta, q.delta, float(q.m_levels)) * q.delta


def quantize_exact(q, theta, delta=None):
    """:func:`quantize` for exact rationals (``Fraction`` or ``gmpy2.mpq``).

    ``delta`` is the exact step (defaults to ``Fraction(q.delta)``).  The
    nearest level with ties down is m = ceil(theta/delta - 1/2).
    """
    if delta is None:
        delta = Fraction(q.delta)
    # ceil(s - 1/2) == -floor(1/2 - s); floor division works for both types
    m = -int((1 - 2 * (theta / delta)) // 2)
    if q.saturated:
        m = max(-q.m_levels, min(q.m_levels, m))
    return m * delta


def levels(q):
    """All 2M+1 levels in increasing order."""
    if not q.saturated:
        raise UnboundedLevelSetError("unbounded level set: m_levels is infinite")
    return np.arange(-q.m_levels, q.m_levels + 1) * q.delta
