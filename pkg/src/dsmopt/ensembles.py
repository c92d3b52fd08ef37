"""Input ensembles for empirical worst-case estimates."""
import numpy as np

from .rng import uniform_sequence

__all__ = ['ADVERSARIAL', 'zeros', 'constant', 'iid_uniform', 'sinusoid']


class _Adversarial:
    """Marker for the closed-loop adversarial input (depends on the ADC)."""

    def __repr__(self):
        return 'ADVERSARIAL'


ADVERSARIAL = _Adversarial()


def zeros(n):
    return np.zeros(n)


def constant(value, n):
    if not -1.0 <= value <= 1.0:
        raise ValueError(f"constant input {value} outside [-1, 1]")
    return np.full(n, float(value))


def iid_uniform(seed, n):
    """Seeded iid samples on [-1, 1) from :mod:`dsmopt.rng`."""
    return uniform_sequence(seed, n)


def sinusoid(frequency, amplitude, n, phase=0.0):
    """amplitude * sin(2 pi frequency n + phase); frequency in cycles/sample."""
    if not 0.0 <= amplitude <= 1.0:
        raise ValueError(f"amplitude {amplitude} outside [0, 1]")
    return amplitude * np.sin(2 * np.pi * frequency * np.arange(n) + phase)
