"""Check the sufficient conditions under which the greedy ADC is optimal.

For a shaping filter with CB != 0 and a uniform quantizer, the greedy ADC
attains the worst-case intensity phi(|CB| delta/2), and nothing does better,
whenever delta is in (0, 2], M*delta > 1 and M*delta > beta - delta, where

    beta = [|CB| delta/2 (sum|a_i| + 1) + sum|b_j|] * sum|c_l|.

All failures are reported as flags; a negative certificate means the
conditions are not met, not that the greedy ADC is suboptimal.
"""
import json
import math
from dataclasses import asdict, dataclass, field

from .lti import delay_count, extract_delay, f_impulse, to_difference_eq

__all__ = ['Certificate', 'compute_beta', 'certify', 'minimal_levels']


@dataclass(frozen=True)
class Certificate:
    cb: float
    beta: float
    delta: float
    m_delta: float
    condition_cb_nonzero: bool
    condition_delta_range: bool
    condition_mdelta_gt_1: bool
    condition_umax: bool
    applicable: bool
    optimal_value: float | None
    delay_shift: int = 0
    min_levels: int | None = None
    l1_norm_f: float = math.inf
    a_coeffs: tuple = ()
    b_coeffs: tuple = ()
    diagnostics: dict = field(default_factory=dict)

    def to_dict(self):
        d = asdict(self)
        for key in ('beta', 'm_delta', 'l1_norm_f'):
            if d[key] == math.inf:
                d[key] = 'inf'
        d['a_coeffs'] = list(self.a_coeffs)
        d['b_coeffs'] = list(self.b_coeffs)
        return d

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)


def compute_beta(de, delta, cb, fs):
    """Bound on |u[n]| for the greedy ADC; ``inf`` when F(z) is not stable.

    Uses ``fs.l1_norm``, which already includes the certified tail bound, so
    the result is never smaller than the exact value.
    """
    if fs.divergent:
        return math.inf
    sum_a = sum(abs(v) for v in de.a_coeffs)
    sum_b = sum(abs(v) for v in de.b_coeffs)
    return (abs(cb) * delta / 2.0 * (sum_a + 1.0) + sum_b) * fs.l1_norm


def minimal_levels(beta, delta):
    """Smallest integer M with M*delta > 1 and M*delta > beta - delta."""
    if not math.isfinite(beta):
        return None
    target = max(1.0, beta - delta)
    m = max(1, math.floor(target / delta))
    while m * delta <= target:
        m += 1
    while m > 1 and (m - 1) * delta > target:
        m -= 1
    return m


def certify(filt, quant, phi, tol=1e-13, max_len=100_000):
    """Evaluate the optimality conditions for (filter, quantizer).

    A filter with CB = 0 is first shifted with
    :func:`dsmopt.lti.extract_delay`; the shift count is recorded and does
    not change the optimal value.

    Raises
    ------
    DegenerateFilterError
        If G(z) is identically zero.
    """
    shift = delay_count(filt)
    filt = extract_delay(filt)
    cb = filt.cb
    delta = quant.delta
    m_delta = quant.max_output
    de = to_difference_eq(filt)
    fs = f_impulse(de, tol=tol, max_len=max_len)
    beta = compute_beta(de, delta, cb, fs)

    beta = float(beta)
    ok_cb = bool(cb != 0.0)
    ok_delta = bool(0.0 < delta <= 2.0)
    ok_gt1 = bool(m_delta > 1.0)
    ok_umax = bool(m_delta > beta - delta)
    applicable = ok_cb and ok_delta and ok_gt1 and ok_umax
    diagnostics = {
        'cb_nonzero': f"CB = {cb!r}" + (f" after {shift} delay shift(s)" if shift else ""),
        'delta_range': f"delta = {delta!r} {'in' if ok_delta else 'not in'} (0, 2]",
        'mdelta_gt_1': f"M*delta = {m_delta!r} {'>' if ok_gt1 else '<='} 1",
        'umax': (f"M*delta = {m_delta!r} {'>' if ok_umax else '<='} "
                 f"beta - delta = {beta - delta!r}"),
    }
    if fs.divergent:
        diagnostics['impulse'] = (
            f"numerator root radius {fs.root_radius:.12g} >= 1: sum|c_l| diverges, beta = inf")
    return Certificate(
        cb=cb, beta=beta, delta=delta, m_delta=m_delta,
        condition_cb_nonzero=ok_cb, condition_delta_range=ok_delta,
        condition_mdelta_gt_1=ok_gt1, condition_umax=ok_umax,
        applicable=applicable,
        optimal_value=phi(abs(cb) * delta / 2.0) if applicable else None,
        delay_shift=shift,
        min_levels=minimal_levels(beta, delta),
        l1_norm_f=fs.l1_norm,
        a_coeffs=de.a_coeffs, b_coeffs=de.b_coeffs,
        diagnostics=diagnostics,
    )
