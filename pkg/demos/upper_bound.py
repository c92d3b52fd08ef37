"""The greedy ADC keeps |q[n]| <= |CB| delta / 2 whatever the input.

We drive the dsm2 loop filter with a few inputs (noise, a slow sine, a
constant near full scale) and compare the peak filtered error against the
bound.  The classical first-order loop is shown alongside for dsm1, where
the two coincide sample for sample.
"""
import numpy as np

from dsmopt import (ClassicalDsm1, GreedyAdc, PhiFunction, UniformQuantizer,
                    awai, dsm1_filter, dsm2_filter)
from dsmopt.ensembles import constant, iid_uniform, sinusoid
from dsmopt.performance import closed_loop

N = 50_000
inputs = {
    'noise': iid_uniform(1, N),
    'sine': sinusoid(0.001, 0.95, N),
    'dc 0.99': constant(0.99, N),
}

filt = dsm2_filter()
quant = UniformQuantizer(0.5, 4)
bound = abs(filt.cb) * quant.delta / 2
print(f"dsm2, delta={quant.delta}, M={quant.m_levels}: bound {bound}")
for label, r in inputs.items():
    u, w, q = closed_loop(GreedyAdc(filt, quant), filt, r)
    est = awai(q, PhiFunction.abs())
    print(f"  {label:8s} max|q| = {np.abs(q).max():.6f}  "
          f"mean|q| (2nd half) = {est.suffix_mean:.4f}")

# On the accumulator the greedy rule is the textbook sigma-delta loop.
quant1 = UniformQuantizer(0.5, 3)
r = iid_uniform(2, N)
u_greedy = GreedyAdc(dsm1_filter(), quant1).run(r)
u_classic = ClassicalDsm1(quant1).run(r)
print("\ndsm1 greedy == classical first-order loop:",
      bool(np.array_equal(u_greedy, u_classic)))
