"""Squeeze a converter between the upper and lower bounds.

The adversary picks each input so that the next filtered error lands
exactly halfway between two quantizer levels, whatever the converter does.
Against the greedy ADC this pins |q[n]| to |CB| delta / 2 on every step,
which together with the upper bound shows that no causal ADC can do better
on the worst case.  Weaker converters are pushed above the bound.
"""
import numpy as np

from dsmopt import UniformQuantizer, attack, dsm2_filter, make_adc

filt = dsm2_filter()
quant = UniformQuantizer(0.5, 4)
N = 2_000

for name in ('greedy', 'dsm-loop', 'memoryless'):
    adc = make_adc(name, filt, quant)
    res = attack(adc, filt, quant.delta, N)
    q = np.abs(res.q[1:])
    print(f"{name:10s} min|q| = {res.min_abs_q:.6f}  max|q| = {q.max():10.4f}  "
          f"bound = {res.bound}  {'PASS' if res.passed else 'FAIL'}")

# Every converter stays at or above the bound (the attack always works);
# only the greedy loop also stays at or below it.
