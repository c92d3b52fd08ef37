"""How many levels does the guarantee need?

Sweep the number of levels per side M for the double accumulator at
delta = 0.5.  The certificate only applies from M*delta > beta - delta on
(here M >= 4).  Below that the theory is silent.  This particular attack
still only manages |q| = delta/2 against the greedy ADC, so the level
condition is sufficient rather than necessary on this input.
"""
from dsmopt import PhiFunction, UniformQuantizer, attack, certify, dsm2_filter
from dsmopt.adc import GreedyAdc
from dsmopt.performance import awai

filt = dsm2_filter()
phi = PhiFunction.abs()
delta = 0.5
print(" M  applicable  J*      empirical J (adversarial)")
for m in range(1, 8):
    quant = UniformQuantizer(delta, m)
    cert = certify(filt, quant, phi)
    res = attack(GreedyAdc(filt, quant), filt, delta, 20_000)
    j = awai(res.q[:-1], phi).suffix_mean
    opt = '-' if cert.optimal_value is None else f"{cert.optimal_value:.4f}"
    print(f"{m:2d}  {str(cert.applicable):10s}  {opt:6s}  {j:.4f}")
