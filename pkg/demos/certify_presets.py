"""Certify the two textbook loop filters across a few step sizes.

For the first-order accumulator G(z) = 1/(z-1) the constant comes out as
beta = delta + 1, for the double accumulator as beta = 2 delta + 1.  The
certificate also tells us how many levels per side the quantizer needs
before the greedy ADC is provably optimal.

Run with ``python demos/certify_presets.py``.
"""
from dsmopt import PhiFunction, UniformQuantizer, certify, dsm1_filter, dsm2_filter

phi = PhiFunction.abs()

for name, filt in [('dsm1', dsm1_filter()), ('dsm2', dsm2_filter())]:
    print(f"{name}:")
    for delta in (0.25, 0.5, 1.0, 2.0):
        # a one-level quantizer is enough to get beta and the minimal M
        probe = certify(filt, UniformQuantizer(delta, 1), phi)
        m = probe.min_levels
        cert = certify(filt, UniformQuantizer(delta, m), phi)
        print(f"  delta={delta:<5} beta={cert.beta:.6f}  min M={m:<3} "
              f"applicable={cert.applicable}  J*={cert.optimal_value:.4f}")

# A quantizer that is too coarse fails the level-count condition; the
# certificate says which hypothesis broke.
cert = certify(dsm2_filter(), UniformQuantizer(0.5, 2), phi)
print("\ndsm2, delta=0.5, M=2:", cert.to_json())
