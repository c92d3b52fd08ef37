"""Greedy delta-sigma ADCs: simulation, optimality certificates and
worst-case inputs."""
from .adc import (AdcModel, ClassicalDsm1, DsmLoopAdc, GreedyAdc,
                  MemorylessAdc, make_adc)
from .adversary import AdversaryState, attack
from .certify import Certificate, certify, compute_beta
from .lti import (DifferenceEq, ImpulseSeries, StateSpace, dsm1_filter,
                  dsm2_filter, extract_delay, f_impulse, simulate,
                  to_difference_eq)
from .performance import (AwaiEstimate, PhiFunction, awai,
                          measure_performance, optimal_performance)
from .quantizer import UniformQuantizer, levels, quantize

__version__ = '0.1.0'
