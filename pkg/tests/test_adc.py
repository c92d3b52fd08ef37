import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from dsmopt.adc import (ClassicalDsm1, DsmLoopAdc, GreedyAdc, MemorylessAdc,
                        make_adc)
from dsmopt.certify import certify
from dsmopt.errors import InputDomainError, PreconditionError
from dsmopt.lti import StateSpace, dsm1_filter, dsm2_filter, simulate
from dsmopt.performance import PhiFunction
from dsmopt.quantizer import UniformQuantizer
from oracles import brute_greedy_u, random_min_phase_filter

Q12 = UniformQuantizer(1.0, 2)


class TestGreedy:
    def test_example_first_step(self):
        adc = GreedyAdc(dsm1_filter(), Q12)
        assert adc.step(0.3) == 0.0
        np.testing.assert_allclose(adc.state, [0.3])

    def test_example_second_step(self):
        adc = GreedyAdc(dsm1_filter(), Q12)
        adc.state = np.array([0.3])
        assert adc.step(0.9) == 1.0
        np.testing.assert_allclose(adc.state, [0.2], atol=1e-15)

    def test_zero_input_keeps_zero_state(self):
        adc = GreedyAdc(dsm2_filter(), Q12)
        assert adc.step(0.0) == 0.0
        np.testing.assert_array_equal(adc.state, 0.0)

    def test_domain(self):
        adc = GreedyAdc(dsm1_filter(), Q12)
        with pytest.raises(InputDomainError):
            adc.step(1.5)
        with pytest.raises(InputDomainError):
            adc.run([0.0, -1.01])
        with pytest.raises(InputDomainError):
            adc.step(math.nan)

    def test_requires_cb(self):
        with pytest.raises(PreconditionError):
            GreedyAdc(StateSpace([[0, 1], [0, 0]], [0, 1], [1, 0]), Q12)

    def test_step_and_run_agree(self):
        r = np.random.default_rng(0).uniform(-1, 1, 500)
        a, b = GreedyAdc(dsm2_filter(), Q12), GreedyAdc(dsm2_filter(), Q12)
        u_steps = [a.step(v) for v in r]
        np.testing.assert_array_equal(u_steps, b.run(r))
        np.testing.assert_array_equal(a.state, b.state)

    def test_reset(self):
        adc = GreedyAdc(dsm2_filter(), Q12)
        r = np.random.default_rng(1).uniform(-1, 1, 50)
        first = adc.run(r)
        adc.reset()
        np.testing.assert_array_equal(adc.run(r), first)

    @pytest.mark.parametrize('seed', range(10))
    def test_choice_minimises_next_error(self, seed):
        # brute force: evaluate |C x[n+1]| for every level
        rng = np.random.default_rng(seed)
        filt = random_min_phase_filter(rng, 3)
        quant = UniformQuantizer(0.5, 8)
        adc = GreedyAdc(filt, quant)
        for _ in range(200):
            x = adc.state.copy()
            r = rng.uniform(-1, 1)
            u = adc.step(r)
            errs = [abs(filt.c @ (filt.a @ x + filt.b * (r - m * 0.5)))
                    for m in range(-8, 9)]
            assert abs(adc.q) <= min(errs) + 1e-12
            assert u == brute_greedy_u(adc.gain_row, x, r, 0.5, 8, filt.cb, filt.c @ filt.a)


class TestDsmLoop:
    def test_first_order_is_accumulate_and_quantize(self):
        loop = DsmLoopAdc(dsm1_filter(), Q12)
        np.testing.assert_array_equal(loop.ab, [1.0])
        np.testing.assert_array_equal(loop.c_scaled, [1.0])

    def test_zeros(self):
        loop = DsmLoopAdc(dsm2_filter(), Q12)
        np.testing.assert_array_equal(loop.run(np.zeros(100)), 0.0)

    def test_matches_greedy_dsm2(self):
        quant = UniformQuantizer(0.5, 6)
        r = np.random.default_rng(7).uniform(-1, 1, 10_000)
        g, l = GreedyAdc(dsm2_filter(), quant), DsmLoopAdc(dsm2_filter(), quant)
        tg, tl = g.trace(r), l.trace(r)
        np.testing.assert_array_equal(tg.u, tl.u)
        np.testing.assert_allclose(tg.argument, tl.argument, rtol=1e-9, atol=1e-9)

    def test_step_and_run_agree(self):
        r = np.random.default_rng(2).uniform(-1, 1, 300)
        a, b = DsmLoopAdc(dsm2_filter(), Q12), DsmLoopAdc(dsm2_filter(), Q12)
        np.testing.assert_array_equal([a.step(v) for v in r], b.run(r))


class TestClassical:
    def test_zeros(self):
        np.testing.assert_array_equal(ClassicalDsm1(Q12).run(np.zeros(10)), 0.0)

    def test_hand_trace(self):
        adc = ClassicalDsm1(Q12)
        out = []
        integ = []
        for r in (0.6, 0.6, 0.6):
            out.append(adc.step(r))
            integ.append(adc.integrator)
        assert out == [1.0, 0.0, 1.0]
        np.testing.assert_allclose(integ, [0.6, 0.2, 0.8])

    @pytest.mark.parametrize('c', [0.1, 0.37, -0.6, 0.9])
    def test_mean_tracking(self, c):
        quant = UniformQuantizer(1.0, 2)
        for n in (1000, 10_000):
            adc = ClassicalDsm1(quant)
            u = adc.run(np.full(n, c))
            # integrator stays bounded, so the mean error is O(1/N)
            assert abs(u.mean() - c) <= 2.0 / n

    @pytest.mark.parametrize('delta, m', [(1.0, 2), (0.25, 5), (0.5, 3), (2.0, 1)])
    def test_equals_greedy_first_order(self, delta, m):
        quant = UniformQuantizer(delta, m)
        r = np.random.default_rng(11).uniform(-1, 1, 5000)
        np.testing.assert_array_equal(ClassicalDsm1(quant).run(r),
                                      GreedyAdc(dsm1_filter(), quant).run(r))


class TestMemoryless:
    @pytest.mark.parametrize('delta, r, u', [(1.0, 0.5, 0.0), (1.0, 0.9, 1.0), (0.5, -1.0, -1.0)])
    def test_examples(self, delta, r, u):
        assert MemorylessAdc(UniformQuantizer(delta, 4)).step(r) == u


def test_make_adc():
    for name, cls in [('greedy', GreedyAdc), ('dsm-loop', DsmLoopAdc),
                      ('classical-dsm1', ClassicalDsm1), ('memoryless', MemorylessAdc)]:
        assert isinstance(make_adc(name, dsm1_filter(), Q12), cls)
    with pytest.raises(ValueError):
        make_adc('nope', dsm1_filter(), Q12)


@pytest.mark.parametrize('filt, delta', [(dsm1_filter(), 0.25), (dsm2_filter(), 1.0),
                                         (dsm2_filter(), 2.0)])
def test_greedy_bounds_under_certificate(filt, delta):
    cert = certify(filt, UniformQuantizer(delta, 1), PhiFunction.abs())
    quant = UniformQuantizer(delta, cert.min_levels)
    assert certify(filt, quant, PhiFunction.abs()).applicable
    r = np.random.default_rng(5).uniform(-1, 1, 20_000)
    adc = GreedyAdc(filt, quant)
    u = adc.run(r)
    q = simulate(filt, r - u)
    assert np.abs(q).max() <= abs(filt.cb) * delta / 2 + 1e-12
    assert np.abs(u).max() <= cert.beta + 1e-12
    # saturation never engages: identical to the unsaturated quantizer
    np.testing.assert_array_equal(u, GreedyAdc(filt, UniformQuantizer(delta)).run(r))


ADC_FACTORIES = [
    lambda: GreedyAdc(dsm2_filter(), UniformQuantizer(0.5, 6)),
    lambda: DsmLoopAdc(dsm2_filter(), UniformQuantizer(0.5, 6)),
    lambda: ClassicalDsm1(UniformQuantizer(0.5, 3)),
    lambda: MemorylessAdc(UniformQuantizer(0.5, 3)),
]
samples = st.floats(-1, 1, allow_nan=False)


@settings(max_examples=1000, deadline=None)
@given(st.sampled_from(range(4)), st.lists(samples, min_size=1, max_size=30),
       st.lists(samples, min_size=1, max_size=30), st.lists(samples, min_size=0, max_size=30))
def test_causality(which, common, tail_a, tail_b):
    a, b = ADC_FACTORIES[which](), ADC_FACTORIES[which]()
    ua = a.run(common + tail_a)
    ub = b.run(common + tail_b)
    n = len(common)
    np.testing.assert_array_equal(ua[:n], ub[:n])


@settings(max_examples=300, deadline=None)
@given(st.sampled_from(range(4)), st.lists(samples, min_size=1, max_size=50))
def test_outputs_are_levels(which, r):
    adc = ADC_FACTORIES[which]()
    for u in adc.run(r):
        assert adc.quant.contains(u)
        m = u / adc.quant.delta
        assert m == round(m)


def test_exact_mode_matches_float_on_preset():
    filt = dsm2_filter()
    quant = UniformQuantizer(0.5, 4)
    r = np.random.default_rng(5).uniform(-1, 1, 500)
    u_float = GreedyAdc(filt, quant).run(r)
    u_exact = GreedyAdc(filt, quant, exact=True).run(r)
    np.testing.assert_array_equal(u_float, u_exact.astype(float))


def test_exact_step_and_run_agree():
    filt = dsm2_filter()
    quant = UniformQuantizer(0.5, 4)
    r = np.random.default_rng(6).uniform(-1, 1, 200)
    for cls in (GreedyAdc, DsmLoopAdc):
        stepper = cls(filt, quant, exact=True)
        stepped = [stepper.step(v) for v in r]
        assert list(cls(filt, quant, exact=True).run(r)) == stepped


def test_exact_greedy_q_is_rational_and_bounded():
    filt = dsm2_filter()
    quant = UniformQuantizer(0.5, 4)
    adc = GreedyAdc(filt, quant, exact=True)
    for v in np.random.default_rng(7).uniform(-1, 1, 300):
        adc.step(v)
        assert abs(adc.q) <= abs(filt.cb) * quant.delta / 2
        assert not isinstance(adc.q, float)
