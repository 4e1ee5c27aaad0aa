import math
import random

import pytest

from oracles import best_stage_count, step_response_t50
from nscache.circuits import (BufferChain, CircuitError, RCLadder,
                              chain_delay_model, chain_metrics, elmore_delay,
                              level_shifter, level_shifter_stage_count,
                              optimal_stage_count, peripheral_ppa,
                              repeated_wire, size_chain)


class TestOptimalStageCount:
    def test_closed_form_gamma_zero(self):
        for k in (1, 2, 3, 4):
            n = optimal_stage_count(math.e ** k, 0.0)
            assert n == k
            # local minimum among integer neighbors of the gamma=0 model
            t = lambda m: chain_delay_model(m, math.e ** k, 0.0)
            assert t(n) <= t(n + 1)
            if n > 1:
                assert t(n) <= t(n - 1)

    def test_no_amplification_clamps(self):
        assert optimal_stage_count(1.0, 0.0) == 1
        assert optimal_stage_count(1.0, 1.0) == 1

    def test_fanout_below_one_rejected(self):
        with pytest.raises(CircuitError):
            optimal_stage_count(0.5, 0.0)

    def test_matches_exhaustive_oracle_with_self_loading(self):
        rng = random.Random(11)
        for _ in range(40):
            f = rng.uniform(1.5, 5e4)
            gamma = rng.choice([0.3, 0.5, 1.0, 2.0])
            got = optimal_stage_count(f, gamma)
            ref = best_stage_count(f, gamma)
            assert (got == ref
                    or chain_delay_model(got, f, gamma)
                    == pytest.approx(chain_delay_model(ref, f, gamma)))

    def test_example_f100_gamma1(self):
        assert optimal_stage_count(100.0, 1.0) == best_stage_count(100.0, 1.0)


class TestSizeChain:
    def test_geometric_progression(self):
        chain = size_chain(1.0, 16.0, 5)
        assert list(chain.sizes) == pytest.approx([1, 2, 4, 8, 16])

    def test_single_stage(self):
        assert size_chain(1.0, 27.0, 1).sizes == (1.0,)

    def test_power_of_three(self):
        chain = size_chain(1.0, 27.0, 4)
        assert list(chain.sizes) == pytest.approx([1, 3, 9, 27])

    def test_small_load_returns_min_stage(self):
        chain = size_chain(2.0, 1.0, 6)
        assert chain.n_stages == 1 and chain.sizes == (1.0,)

    def test_ratio_product_property(self):
        rng = random.Random(2)
        for _ in range(1000):
            c_in = 10 ** rng.uniform(-16, -13)
            f = 10 ** rng.uniform(0.01, 4)
            n = rng.randint(2, 12)
            chain = size_chain(c_in, c_in * f, n)
            prod = 1.0
            for a, b in zip(chain.sizes, chain.sizes[1:]):
                prod *= b / a
            assert abs(prod - f) <= 1e-12 * f

    def test_sizes_non_decreasing(self):
        chain = size_chain(1e-15, 64e-15, 7)
        assert all(b >= a for a, b in zip(chain.sizes, chain.sizes[1:]))


class TestChainMetrics:
    def test_leakage_linear_in_width(self, tech7):
        base = BufferChain(3, (1.0, 4.0, 16.0), tech7.unit_input_cap,
                           64 * tech7.unit_input_cap)
        doubled = BufferChain(3, (2.0, 8.0, 32.0), tech7.unit_input_cap,
                              64 * tech7.unit_input_cap)
        m1 = chain_metrics(base, tech7)
        m2 = chain_metrics(doubled, tech7)
        assert m2.leakage_w == pytest.approx(2 * m1.leakage_w)

    def test_graded_chain_beats_two_step(self, tech7):
        c = tech7.unit_input_cap
        graded = BufferChain(5, (1, 2, 4, 8, 16), c, 16 * c)
        abrupt = BufferChain(2, (1, 16), c, 16 * c)
        assert chain_metrics(graded, tech7).delay_s \
            < chain_metrics(abrupt, tech7).delay_s

    def test_unloaded_stage_has_intrinsic_delay(self, tech7):
        single = BufferChain(1, (1.0,), tech7.unit_input_cap, 0.0)
        assert chain_metrics(single, tech7).delay_s > 0

    def test_fields_non_negative(self, tech7):
        m = chain_metrics(size_chain(tech7.unit_input_cap,
                                     100 * tech7.unit_input_cap, 4), tech7)
        assert min(m.area_um2, m.delay_s, m.dynamic_energy_j, m.leakage_w) >= 0


def random_ladder(rng, max_segments=8):
    segs = tuple((10 ** rng.uniform(0, 3), 10 ** rng.uniform(-16, -13))
                 for _ in range(rng.randint(1, max_segments)))
    driver = rng.choice([0.0, 10 ** rng.uniform(1, 4)])
    load = rng.choice([0.0, 10 ** rng.uniform(-16, -13)])
    return RCLadder(segs, driver_r=driver, load_c=load)


class TestElmore:
    def test_single_segment(self):
        ladder = RCLadder(((100.0, 10e-15),))
        assert elmore_delay(ladder) == pytest.approx(0.5e-12)

    def test_zero_caps(self):
        assert elmore_delay(RCLadder(((100.0, 0.0), (50.0, 0.0)))) == 0.0

    def test_monotone_in_every_parameter(self):
        rng = random.Random(3)
        for _ in range(60):
            ladder = random_ladder(rng)
            base = elmore_delay(ladder)
            segs = list(ladder.segments)
            i = rng.randrange(len(segs))
            r, c = segs[i]
            bigger_r = list(segs)
            bigger_r[i] = (r * 1.5, c)
            bigger_c = list(segs)
            bigger_c[i] = (r, c * 1.5)
            assert elmore_delay(RCLadder(tuple(bigger_r), ladder.driver_r,
                                         ladder.load_c)) >= base
            assert elmore_delay(RCLadder(tuple(bigger_c), ladder.driver_r,
                                         ladder.load_c)) >= base
            assert elmore_delay(RCLadder(ladder.segments, ladder.driver_r + 10,
                                         ladder.load_c)) >= base
            assert elmore_delay(RCLadder(ladder.segments, ladder.driver_r,
                                         ladder.load_c + 1e-15)) >= base

    def test_upper_bounds_step_response(self):
        rng = random.Random(4)
        for _ in range(60):
            ladder = random_ladder(rng)
            est = elmore_delay(ladder)
            ref = step_response_t50(ladder.segments, ladder.driver_r,
                                    ladder.load_c)
            assert est >= ref * (1 - 1e-9)
            assert est <= 3.0 * ref

    def test_negative_values_rejected(self):
        with pytest.raises(CircuitError):
            RCLadder(((-1.0, 1e-15),))


class TestRepeatedWire:
    def test_zero_length(self, tech7):
        ppa = repeated_wire(tech7.layer("global"), 0.0, tech7)
        assert (ppa.area_um2, ppa.delay_s, ppa.dynamic_energy_j,
                ppa.leakage_w) == (0, 0, 0, 0)

    def test_subquadratic_growth(self, tech7):
        layer = tech7.layer("intermediate")
        length = 4000.0
        d1 = repeated_wire(layer, length, tech7).delay_s
        d2 = repeated_wire(layer, 2 * length, tech7).delay_s
        assert d2 < 4 * d1

    def test_repeaters_beat_bare_driver_on_long_wire(self, tech7):
        layer = tech7.layer("global")
        repeated = repeated_wire(layer, 2000.0, tech7)
        bare = repeated_wire(layer, 2000.0, tech7, force_repeaters=0)
        assert repeated.delay_s < bare.delay_s


class TestPeripherals:
    def test_one_bit_decoder_is_buffered_pair(self, tech7):
        load = 20 * tech7.unit_input_cap
        dec = peripheral_ppa("row_decoder", tech7, n_bits=1, c_load=load)
        pair = chain_metrics(size_chain(tech7.unit_input_cap, load, 2), tech7)
        assert dec.delay_s == pytest.approx(pair.delay_s)
        assert dec.area_um2 == pytest.approx(2 * pair.area_um2)

    def test_level_shifter_stage_cap(self, tech7):
        for f in (10, 1e3, 1e6, 1e9):
            load = f * tech7.unit_input_cap
            assert level_shifter_stage_count(tech7, load) <= 10

    def test_current_sa_leaks_more_than_voltage_sa(self, tech7):
        csa = peripheral_ppa("sense_amp_current", tech7)
        vsa = peripheral_ppa("sense_amp_voltage", tech7)
        assert csa.leakage_w > vsa.leakage_w

    def test_level_shifter_energy_quadratic_in_boost(self, tech7):
        load = 50 * tech7.unit_input_cap
        e1 = level_shifter(tech7, load, 1.0, 0.0).dynamic_energy_j
        e2 = level_shifter(tech7, load, 2.0, 0.0).dynamic_energy_j
        assert e2 == pytest.approx(4 * e1, rel=1e-9)

    def test_all_kinds_non_negative(self, tech7):
        cases = [
            ("row_decoder", dict(n_bits=8, c_load=1e-14)),
            ("tristate_wl_driver", dict(c_load=1e-14)),
            ("level_shifter", dict(c_load=1e-14, v_boost=1.2, v_hold=-0.75)),
            ("sense_amp_voltage", {}),
            ("sense_amp_current", {}),
            ("precharger_write_driver", dict(c_load=1e-14)),
            ("comparator", dict(n_bits=25)),
            ("onehot_encoder", dict(n_inputs=16)),
            ("mux", dict(degree=8, c_load=1e-15)),
        ]
        for kind, params in cases:
            ppa = peripheral_ppa(kind, tech7, **params)
            assert min(ppa.area_um2, ppa.delay_s, ppa.dynamic_energy_j,
                       ppa.leakage_w) >= 0, kind

    def test_unsupported_kind(self, tech7):
        with pytest.raises(CircuitError):
            peripheral_ppa("flux_capacitor", tech7)

    def test_missing_params(self, tech7):
        with pytest.raises(CircuitError):
            peripheral_ppa("row_decoder", tech7, n_bits=4)
