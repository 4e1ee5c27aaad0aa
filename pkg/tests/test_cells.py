import dataclasses

import pytest

from nscache.cells import (CellError, CellKind, CellModel, ChargeStallError,
                           StoredLevelPair, access_time, compact_current,
                           onoff_decades, retention_time)
from nscache.tech import DeviceParams


def const_current_device(i_amps):
    """Device whose current is i_amps regardless of bias (saturated)."""
    return DeviceParams(
        i_on_per_um=i_amps, i_off_per_um=i_amps * 1e-6, ss_mv_per_dec=80.0,
        vth=-10.0, c_gate_per_um=1e-15, c_parasitic_gs_per_um=0.0,
        c_parasitic_gd_per_um=0.0, r_on_per_um=1e3, v_on_ref=-9.9)


def charge_cell(device, c_sn, v_boost=1.2, v_hold=-0.75, v1=0.7,
                kind=CellKind.GC2T_DG):
    return CellModel(
        kind=kind, area_um2=0.02, is_beol=True, tiers_per_cell=2,
        needs_refresh=True, destructive_read=False, v_boost=v_boost,
        v_hold=v_hold, c_sn=c_sn, write_device=device, read_device=device,
        retention_s=1.0, w_write_um=1.0, w_read_um=1.0, v_stored=v1,
        sense_margin_fraction=0.7)


class TestCompactCurrent:
    def test_large_overdrive_approaches_i_on(self, tech7):
        d = tech7.device("logic_n")
        i = compact_current(d, d.v_on_ref + 1.0, 0.0, width_um=0.5)
        assert i == pytest.approx(d.i_on_per_um * 0.5, rel=1e-6)

    def test_subthreshold_decade_per_ss(self, tech7):
        d = tech7.device("access_aos_write")
        ss_v = d.ss_mv_per_dec / 1000.0
        v0 = d.vth - 3 * ss_v
        base = d.i_off_per_um * 10 ** (v0 / ss_v)
        i0 = compact_current(dataclasses.replace(d, i_floor_per_um=0.0), v0, 0.0)
        i1 = compact_current(dataclasses.replace(d, i_floor_per_um=0.0),
                             v0 + ss_v, 0.0)
        assert i0 == pytest.approx(base, rel=1e-9)
        assert i1 / i0 == pytest.approx(10.0, rel=1e-9)

    def test_dg_onoff_ratio_bound(self, cells7):
        cell = cells7["gc2t"]
        d = cell.write_device
        i_on = compact_current(d, cell.v_boost, 0.0)
        i_off = compact_current(d, cell.v_hold, 0.0)
        decades_available = onoff_decades(cell.v_boost - cell.v_hold,
                                          d.ss_mv_per_dec)
        assert i_on / i_off >= 10 ** decades_available

    def test_continuous_at_threshold(self, tech7):
        d = tech7.device("access_aos_write")
        below = compact_current(d, d.vth - 1e-9, 0.0)
        above = compact_current(d, d.vth + 1e-9, 0.0)
        assert above == pytest.approx(below, rel=1e-4)


class TestAccessTime:
    def test_constant_current_closed_form(self):
        cell = charge_cell(const_current_device(1e-6), c_sn=1e-15)
        t = access_time(cell, StoredLevelPair(0.7, 0.49))
        assert t == pytest.approx(0.7e-9, rel=1e-6)

    def test_linear_in_c_sn(self):
        dev = const_current_device(1e-6)
        t1 = access_time(charge_cell(dev, 1e-15))
        t2 = access_time(charge_cell(dev, 0.5e-15))
        assert t2 == pytest.approx(0.5 * t1, rel=1e-9)

    def test_dg_write_anchor(self, cells7):
        assert access_time(cells7["gc2t"]) == pytest.approx(122e-12, rel=0.10)

    def test_monotone_in_on_current(self, cells7):
        cell = cells7["gc2t"]
        faster = dataclasses.replace(
            cell, write_device=dataclasses.replace(
                cell.write_device,
                i_on_per_um=2 * cell.write_device.i_on_per_um))
        assert access_time(faster) < access_time(cell)

    def test_non_charge_cell_rejected(self, cells7):
        with pytest.raises(CellError):
            access_time(cells7["sram"])

    def test_stalled_charge_is_an_error(self):
        dead = DeviceParams(
            i_on_per_um=1e-12, i_off_per_um=1e-60, ss_mv_per_dec=60.0,
            vth=10.0, c_gate_per_um=1e-15, c_parasitic_gs_per_um=0.0,
            c_parasitic_gd_per_um=0.0, r_on_per_um=1e3)
        cell = charge_cell(dead, c_sn=1e-15)
        with pytest.raises(ChargeStallError):
            access_time(cell)

    def test_deterministic(self, cells7):
        assert access_time(cells7["gc2t"]) == access_time(cells7["gc2t"])


class TestRetentionTime:
    def test_constant_leak_closed_form(self):
        # c * dV / I: 1 fF * 0.3 V / 1 aA = 3e-16 C / 1e-18 A = 300 s
        dev = dataclasses.replace(const_current_device(1.0),
                                  i_floor_per_um=1e-18, i_off_per_um=1e-30,
                                  vth=10.0)
        cell = charge_cell(dev, c_sn=1e-15)
        t = retention_time(cell, StoredLevelPair(1.0, 0.7))
        assert t == pytest.approx(3e-16 / 1e-18, rel=1e-4)

    def test_dg_retention_anchor(self, cells7):
        assert retention_time(cells7["gc2t"]) == pytest.approx(0.315, rel=0.15)

    def test_inverse_in_leak(self):
        dev = dataclasses.replace(const_current_device(1.0),
                                  i_floor_per_um=1e-18, i_off_per_um=1e-30,
                                  vth=10.0)
        t1 = retention_time(charge_cell(dev, 1e-15))
        t2 = retention_time(charge_cell(
            dataclasses.replace(dev, i_floor_per_um=1e-17), 1e-15))
        assert t2 == pytest.approx(t1 / 10.0, rel=1e-6)

    def test_monotone_in_leak(self, cells7):
        cell = cells7["gc2t"]
        leakier = dataclasses.replace(
            cell, write_device=dataclasses.replace(
                cell.write_device,
                i_floor_per_um=3 * cell.write_device.i_floor_per_um))
        assert retention_time(leakier) < retention_time(cell)

    def test_gain_cell_retention_exceeds_edram_100x(self, cells7):
        assert cells7["gc2t"].retention_s >= 100 * cells7["edram"].retention_s


class TestOnOffDecades:
    def test_table_iii_biases(self):
        assert onoff_decades(1.95, 65.0) == pytest.approx(30.0)

    def test_zero_swing(self):
        assert onoff_decades(0.0, 65.0) == 0.0

    def test_forced_arithmetic(self):
        assert onoff_decades(0.6, 60.0) == pytest.approx(10.0)

    def test_nonpositive_ss(self):
        with pytest.raises(CellError):
            onoff_decades(1.0, 0.0)


class TestCellModel:
    def test_levels_invariant(self):
        with pytest.raises(CellError):
            StoredLevelPair(0.4, 0.5)

    def test_destructive_read_only_edram(self, cells7):
        bad = dataclasses.replace(cells7["sram"], destructive_read=True)
        with pytest.raises(CellError):
            bad.validate()

    def test_refresh_needs_finite_retention(self, cells7):
        bad = dataclasses.replace(cells7["sram"], needs_refresh=True)
        with pytest.raises(CellError):
            bad.validate()

    def test_table_iii_cell_areas(self, cells7, cells3):
        assert cells7["gc2t"].area_um2 == 0.02052
        assert cells3["caa"].area_um2 == 0.013
        assert cells7["edram"].area_um2 == 0.0138
        assert cells7["sram"].area_um2 == 0.0276
        assert cells3["sram"].area_um2 == 0.0199

    def test_gc2t_c_sn_from_read_gate(self, cells7, tech7):
        cell = cells7["gc2t"]
        d = tech7.device("access_aos_read")
        expect = (d.c_gate_per_um + d.c_parasitic_gs_per_um
                  + d.c_parasitic_gd_per_um) * cell.w_read_um
        assert cell.c_sn == pytest.approx(expect)


class TestVoltageDependentStorage:
    def test_c_sn_table_interpolates(self, cells7):
        cell = dataclasses.replace(
            cells7["gc2t"], c_sn_table=((0.0, 1e-15), (0.7, 2e-15)))
        assert cell.c_sn_at(0.0) == pytest.approx(1e-15)
        assert cell.c_sn_at(0.35) == pytest.approx(1.5e-15)
        assert cell.c_sn_at(0.7) == pytest.approx(2e-15)
        assert cell.c_sn_at(1.0) == pytest.approx(2e-15)

    def test_table_changes_access_integral(self, cells7):
        flat = cells7["gc2t"]
        rising = dataclasses.replace(
            flat, c_sn_table=((0.0, flat.c_sn), (0.7, 2 * flat.c_sn)))
        assert access_time(rising) > access_time(flat)
