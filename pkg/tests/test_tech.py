import random

import pytest

from nscache.tech import (DeviceClass, TechError, WireLayer, device_caps,
                          load_tech, wire_rc)


def test_7nm_supply():
    assert load_tech("7nm").vdd == pytest.approx(0.7)


def test_3nm_is_nanosheet():
    assert load_tech("3nm").device_class is DeviceClass.NANOSHEET


def test_unknown_node_id():
    with pytest.raises(TechError, match="unknown node"):
        load_tech("5Å")


def test_load_is_deterministic():
    assert load_tech("7nm") == load_tech("7nm")


def test_wire_rc_ring_bus_values():
    layer = WireLayer("global", r_per_um=0.05, c_per_um=0.2e-15, pitch_nm=400)
    r, c = wire_rc(layer, 1000.0)
    assert r == pytest.approx(50.0)
    assert c == pytest.approx(200e-15)


def test_wire_rc_zero_length():
    layer = WireLayer("m", 1.0, 1e-15, 40)
    assert wire_rc(layer, 0.0) == (0.0, 0.0)


def test_wire_rc_linear():
    layer = WireLayer("m", 3.7, 0.13e-15, 40)
    rng = random.Random(5)
    for _ in range(50):
        length = rng.uniform(0.01, 5000.0)
        r1, c1 = wire_rc(layer, length)
        r2, c2 = wire_rc(layer, 2 * length)
        assert r2 == pytest.approx(2 * r1)
        assert c2 == pytest.approx(2 * c1)


def test_wire_rc_negative_length():
    layer = WireLayer("m", 1.0, 1e-15, 40)
    with pytest.raises(TechError):
        wire_rc(layer, -1.0)


def test_device_caps_scale_with_width(tech7):
    d = tech7.device("logic_n")
    cg, cgs, cgd = device_caps(d, 0.1)
    assert cg == pytest.approx(d.c_gate_per_um * 0.1)
    assert cgs == pytest.approx(d.c_parasitic_gs_per_um * 0.1)
    assert cgd == pytest.approx(d.c_parasitic_gd_per_um * 0.1)


def test_device_caps_zero_width(tech7):
    with pytest.raises(TechError):
        device_caps(tech7.device("logic_n"), 0.0)


def test_aos_parasitics_exceed_logic(tech7):
    logic = tech7.device("logic_n")
    for role in ("access_aos_write", "access_aos_read"):
        aos = tech7.device(role)
        assert aos.c_parasitic_gs_per_um > logic.c_parasitic_gs_per_um
        assert aos.c_parasitic_gd_per_um > logic.c_parasitic_gd_per_um


def test_aos_on_current_below_logic(tech7, tech3):
    for tech in (tech7, tech3):
        logic = tech.device("logic_n")
        assert tech.device("access_aos_write").i_on_per_um < logic.i_on_per_um
        assert tech.device("access_aos_read").i_on_per_um < logic.i_on_per_um


def test_missing_required_key(tmp_path):
    p = tmp_path / "bad.cfg"
    p.write_text("-NodeName: x\n-NodeNm (nm): 7\n")
    with pytest.raises(Exception, match="required"):
        load_tech(p)


def test_nonpositive_physical_value(tmp_path):
    from nscache.tech import data_dir
    text = (data_dir() / "tech_7nm.cfg").read_text()
    p = tmp_path / "neg.cfg"
    p.write_text(text.replace("-Vdd (V): 0.7", "-Vdd (V): -0.7"))
    with pytest.raises(TechError):
        load_tech(p)


def test_metal_catalog(tech7):
    assert [l.name for l in tech7.metal_layers] == [
        "local", "intermediate", "global"]
    assert tech7.layer("global").r_per_um == pytest.approx(0.05)


def test_temperature_rescale(tmp_path):
    from nscache.tech import data_dir
    text = (data_dir() / "tech_7nm.cfg").read_text()
    p = tmp_path / "t.cfg"
    p.write_text(text)
    hot = load_tech(p)
    cold = load_tech(p, temperature_c=25.0)
    assert cold.device("logic_n").i_off_per_um < hot.device("logic_n").i_off_per_um
    assert cold.device("logic_n").ss_mv_per_dec < hot.device("logic_n").ss_mv_per_dec
