import pytest

from nscache.config import ConfigError, parse_config


def test_simple_key():
    doc = parse_config("-Associativity: 16\n")
    assert doc.get("Associativity") == 16


def test_empty_document():
    doc = parse_config("")
    assert doc.entries == []


def test_typed_parse_error_names_line():
    with pytest.raises(ConfigError, match="1"):
        parse_config("-Vdd (V): banana\n")


def test_unit_and_value():
    doc = parse_config("-Vdd (V): 0.7\n-Capacity (MB): 64\n")
    assert doc.get("Vdd") == 0.7
    assert doc.get("Capacity") == 64


def test_unit_mismatch():
    with pytest.raises(ConfigError, match="unit"):
        parse_config("-Vdd (mV): 700\n")


def test_unknown_key_rejected():
    with pytest.raises(ConfigError, match="unknown key"):
        parse_config("-NotAKey: 3\n")


def test_unknown_key_warns_under_allow_unknown():
    doc = parse_config("-AllowUnknown: true\n-NotAKey: 3\n")
    assert "NotAKey" not in doc
    assert any("NotAKey" in w for w in doc.warnings)


def test_duplicate_key_reports_both_locations():
    with pytest.raises(ConfigError) as err:
        parse_config("-Associativity: 16\n\n-Associativity: 8\n", source="f.cfg")
    assert "f.cfg:3" in str(err.value) and "f.cfg:1" in str(err.value)


def test_comments_and_blanks_ignored():
    doc = parse_config("// header\n\n-Associativity: 16 // ways\n")
    assert doc.get("Associativity") == 16


def test_fraction_values():
    doc = parse_config("-ECCRatio: 17/64\n")
    assert doc.get("ECCRatio") == pytest.approx(17 / 64)


def test_include_directive_recorded():
    doc = parse_config("-MemoryCellInputFile: cell.cfg\n")
    assert doc.get("MemoryCellInputFile") == "cell.cfg"


def test_round_trip():
    text = ("-NodeName: 7nm\n-Vdd (V): 0.7\n-Associativity: 16\n"
            "-ECCRatio: 17/64\n-MemoryCellInputFile: cell_sram_7nm.cfg\n")
    doc = parse_config(text)
    again = parse_config(doc.emit())
    assert doc.same_directives(again)


def test_malformed_line():
    with pytest.raises(ConfigError, match="malformed"):
        parse_config("Vdd = 0.7\n")
