import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from nscache.cells import load_cell
from nscache.tech import data_dir, load_tech


@pytest.fixture(scope="session")
def tech7():
    return load_tech("7nm")


@pytest.fixture(scope="session")
def tech3():
    return load_tech("3nm")


@pytest.fixture(scope="session")
def cells7(tech7):
    return {
        "sram": load_cell(data_dir() / "cell_sram_7nm.cfg", tech7),
        "edram": load_cell(data_dir() / "cell_edram_7nm.cfg", tech7),
        "stt": load_cell(data_dir() / "cell_sttmram_7nm.cfg", tech7),
        "gc2t": load_cell(data_dir() / "cell_gc2t_dg_7nm.cfg", tech7),
    }


@pytest.fixture(scope="session")
def cells3(tech3):
    return {
        "sram": load_cell(data_dir() / "cell_sram_3nm.cfg", tech3),
        "caa": load_cell(data_dir() / "cell_gc2t_caa_3nm.cfg", tech3),
    }
