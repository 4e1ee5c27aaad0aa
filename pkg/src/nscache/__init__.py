"""Early-exploration PPA models and a refresh-aware trace simulator for
last-level caches built from SRAM, 1T1C eDRAM, STT-MRAM, and BEOL
oxide-semiconductor gain cells, including monolithic-3D stacking and
tags-under-data integration."""

from .bank import (AccessMode, BankKind, BankOrg, BankPPA, build_bank,
                   build_tau_bank, gdl_widths, route_htree)
from .cells import (CellKind, CellModel, StoredLevelPair, access_time,
                    compact_current, load_cell, onoff_decades, retention_time)
from .circuits import (BufferChain, PeripheralPPA, RCLadder, chain_metrics,
                       elmore_delay, optimal_stage_count, peripheral_ppa,
                       repeated_wire, size_chain)
from .llcsim import (CacheConfig, EnergyParams, SimStats, TimingParams,
                     TraceEvent, energy_program, quantize_cycles,
                     refresh_schedule, simulate)
from .m3d import MIVParams, TierStack, assemble_m3d_mat, fold_array, \
    miv_parasitics, reshape_feol
from .mat import MatDesign, MatPPA, build_mat, refresh_params
from .optimizer import (Objective, RankedDesign, SearchSpec, compare_designs,
                        enumerate_candidates, search)
from .tech import (DeviceParams, TechNode, WireLayer, device_caps, load_tech,
                   wire_rc)

__version__ = "0.1.0"
