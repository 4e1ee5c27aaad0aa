"""Design-space search over bank organizations.

The space is the Cartesian product of power-of-two mat dimensions, mux
degrees, and fold counts that satisfy the capacity identity for the pinned
subarray/mat grid.  Every candidate runs through the full mat/bank build;
infeasible electricals (sense-margin failures) are skipped, constraint
violations filtered, and survivors ranked by the chosen objective with
deterministic tie-breaking (area, then leakage, then the organization key).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .bank import AccessMode, BankError, BankKind, BankOrg, BankPPA, build_bank
from .cells import CellModel
from .m3d import assemble_m3d_mat
from .mat import MatDesign, MatError, build_mat
from .tech import TechNode


class SearchError(ValueError):
    pass


class Objective(enum.Enum):
    READ_LATENCY = "ReadLatency"
    WRITE_LATENCY = "WriteLatency"
    RW_DELAY_PRODUCT = "RWDelayProduct"
    AREA = "Area"
    LEAKAGE = "Leakage"
    EDP = "EDP"


def objective_value(obj: Objective, ppa: BankPPA) -> float:
    if obj is Objective.READ_LATENCY:
        return ppa.t_hit_s
    if obj is Objective.WRITE_LATENCY:
        return ppa.t_write_s
    if obj is Objective.RW_DELAY_PRODUCT:
        return ppa.t_hit_s * ppa.t_write_s
    if obj is Objective.AREA:
        return ppa.area_total_mm2
    if obj is Objective.LEAKAGE:
        return ppa.leakage_w
    return ppa.t_hit_s * ppa.e_hit_j


@dataclass(frozen=True)
class SearchSpec:
    tech: TechNode
    cell: CellModel
    capacity_bytes: int
    objective: Objective
    n_sr: int = 32
    n_sc: int = 16
    n_asr: int = 1
    n_asc: int = 1
    mats_rows: int = 4
    mats_cols: int = 8
    n_amr: int | None = None
    n_amc: int | None = None
    associativity: int = 16
    w_block_data: int = 512
    access_mode: AccessMode = AccessMode.SEQUENTIAL
    ecc_ratio: float = 0.0
    mat_rows_bounds: tuple = (32, 1024)
    mat_cols_bounds: tuple = (32, 1024)
    bl_mux_options: tuple = (1, 2, 4, 8)
    sa_mux_options: tuple = (1, 2, 4, 8)
    folds_options: tuple | None = None   # default: (0,1,2) for BEOL else (0,)
    mat_rows_fixed: int | None = None
    mat_cols_fixed: int | None = None
    max_area_mm2: float | None = None
    max_latency_s: float | None = None
    max_tiers: int | None = None
    top_k: int = 10

    def validate(self):
        if self.capacity_bytes <= 0:
            raise SearchError("capacity must be > 0")
        for b in (self.mat_rows_bounds, self.mat_cols_bounds):
            if not b or b[0] > b[1]:
                raise SearchError("empty enumeration bounds")


@dataclass(frozen=True)
class RankedDesign:
    org: BankOrg
    design: MatDesign
    folds: int
    ppa: BankPPA
    objective_value: float
    rank: int


def _pow2_range(lo: int, hi: int):
    n = 1
    while n < lo:
        n *= 2
    while n <= hi:
        yield n
        n *= 2


def _base_org(spec: SearchSpec) -> BankOrg:
    bits = spec.capacity_bytes * 8
    n_block = bits // spec.w_block_data
    return BankOrg(
        bank_kind=BankKind.DATA,
        n_sr=spec.n_sr, n_sc=spec.n_sc,
        n_asr=spec.n_asr, n_asc=spec.n_asc,
        mats_rows=spec.mats_rows, mats_cols=spec.mats_cols,
        n_amr=spec.n_amr or spec.mats_rows,
        n_amc=spec.n_amc or spec.mats_cols,
        associativity=spec.associativity,
        n_block=n_block,
        w_block_data=spec.w_block_data,
        w_block_tag=1,
        access_mode=spec.access_mode,
        capacity_bytes=spec.capacity_bytes,
        ecc_ratio=spec.ecc_ratio,
    )


def enumerate_candidates(spec: SearchSpec):
    """Deterministic lazy sequence of (BankOrg, MatDesign, folds)."""
    spec.validate()
    mats_total = spec.n_sr * spec.n_sc * spec.mats_rows * spec.mats_cols
    bits = spec.capacity_bytes * 8
    if bits % mats_total:
        raise SearchError(
            f"capacity {spec.capacity_bytes} B does not tile over "
            f"{mats_total} mats")
    bits_per_mat = bits // mats_total
    org = _base_org(spec)
    if spec.folds_options is not None:
        folds_opts = spec.folds_options
    elif spec.cell.is_beol:
        folds_opts = (0, 1, 2)
    else:
        folds_opts = (0,)
    if spec.max_tiers is not None:
        folds_opts = tuple(f for f in folds_opts if 2 ** f <= spec.max_tiers)
        if not folds_opts:
            raise SearchError("max_tiers admits no fold option")

    rows_iter = ([spec.mat_rows_fixed] if spec.mat_rows_fixed
                 else list(_pow2_range(*spec.mat_rows_bounds)))
    any_candidate = False
    for rows in rows_iter:
        if bits_per_mat % rows:
            continue
        cols = bits_per_mat // rows
        if spec.mat_cols_fixed and cols != spec.mat_cols_fixed:
            continue
        if cols & (cols - 1) or not (spec.mat_cols_bounds[0] <= cols
                                     <= spec.mat_cols_bounds[1]):
            continue
        sa_opts = (1,) if spec.cell.is_beol else spec.sa_mux_options
        for bl in spec.bl_mux_options:
            if cols % bl:
                continue
            for sa in sa_opts:
                if cols % sa:
                    continue
                design = MatDesign(
                    cell=spec.cell, n_rows=rows, n_cols=cols,
                    tech=spec.tech, bl_mux=bl, sa_mux=sa,
                    folded_bitline=spec.cell.needs_refresh,
                    reference_rows=1,
                    ecc_cols_factor=1.0 + spec.ecc_ratio,
                )
                for folds in folds_opts:
                    any_candidate = True
                    yield org, design, folds
    if not any_candidate:
        raise SearchError("enumeration bounds exclude every "
                          "capacity-consistent organization")


def search(spec: SearchSpec) -> list:
    """Evaluate all candidates, filter constraints, return top-K designs."""
    results = []
    for org, design, folds in enumerate_candidates(spec):
        try:
            if spec.cell.is_beol:
                mat = assemble_m3d_mat(design, folds)
            else:
                mat = build_mat(design)
            ppa = build_bank(org, mat, spec.tech)
        except (MatError, BankError):
            continue
        if spec.max_area_mm2 is not None and ppa.area_total_mm2 > spec.max_area_mm2:
            continue
        if spec.max_latency_s is not None and ppa.t_hit_s > spec.max_latency_s:
            continue
        value = objective_value(spec.objective, ppa)
        key = (value, ppa.area_total_mm2, ppa.leakage_w,
               (design.n_rows, design.n_cols, design.bl_mux, design.sa_mux,
                folds))
        results.append((key, org, design, folds, ppa, value))
    if not results:
        raise SearchError("no feasible design under the given constraints")
    results.sort(key=lambda t: t[0])
    ranked = []
    for rank, (_, org, design, folds, ppa, value) in enumerate(
            results[:spec.top_k], start=1):
        ranked.append(RankedDesign(org, design, folds, ppa, value, rank))
    return ranked


@dataclass(frozen=True)
class ComparisonReport:
    """Per-metric deltas between two designs of equal capacity."""

    metrics: tuple   # (name, value_a, value_b, pct_change)

    def as_rows(self):
        return list(self.metrics)


_COMPARE_METRICS = (
    ("area_mm2", lambda p: p.area_total_mm2),
    ("read_latency_s", lambda p: p.t_hit_s),
    ("write_latency_s", lambda p: p.t_write_s),
    ("read_energy_j", lambda p: p.e_hit_j),
    ("write_energy_j", lambda p: p.e_write_j),
    ("leakage_w", lambda p: p.leakage_w),
)


def compare_designs(a: BankPPA, b: BankPPA) -> ComparisonReport:
    """Percent change per metric from a to b: (b - a) / a * 100."""
    if a.capacity_bytes != b.capacity_bytes:
        raise SearchError(
            f"capacity mismatch: {a.capacity_bytes} vs {b.capacity_bytes}")
    rows = []
    for name, getter in _COMPARE_METRICS:
        va, vb = getter(a), getter(b)
        pct = 0.0 if va == 0 else (vb - va) / va * 100.0
        rows.append((name, va, vb, pct))
    return ComparisonReport(tuple(rows))
