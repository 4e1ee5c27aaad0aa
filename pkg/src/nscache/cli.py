"""Command-line front end.

Subcommands:
    model     build one bank from a config; emit PPA JSON + audit CSV
    optimize  rank organizations for an objective; emit CSV/JSON
    simulate  run a trace through the LLC simulator; emit stats/energy JSON
              and the load-to-use CDF CSV
    compare   delta table between two model reports (text + JSON)
    gen-trace synthesize request traces (uniform/strided/zipf/mixed)

Outputs are deterministic for fixed inputs; failures exit nonzero after
printing a machine-readable error JSON.  --figures renders PNG charts next
to the delimited outputs.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path

from . import report
from .bank import (AccessMode, BankError, BankKind, BankOrg, build_bank,
                   build_tau_bank, matching_tag_org, tag_mat_dims)
from .cells import CellError, load_cell
from .circuits import CircuitError
from .config import ConfigDocument, ConfigError, parse_config_file
from .llcsim import (BlockingScope, CacheConfig, EnergyParams, Mode,
                     RefreshTiming, SimError, TimingParams, TraceError,
                     energy_program, parse_trace, quantize_cycles, simulate)
from .m3d import M3DError, assemble_m3d_mat
from .mat import MatDesign, MatError, build_mat
from .optimizer import Objective, SearchError, SearchSpec, search
from .tech import TechError, data_dir, load_tech

USER_ERRORS = (ConfigError, TechError, CellError, CircuitError, MatError,
               M3DError, BankError, SearchError, SimError, TraceError,
               FileNotFoundError)


def _resolve(path_str: str, base: Path) -> Path:
    p = Path(path_str)
    for cand in (p, base / p, data_dir() / p):
        if cand.exists():
            return cand
    raise FileNotFoundError(f"cannot find {path_str!r} near {base}")


def _load_context(cfg_path: Path):
    doc = parse_config_file(cfg_path)
    base = cfg_path.parent
    tech_src = doc.get("TechInputFile")
    if tech_src:
        tech = load_tech(_resolve(tech_src, base),
                         temperature_c=doc.get("Temperature"))
    else:
        tech = load_tech(doc.get("NodeName", "7nm"),
                         temperature_c=doc.get("Temperature"))
    cell = None
    if "MemoryCellInputFile" in doc:
        cell = load_cell(_resolve(doc.require("MemoryCellInputFile"), base), tech)
    return doc, tech, cell, base


def org_from_config(doc: ConfigDocument, kind: BankKind | None = None) -> BankOrg:
    capacity = int(doc.require("Capacity") * (1 << 20))
    w_block = doc.get("WordWidth", doc.get("LineSize", 64) * 8)
    n_block = capacity * 8 // w_block
    mode = AccessMode(doc.get("AccessMode", "Sequential"))
    bank_kind = kind or BankKind(doc.get("BankKind", "Data"))
    return BankOrg(
        bank_kind=bank_kind,
        n_sr=doc.get("SubarrayRows", 32),
        n_sc=doc.get("SubarrayCols", 16),
        n_asr=doc.get("ActiveSubarrayRows", 1),
        n_asc=doc.get("ActiveSubarrayCols", 1),
        mats_rows=doc.get("MatsPerSubarrayRows", 4),
        mats_cols=doc.get("MatsPerSubarrayCols", 8),
        n_amr=doc.get("ActiveMatsRows", doc.get("MatsPerSubarrayRows", 4)),
        n_amc=doc.get("ActiveMatsCols", doc.get("MatsPerSubarrayCols", 8)),
        associativity=doc.get("Associativity", 16),
        n_block=n_block,
        w_block_data=w_block,
        w_block_tag=doc.get("TagBits", 32),
        access_mode=mode,
        capacity_bytes=capacity,
        ecc_ratio=doc.get("ECCRatio", 0.0),
    )


def design_from_config(doc: ConfigDocument, cell, tech, org: BankOrg) -> MatDesign:
    bits_per_mat = (org.capacity_bytes * 8
                    // (org.n_subarrays * org.mats_per_subarray))
    rows = doc.get("MatRows")
    cols = doc.get("MatCols")
    if rows is None and cols is None:
        raise ConfigError("model needs -MatRows/-MatCols "
                          "(use `optimize` to search them)")
    rows = rows or bits_per_mat // cols
    cols = cols or bits_per_mat // rows
    return MatDesign(
        cell=cell,
        n_rows=rows,
        n_cols=cols,
        tech=tech,
        bl_mux=doc.get("BLMux", 1),
        sa_mux=doc.get("SAMux", 1),
        wl_segmentation=doc.get("WLSegmentation", 1),
        folded_bitline=doc.get("NeedsRefresh", cell.needs_refresh),
        reference_rows=doc.get("ReferenceRows", 1),
        ecc_cols_factor=1.0 + org.ecc_ratio,
        sense_leakage_budget=doc.get("SenseLeakageBudget", 0.10),
    )


def build_bank_from_config(cfg_path: Path):
    doc, tech, cell, base = _load_context(cfg_path)
    if cell is None:
        raise ConfigError(f"{cfg_path}: missing -MemoryCellInputFile")
    org = org_from_config(doc)
    design = design_from_config(doc, cell, tech, org)
    folds = doc.get("Folds", 0)
    if org.bank_kind in (BankKind.TAU_HM, BankKind.TAU_HT):
        tag_src = doc.get("TagCellInputFile")
        if tag_src is None:
            raise ConfigError("TAU banks need -TagCellInputFile")
        tag_cell = load_cell(_resolve(tag_src, base), tech)
        tag_org = matching_tag_org(org)
        t_rows, t_cols = tag_mat_dims(tag_org)
        tag_design = MatDesign(cell=tag_cell, n_rows=t_rows, n_cols=t_cols,
                               tech=tech)
        ppa = build_tau_bank(org, tag_org, org.bank_kind, design, tag_design,
                             n_folds=max(folds, 1),
                             central_fraction=doc.get("TAUCentralFraction", 0.25))
    else:
        if cell.is_beol and folds >= 0:
            mat = assemble_m3d_mat(design, folds)
        else:
            mat = build_mat(design)
        ppa = build_bank(org, mat, tech,
                         slice_count=doc.get("SliceCount", 1),
                         slice_hop_s=doc.get("SliceHopLatency", 0.0))
    return doc, tech, cell, org, design, ppa


# ---------------------------------------------------------------------------
# trace generation
# ---------------------------------------------------------------------------

TRACE_KINDS = ("uniform_random", "strided", "zipf", "read_write_mix")


def gen_trace(kind: str, params: dict, seed: int) -> str:
    """Deterministic synthetic trace text for a generator kind."""
    if kind not in TRACE_KINDS:
        raise SimError(f"unknown trace kind {kind!r}")
    events = int(params.get("events", 1000))
    line = int(params.get("line_bytes", 64))
    footprint = int(params.get("footprint_bytes", 1 << 22))
    gap = int(params.get("gap_cycles", 4))
    write_fraction = float(params.get("write_fraction",
                                      0.3 if kind == "read_write_mix" else 0.0))
    if events < 0 or line <= 0 or footprint < line or gap < 0:
        raise SimError("invalid trace parameters")
    n_lines = footprint // line
    rng = random.Random(seed)
    out = []
    stride = int(params.get("stride_bytes", line))
    zipf_alpha = float(params.get("zipf_alpha", 1.2))
    cdf = None
    if kind == "zipf":
        weights = [1.0 / (i + 1) ** zipf_alpha for i in range(n_lines)]
        total = sum(weights)
        acc, cdf = 0.0, []
        for w in weights:
            acc += w / total
            cdf.append(acc)
    tick = 0
    addr = 0
    for _ in range(events):
        if kind == "strided":
            addr = (addr + stride) % footprint
            a = addr
        elif kind == "zipf":
            u = rng.random()
            lo, hi = 0, n_lines - 1
            while lo < hi:
                mid = (lo + hi) // 2
                if cdf[mid] < u:
                    lo = mid + 1
                else:
                    hi = mid
            a = lo * line
        else:
            a = rng.randrange(n_lines) * line
        op = "W" if rng.random() < write_fraction else "R"
        out.append(f"{tick} {op} {a:x}")
        tick += gap
    return "\n".join(out) + ("\n" if out else "")


# ---------------------------------------------------------------------------
# subcommand handlers
# ---------------------------------------------------------------------------


def _cmd_model(args) -> int:
    doc, tech, cell, org, design, ppa = build_bank_from_config(Path(args.config))
    body = report.bank_report(ppa, name=Path(args.config).stem)
    f_clk = doc.get("ClockFrequency")
    if f_clk:
        f_hz = f_clk * 1e9
        lat = ppa.timing_latencies()
        body["cycles"] = {k: quantize_cycles(v, f_hz) for k, v in lat.items()}
        body["cycles"]["write"] += ppa.extra_write_cycles
    report.write_json(args.out, body)
    if args.audit:
        report.write_csv(args.audit, ("component", "area_um2", "leakage_w"),
                         report.audit_rows(ppa))
    if args.figures:
        report.figure_bank(body, Path(args.figures) / "bank_ppa.png")
    return 0


def _cmd_optimize(args) -> int:
    doc, tech, cell, base = _load_context(Path(args.config))
    if cell is None:
        raise ConfigError("optimize needs -MemoryCellInputFile")
    org = org_from_config(doc)
    spec = SearchSpec(
        tech=tech, cell=cell,
        capacity_bytes=org.capacity_bytes,
        objective=Objective(doc.get("OptimizationTarget", "RWDelayProduct")),
        n_sr=org.n_sr, n_sc=org.n_sc, n_asr=org.n_asr, n_asc=org.n_asc,
        mats_rows=org.mats_rows, mats_cols=org.mats_cols,
        associativity=org.associativity,
        w_block_data=org.w_block_data,
        access_mode=org.access_mode,
        ecc_ratio=org.ecc_ratio,
        mat_rows_bounds=(doc.get("MinMatRows", 32), doc.get("MaxMatRows", 1024)),
        mat_cols_bounds=(doc.get("MinMatCols", 32), doc.get("MaxMatCols", 1024)),
        mat_rows_fixed=doc.get("MatRows"),
        mat_cols_fixed=doc.get("MatCols"),
        max_area_mm2=doc.get("MaxAreaConstraint"),
        max_latency_s=doc.get("MaxLatencyConstraint"),
        max_tiers=doc.get("MaxTiers"),
        top_k=doc.get("TopK", 10),
    )
    ranked = search(spec)
    rows = []
    for r in ranked:
        rows.append({
            "rank": r.rank,
            "objective_value": r.objective_value,
            "mat_rows": r.design.n_rows,
            "mat_cols": r.design.n_cols,
            "bl_mux": r.design.bl_mux,
            "sa_mux": r.design.sa_mux,
            "folds": r.folds,
            "area_mm2": r.ppa.area_total_mm2,
            "t_hit_s": r.ppa.t_hit_s,
            "t_write_s": r.ppa.t_write_s,
            "e_hit_j": r.ppa.e_hit_j,
            "leakage_w": r.ppa.leakage_w,
        })
    report.write_json(args.out, {"objective": spec.objective.value,
                                 "designs": rows})
    if args.csv:
        header = list(rows[0].keys())
        report.write_csv(args.csv, header,
                         [[row[k] for k in header] for row in rows])
    if args.figures:
        report.figure_ranked(rows, spec.objective.value,
                             Path(args.figures) / "ranked.png")
    return 0


def timing_from_config(doc: ConfigDocument) -> tuple:
    f_hz = doc.get("ClockFrequency", 3.0) * 1e9
    cycles = {
        "hit": doc.get("HitCycles", 20),
        "miss_detect": doc.get("MissDetectCycles", 8),
        "write": doc.get("WriteCycles", 22),
        "tag_access": doc.get("TagAccessCycles", 6),
        "tag_broadcast": doc.get("TagBroadcastCycles", 2),
        "refresh_row": doc.get("RefreshRowCycles", 40),
        "subarray_busy": doc.get("SubarrayBusyCycles",
                                 doc.get("HitCycles", 20)),
        "offchip_fill": doc.get("OffChipFillCycles", 100),
    }
    refresh = RefreshTiming(
        enabled=doc.get("RefreshEnabled", False),
        row_period_s=doc.get("Retention", 0.0) * doc.get("RetentionDerate", 1.0),
        n_rows=doc.get("MatRows", 128),
    )
    timing = TimingParams(
        f_clk_hz=f_hz,
        cycles=cycles,
        mode=Mode(doc.get("AccessMode", "Sequential")),
        refresh=refresh,
        blocking_scope=BlockingScope(doc.get("RefreshBlockingScope", "Mat")),
        n_subarrays=doc.get("SimSubarrays", 1),
        n_mats_per_subarray=doc.get("SimMatsPerSubarray", 1),
    )
    cache = CacheConfig(
        capacity_bytes=int(doc.require("Capacity") * (1 << 20)),
        line_bytes=doc.get("LineSize", 64),
        ways=doc.get("Associativity", 16),
    )
    energy = EnergyParams(
        e_hit=doc.get("EnergyHit", 0.0),
        e_miss=doc.get("EnergyMiss", 0.0),
        e_write=doc.get("EnergyWrite", 0.0),
        e_refresh_row=doc.get("EnergyRefreshRow", 0.0),
        p_static=doc.get("StaticPower", 0.0),
        t_retention=doc.get("Retention", float("inf")) or float("inf"),
        n_row=doc.get("MatRows", 0),
        miss_offchip_multiplier=doc.get("MissOffchipMultiplier", 92.0),
    )
    return timing, cache, energy


def _cmd_simulate(args) -> int:
    doc = parse_config_file(Path(args.config))
    timing, cache, energy = timing_from_config(doc)
    trace = parse_trace(Path(args.trace).read_text(encoding="utf-8"))
    stats = simulate(trace, cache, timing, record_events=args.events)
    t_run = stats.runtime_cycles / timing.f_clk_hz
    erep = energy_program(stats, energy, t_run)
    body = report.sim_report(stats, erep)
    body["t_run_s"] = t_run
    report.write_json(args.out, body)
    cdf_rows = stats.load_to_use_cdf()
    if args.cdf:
        report.write_csv(args.cdf, ("cycle_bucket", "cumulative_fraction"),
                         cdf_rows)
    if args.figures:
        report.figure_cdf(cdf_rows, Path(args.figures) / "load_to_use_cdf.png")
    return 0


def _cmd_compare(args) -> int:
    a = json.loads(Path(args.report_a).read_text(encoding="utf-8"))
    b = json.loads(Path(args.report_b).read_text(encoding="utf-8"))
    if a.get("capacity_bytes") != b.get("capacity_bytes"):
        raise SearchError("capacity mismatch between reports")
    metrics = (
        ("area_mm2", "Area"),
        ("t_hit_s", "Read Latency"),
        ("t_write_s", "Write Latency"),
        ("e_hit_j", "Read Energy"),
        ("e_write_j", "Write Energy"),
        ("leakage_w", "Leakage"),
    )
    rows = []
    for key, label in metrics:
        va, vb = a[key], b[key]
        pct = 0.0 if va == 0 else (vb - va) / va * 100.0
        rows.append((label, va, vb, pct))
    width = max(len(r[0]) for r in rows)
    print(f"{'Metric':<{width}}  {'A':>12}  {'B':>12}  {'% Change':>9}")
    for label, va, vb, pct in rows:
        print(f"{label:<{width}}  {va:>12.6g}  {vb:>12.6g}  {pct:>+8.1f}%")
    if args.out:
        report.write_json(args.out, {
            "a": a.get("name"), "b": b.get("name"),
            "deltas": [{"metric": m, "a": va, "b": vb, "pct_change": pct}
                       for m, va, vb, pct in rows],
        })
    if args.figures:
        report.figure_compare(rows, Path(args.figures) / "compare.png")
    return 0


def _cmd_gen_trace(args) -> int:
    params = {
        "events": args.events,
        "footprint_bytes": args.footprint,
        "line_bytes": args.line,
        "gap_cycles": args.gap,
        "write_fraction": args.write_fraction,
        "stride_bytes": args.stride,
        "zipf_alpha": args.zipf_alpha,
    }
    text = gen_trace(args.kind, params, args.seed)
    Path(args.out).write_text(text, encoding="utf-8")
    return 0


def make_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="nscache",
        description="Cache PPA exploration and refresh-aware trace simulation")
    sub = p.add_subparsers(dest="command", required=True)

    m = sub.add_parser("model", help="build one bank from a config")
    m.add_argument("--config", required=True)
    m.add_argument("--out", required=True)
    m.add_argument("--audit", help="component audit CSV path")
    m.add_argument("--figures", help="directory for PNG charts")
    m.set_defaults(func=_cmd_model)

    o = sub.add_parser("optimize", help="rank organizations for an objective")
    o.add_argument("--config", required=True)
    o.add_argument("--out", required=True)
    o.add_argument("--csv", help="ranked designs CSV path")
    o.add_argument("--figures")
    o.set_defaults(func=_cmd_optimize)

    s = sub.add_parser("simulate", help="trace-driven LLC simulation")
    s.add_argument("--config", required=True)
    s.add_argument("--trace", required=True)
    s.add_argument("--out", required=True)
    s.add_argument("--cdf", help="load-to-use CDF CSV path")
    s.add_argument("--events", action="store_true",
                   help="record the per-event log")
    s.add_argument("--figures")
    s.set_defaults(func=_cmd_simulate)

    c = sub.add_parser("compare", help="delta table between two reports")
    c.add_argument("report_a")
    c.add_argument("report_b")
    c.add_argument("--out")
    c.add_argument("--figures")
    c.set_defaults(func=_cmd_compare)

    g = sub.add_parser("gen-trace", help="synthesize a request trace")
    g.add_argument("--kind", choices=TRACE_KINDS, required=True)
    g.add_argument("--out", required=True)
    g.add_argument("--events", type=int, default=1000)
    g.add_argument("--seed", type=int, default=1)
    g.add_argument("--footprint", type=int, default=1 << 22)
    g.add_argument("--line", type=int, default=64)
    g.add_argument("--gap", type=int, default=4)
    g.add_argument("--write-fraction", type=float, default=0.0)
    g.add_argument("--stride", type=int, default=64)
    g.add_argument("--zipf-alpha", type=float, default=1.2)
    g.set_defaults(func=_cmd_gen_trace)
    return p


def main(argv=None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except USER_ERRORS as exc:
        print(json.dumps({"error": {
            "type": type(exc).__name__,
            "message": str(exc),
        }, "schema_version": report.SCHEMA_VERSION}, sort_keys=True))
        return 1


if __name__ == "__main__":
    sys.exit(main())
