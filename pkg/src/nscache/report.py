"""Report serialization and figure rendering.

All JSON is emitted with sorted keys and floats rounded to six significant
digits so repeated runs produce byte-identical artifacts; every top-level
report carries a schema_version.  The figure helpers render the same
reports as PNG files next to the delimited output.
"""

from __future__ import annotations

import csv
import io
import json
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402

SCHEMA_VERSION = 1


def round_floats(obj):
    """Recursively round floats to 6 significant digits."""
    if isinstance(obj, float):
        if obj != obj or obj in (float("inf"), float("-inf")):
            return str(obj)
        return float(f"{obj:.6g}")
    if isinstance(obj, dict):
        return {k: round_floats(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [round_floats(v) for v in obj]
    return obj


def to_json(payload: dict) -> str:
    body = dict(payload)
    body.setdefault("schema_version", SCHEMA_VERSION)
    return json.dumps(round_floats(body), sort_keys=True, indent=2) + "\n"


def write_json(path: str | Path, payload: dict) -> None:
    Path(path).write_text(to_json(payload), encoding="utf-8")


def write_csv(path: str | Path, header, rows) -> None:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([f"{v:.6g}" if isinstance(v, float) else v
                         for v in row])
    Path(path).write_text(buf.getvalue(), encoding="utf-8")


def bank_report(ppa, name: str = "bank") -> dict:
    return {
        "name": name,
        "kind": ppa.bank_kind.value,
        "access_mode": ppa.access_mode.value,
        "capacity_bytes": ppa.capacity_bytes,
        "area_mm2": ppa.area_total_mm2,
        "area_feol_mm2": ppa.area_feol_mm2,
        "area_beol_mm2": ppa.area_beol_mm2,
        "wire_area_mm2": ppa.wire_area_mm2,
        "bit_density_mb_per_mm2": ppa.bit_density_mb_per_mm2,
        "t_hit_s": ppa.t_hit_s,
        "t_miss_detect_s": ppa.t_miss_detect_s,
        "t_write_s": ppa.t_write_s,
        "t_tag_s": ppa.t_tag_s,
        "t_data_s": ppa.t_data_s,
        "t_routing_s": ppa.t_routing_s,
        "t_subarray_s": ppa.t_subarray_s,
        "subarray_busy_s": ppa.subarray_busy_s,
        "e_hit_j": ppa.e_hit_j,
        "e_miss_j": ppa.e_miss_j,
        "e_write_j": ppa.e_write_j,
        "e_refresh_row_j": ppa.e_refresh_row_j,
        "leakage_w": ppa.leakage_w,
        "needs_refresh": ppa.refresh.needs,
        "retention_s": (ppa.refresh.t_retention_s
                        if ppa.refresh.needs else None),
        "refresh_rows": ppa.refresh.n_rows if ppa.refresh.needs else None,
        "extra_write_cycles": ppa.extra_write_cycles,
        "n_subarrays": ppa.n_subarrays,
        "n_mats_per_subarray": ppa.n_mats_per_subarray,
    }


def audit_rows(ppa):
    total_leak = sum(leak for _, _, leak in ppa.components)
    rows = [(name, area, leak) for name, area, leak in ppa.components]
    rows.append(("total", sum(a for _, a, _ in ppa.components), total_leak))
    return rows


def sim_report(stats, energy=None) -> dict:
    body = {
        "n_hits": stats.n_hits,
        "n_misses": stats.n_misses,
        "n_writes": stats.n_writes,
        "n_reads": stats.n_reads,
        "n_dirty_evictions": stats.n_dirty_evictions,
        "runtime_cycles": stats.runtime_cycles,
        "refresh_stall_cycles": stats.refresh_stall_cycles,
        "refresh_count": stats.refresh_count,
    }
    if energy is not None:
        body["energy"] = {
            "hit_j": energy.hit_j,
            "miss_onchip_j": energy.miss_onchip_j,
            "write_j": energy.write_j,
            "refresh_j": energy.refresh_j,
            "static_j": energy.static_j,
            "total_onchip_j": energy.total_onchip_j,
            "offchip_miss_j": energy.offchip_miss_j,
        }
    return body


# ---------------------------------------------------------------------------
# figures
# ---------------------------------------------------------------------------


def _save(fig, path: Path) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(path, dpi=150, bbox_inches="tight")
    plt.close(fig)
    return path


def figure_bank(report: dict, path: str | Path) -> Path:
    """Latency and per-operation energy breakdown bars."""
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(8, 3.2))
    lat = {
        "routing": report["t_routing_s"],
        "subarray": report["t_subarray_s"],
        "tag": report["t_tag_s"],
    }
    ax1.bar(list(lat), [v * 1e9 for v in lat.values()], color="#4878a8")
    ax1.set_ylabel("latency (ns)")
    ax1.set_title(f"{report['name']}: hit {report['t_hit_s']*1e9:.2f} ns")
    en = {
        "hit": report["e_hit_j"],
        "miss": report["e_miss_j"],
        "write": report["e_write_j"],
    }
    ax2.bar(list(en), [v * 1e12 for v in en.values()], color="#a85448")
    ax2.set_ylabel("energy (pJ)")
    ax2.set_title(f"area {report['area_mm2']:.2f} mm$^2$")
    return _save(fig, Path(path))


def figure_ranked(rows, objective: str, path: str | Path) -> Path:
    """Objective value against rank for a search."""
    fig, ax = plt.subplots(figsize=(5, 3.2))
    ax.plot([r["rank"] for r in rows],
            [r["objective_value"] for r in rows], "o-", color="#4878a8")
    ax.set_xlabel("rank")
    ax.set_ylabel(objective)
    ax.set_title("design-space search")
    return _save(fig, Path(path))


def figure_cdf(cdf_rows, path: str | Path) -> Path:
    """Load-to-use cumulative distribution."""
    fig, ax = plt.subplots(figsize=(5, 3.2))
    if cdf_rows:
        xs = [r[0] for r in cdf_rows]
        ys = [r[1] for r in cdf_rows]
        ax.step(xs, ys, where="post", color="#4878a8")
    ax.set_xlabel("load-to-use cycles")
    ax.set_ylabel("cumulative fraction")
    ax.set_ylim(0, 1.02)
    return _save(fig, Path(path))


def figure_compare(rows, path: str | Path) -> Path:
    """Percent change per metric between two designs."""
    fig, ax = plt.subplots(figsize=(6, 3.2))
    names = [r[0] for r in rows]
    pct = [r[3] for r in rows]
    colors = ["#489148" if p <= 0 else "#a85448" for p in pct]
    ax.barh(names, pct, color=colors)
    ax.axvline(0, color="black", linewidth=0.8)
    ax.set_xlabel("% change")
    return _save(fig, Path(path))
