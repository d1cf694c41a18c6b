"""Persistence of covering certificates: report JSON, summary CSV, audits.

The report is a self-describing, versioned JSON document that captures the
inputs (point-set provenance, bound, region, engine parameters) alongside
every certified ball, so a run can be re-verified from the point file alone.
Timings are recorded for information; everything else is deterministic.
"""
from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .covering import CoverOutcome, CoverParams
from .discrepancy import directed_values
from .geometry import PolarDirection, Region, polar_to_cartesian
from .pointsets import PointSet

SCHEMA_VERSION = 1

SUMMARY_HEADER = ["n", "t", "n_DD", "n_CC", "phase1_s", "cover_cap_s", "total_s", "d", "status"]


@dataclass
class RunSummaryRow:
    n: int
    t: int
    n_DD: int
    n_CC: int
    phase1_s: float
    cover_cap_s: float
    total_s: float
    d: float
    status: str

    def __post_init__(self):
        if self.total_s < self.phase1_s:
            raise ValueError("total_s must include phase1_s")
        if self.n_CC > self.n_DD:
            raise ValueError("n_CC cannot exceed n_DD")


def _angle(x: float) -> float:
    # 17 significant digits round-trip any IEEE double exactly.
    return float(f"{x:.17g}")


def report_dict(ps: PointSet, params: CoverParams, outcome: CoverOutcome) -> dict:
    doc = {
        "schema_version": SCHEMA_VERSION,
        "points_meta": {
            "generator": ps.meta.generator,
            "n": ps.meta.n,
            "size": ps.size,
        },
        "params": {
            "d": _angle(params.d),
            "region": {
                "phi_min": _angle(params.region.phi_min),
                "phi_max": _angle(params.region.phi_max),
                "theta_min": _angle(params.region.theta_min),
                "theta_max": _angle(params.region.theta_max),
            },
            "defaults": {
                "orbit_sample_count": params.orbit_sample_count,
                "r_min_factor": params.r_min_factor,
                "cover_cap_max_depth": params.cover_cap_max_depth,
                "binary_search_tol": _angle(params.binary_search_tol),
            },
        },
        "outcome": {
            "status": outcome.status,
            "counters": {
                k: (_angle(v) if isinstance(v, float) else v)
                for k, v in outcome.counters.items()
            },
            "timings": {k: float(v) for k, v in outcome.timings.items()},
        },
        "records": [
            {
                "theta": _angle(rec.direction.theta),
                "phi": _angle(rec.direction.phi),
                "radius": _angle(rec.radius),
                "directed_value": _angle(rec.directed_value),
                "origin": rec.origin,
            }
            for rec in outcome.records
        ],
        "not_covered": [
            {
                "theta": _angle(pd.theta),
                "phi": _angle(pd.phi),
                "required_radius": _angle(req),
            }
            for pd, req in outcome.not_covered
        ],
    }
    if outcome.counterexample is not None:
        ce = outcome.counterexample
        doc["counterexample"] = {
            "direction": [_angle(float(c)) for c in ce.direction],
            "value": _angle(ce.value),
        }
    return doc


def write_report(path, ps: PointSet, params: CoverParams, outcome: CoverOutcome) -> None:
    doc = report_dict(ps, params, outcome)
    Path(path).write_text(json.dumps(doc, indent=2) + "\n")


def read_report(path) -> dict:
    doc = json.loads(Path(path).read_text())
    if doc.get("schema_version") != SCHEMA_VERSION:
        raise ValueError(f"unsupported report schema: {doc.get('schema_version')!r}")
    return doc


def strip_timings(doc: dict) -> dict:
    """Copy of a report with the only nondeterministic block removed."""
    out = json.loads(json.dumps(doc))
    out.get("outcome", {}).pop("timings", None)
    return out


def upsert_summary_row(path, row: RunSummaryRow) -> None:
    """Append the row to the CSV, replacing any existing row with the same n."""
    path = Path(path)
    rows: dict[int, list[str]] = {}
    if path.exists():
        with path.open(newline="") as fh:
            reader = csv.reader(fh)
            header = next(reader, None)
            if header is not None and header != SUMMARY_HEADER:
                raise ValueError(f"unexpected summary header in {path}: {header}")
            for rec in reader:
                if rec:
                    rows[int(rec[0])] = rec
    rows[row.n] = [
        str(row.n),
        str(row.t),
        str(row.n_DD),
        str(row.n_CC),
        f"{row.phase1_s:.6f}",
        f"{row.cover_cap_s:.6f}",
        f"{row.total_s:.6f}",
        f"{row.d:.17g}",
        row.status,
    ]
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(SUMMARY_HEADER)
        for n in sorted(rows):
            writer.writerow(rows[n])


def summary_row_from_outcome(n: int, ps: PointSet, params: CoverParams, outcome: CoverOutcome) -> RunSummaryRow:
    return RunSummaryRow(
        n=n,
        t=ps.size,
        n_DD=outcome.counters["n_DD"],
        n_CC=outcome.counters["n_CC"],
        phase1_s=outcome.timings["phase1"],
        cover_cap_s=outcome.timings["cover_cap"],
        total_s=outcome.timings["total"],
        d=params.d,
        status=outcome.status,
    )


def sample_region_directions(region: Region, count: int, rng: np.random.Generator) -> np.ndarray:
    """Uniform (area-weighted) directions inside a polar rectangle, (count, 3)."""
    theta = rng.uniform(region.theta_min, region.theta_max, count)
    # Uniform on the sphere means sin(phi) uniform on [sin(phi_min), sin(phi_max)].
    z = rng.uniform(math.sin(region.phi_min), math.sin(region.phi_max), count)
    phi = np.arcsin(np.clip(z, -1.0, 1.0))
    return np.stack(
        [np.cos(phi) * np.cos(theta), np.cos(phi) * np.sin(theta), np.sin(phi)],
        axis=1,
    )


def audit_coverage(
    ps: PointSet,
    params: CoverParams,
    outcome: CoverOutcome,
    probe_count: int = 100_000,
    seed: int = 0,
) -> dict:
    """Re-check a certificate against fresh uniform probes.

    Each probe in the region must fall inside some certified ball and its
    directly computed directed value must not exceed d.  Returns counts of
    violations.  Residual outcomes can still be audited: the probes are
    checked against whatever balls were certified, so a run whose only gap
    is a measure-zero singular direction passes with probability one.
    """
    if outcome.status == "counterexample":
        raise ValueError("audit requires a certificate, not a counterexample")
    rng = np.random.default_rng(seed)
    probes = sample_region_directions(params.region, probe_count, rng)

    centers = np.array(
        [polar_to_cartesian(rec.direction) for rec in outcome.records]
    )
    radii = np.array([rec.radius for rec in outcome.records])

    uncovered = 0
    over_bound = 0
    chunk = 2048
    for start in range(0, probe_count, chunk):
        block = probes[start : start + chunk]
        # chord distance probe->center <= radius, via squared norms
        d2 = (
            np.sum(block * block, axis=1)[:, None]
            - 2.0 * block @ centers.T
            + np.sum(centers * centers, axis=1)[None, :]
        )
        inside = d2 <= (radii * radii)[None, :] + 1e-30
        hit = inside.any(axis=1)
        uncovered += int((~hit).sum())
        values = directed_values(ps.points, block)
        over_bound += int((values > params.d).sum())
    return {
        "probes": probe_count,
        "uncovered": uncovered,
        "over_bound": over_bound,
    }
