import json
import math

import numpy as np
import pytest

from capdisc.covering import CoverParams, cover_region
from capdisc.geometry import Region
from capdisc.pointsets import generate_twisted_polar
from capdisc.polar_analysis import north_pole_directed
from capdisc.reporting import (
    SCHEMA_VERSION,
    SUMMARY_HEADER,
    RunSummaryRow,
    audit_coverage,
    read_report,
    report_dict,
    sample_region_directions,
    strip_timings,
    summary_row_from_outcome,
    upsert_summary_row,
    write_report,
)


@pytest.fixture(scope="module")
def small_run():
    ps = generate_twisted_polar(12)
    d = north_pole_directed(12)
    params = CoverParams(d=d, region=Region(0.6, 1.0, 0.0, 0.8), cover_cap_max_depth=8)
    outcome = cover_region(ps, params)
    assert outcome.status == "covered"
    return ps, params, outcome


class TestReportDocument:
    def test_schema_and_round_trip(self, small_run, tmp_path):
        ps, params, outcome = small_run
        path = tmp_path / "report.json"
        write_report(path, ps, params, outcome)
        doc = read_report(path)
        assert doc["schema_version"] == SCHEMA_VERSION
        assert doc["points_meta"]["size"] == ps.size
        assert doc["outcome"]["status"] == "covered"
        assert len(doc["records"]) == len(outcome.records)
        assert doc["params"]["d"] == float(f"{params.d:.17g}")

    def test_rejects_unknown_schema(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text(json.dumps({"schema_version": 99}))
        with pytest.raises(ValueError):
            read_report(path)

    def test_deterministic_modulo_timings(self, small_run):
        ps, params, outcome = small_run
        again = cover_region(ps, params)
        a = strip_timings(report_dict(ps, params, outcome))
        b = strip_timings(report_dict(ps, params, again))
        assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)

    def test_strip_timings_removes_only_timings(self, small_run):
        ps, params, outcome = small_run
        doc = report_dict(ps, params, outcome)
        stripped = strip_timings(doc)
        assert "timings" in doc["outcome"]
        assert "timings" not in stripped["outcome"]
        assert stripped["records"] == doc["records"]


class TestSummaryCsv:
    def _row(self, n, status="covered"):
        return RunSummaryRow(
            n=n, t=n * n, n_DD=100 + n, n_CC=5, phase1_s=1.0,
            cover_cap_s=0.5, total_s=1.5, d=0.05, status=status,
        )

    def test_upsert_is_idempotent_and_sorted(self, tmp_path):
        path = tmp_path / "summary.csv"
        upsert_summary_row(path, self._row(20))
        upsert_summary_row(path, self._row(15))
        upsert_summary_row(path, self._row(20, status="residual"))
        lines = path.read_text().strip().splitlines()
        assert lines[0] == ",".join(SUMMARY_HEADER)
        assert len(lines) == 3
        assert lines[1].startswith("15,")
        assert lines[2].startswith("20,") and lines[2].endswith("residual")

    def test_rejects_foreign_header(self, tmp_path):
        path = tmp_path / "summary.csv"
        path.write_text("a,b,c\n1,2,3\n")
        with pytest.raises(ValueError):
            upsert_summary_row(path, self._row(15))

    def test_row_invariants(self):
        with pytest.raises(ValueError):
            RunSummaryRow(15, 250, 10, 20, 1.0, 0.5, 1.5, 0.05, "covered")
        with pytest.raises(ValueError):
            RunSummaryRow(15, 250, 20, 10, 1.0, 0.5, 0.9, 0.05, "covered")

    def test_row_from_outcome(self, small_run):
        ps, params, outcome = small_run
        row = summary_row_from_outcome(12, ps, params, outcome)
        assert row.n == 12
        assert row.t == ps.size
        assert row.n_DD == outcome.counters["n_DD"]
        assert row.status == "covered"


class TestSampling:
    def test_directions_stay_in_region(self):
        region = Region(0.2, 0.9, 1.0, 2.5)
        rng = np.random.default_rng(0)
        dirs = sample_region_directions(region, 5000, rng)
        assert np.allclose(np.linalg.norm(dirs, axis=1), 1.0, atol=1e-12)
        phi = np.arcsin(dirs[:, 2])
        theta = np.arctan2(dirs[:, 1], dirs[:, 0])
        assert (phi >= region.phi_min - 1e-12).all()
        assert (phi <= region.phi_max + 1e-12).all()
        assert (theta >= region.theta_min - 1e-12).all()
        assert (theta <= region.theta_max + 1e-12).all()


class TestAudit:
    def test_covered_run_passes(self, small_run):
        ps, params, outcome = small_run
        result = audit_coverage(ps, params, outcome, probe_count=5000, seed=1)
        assert result == {"probes": 5000, "uncovered": 0, "over_bound": 0}

    def test_rejects_counterexample_outcome(self):
        ps = generate_twisted_polar(8)
        params = CoverParams(d=1e-9, region=Region(0.0, 0.5, 0.0, 1.0))
        outcome = cover_region(ps, params)
        assert outcome.status == "counterexample"
        with pytest.raises(ValueError):
            audit_coverage(ps, params, outcome, probe_count=10)
