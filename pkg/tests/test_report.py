import json
import os

import pytest

from octica import data
from octica.report import CHECKS, run_report, write_report_files

ds = data.load()


def test_check_ids_unique_and_sorted_output():
    ids = [cid for cid, _, _ in CHECKS]
    assert len(ids) == len(set(ids))
    rep = run_report(ds, only="mod2")
    assert [r.check_id for r in rep.results] == \
        sorted(r.check_id for r in rep.results)
    assert rep.passed


def test_report_serializations():
    rep = run_report(ds, only="gram-matrices")
    text = rep.to_text()
    assert "overall: PASS" in text and ds.checksum in text
    obj = json.loads(rep.to_json())
    assert obj["overall"] == "pass"
    assert obj["data_checksum"] == ds.checksum
    assert all("runtime_s" not in c for c in obj["checks"])
    obj_t = json.loads(rep.to_json(timings=True))
    assert all("runtime_s" in c for c in obj_t["checks"])
    csv = rep.to_csv()
    assert csv.startswith("check_id,anchor,expected,computed,status")


def test_threaded_runner_matches_serial():
    serial = run_report(ds, only="mod2")
    threaded = run_report(ds, only="mod2", threads=4)
    strip = lambda rep: [(r.check_id, r.expected, r.computed, r.passed)
                         for r in rep.results]
    assert strip(serial) == strip(threaded)


def test_unknown_filter_rejected():
    with pytest.raises(ValueError):
        run_report(ds, only="no-such-section")


def test_write_report_files(tmp_path):
    rep = run_report(ds, only="gram-matrices")
    files = write_report_files(rep, str(tmp_path), ds)
    assert "report.csv" in files
    assert {f"vinberg_L{i}.png" for i in range(5)} <= set(files)
    assert "cone_gluing.png" in files
    for name in files:
        assert (tmp_path / name).stat().st_size > 0
