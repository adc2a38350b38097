import json

import numpy as np

from xychain.output import (
    VERSION,
    RunManifest,
    file_digest,
    format_value,
    manifest_path,
    read_csv,
    write_csv,
    write_json,
    write_manifest,
)
from xychain.spectrum import Sector


def test_format_value():
    assert format_value(True) == "1"
    assert format_value(np.bool_(False)) == "0"
    assert format_value(np.int64(3)) == "3"
    assert format_value(0.1) == "0.10000000000000001"
    assert format_value("half") == "half"


def test_csv_header_and_rows(tmp_path):
    path = write_csv(tmp_path / "out" / "table.csv", ["h", "energy"], [(0.5, -2.0), (1.0, -1.5)],
                     units={"h": "J"})
    lines = path.read_text().split("\n")
    assert lines[0] == f"# xychain {VERSION} | h [J], energy [1]"
    assert lines[1] == "h,energy"
    assert lines[2] == "0.5,-2"
    rows = read_csv(path)
    assert [float(row["energy"]) for row in rows] == [-2.0, -1.5]


def test_csv_is_deterministic(tmp_path):
    rows = [(0.1 * i, i, i % 2 == 0) for i in range(5)]
    first = write_csv(tmp_path / "a.csv", ["x", "i", "even"], rows)
    second = write_csv(tmp_path / "b.csv", ["x", "i", "even"], rows)
    assert first.read_bytes() == second.read_bytes()
    assert file_digest(first) == file_digest(second)


def test_json_payload(tmp_path):
    path = write_json(tmp_path / "report.json", {"b": np.float64(1.5), "a": [Sector.HALF, np.arange(2)]})
    payload = json.loads(path.read_text())
    assert payload == {"a": ["half", [0, 1]], "b": 1.5}
    assert path.read_text().index('"a"') < path.read_text().index('"b"')


def test_manifest(tmp_path):
    table = write_csv(tmp_path / "entangle.csv", ["h"], [(0.5,)])
    manifest = RunManifest("entangle", {"n": 10})
    manifest.record(table)
    written = write_manifest(table, manifest)
    assert written == manifest_path(table)
    assert written.name == "entangle.csv.manifest.json"

    payload = json.loads(written.read_text())
    assert payload["command"] == "entangle"
    assert payload["version"] == VERSION
    assert payload["outputs"][str(table)] == file_digest(table)
