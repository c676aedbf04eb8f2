import json

import numpy as np
import pandas as pd
import pytest

from induction_confidence.utils.config import Settings, get_settings, load_config_file
from induction_confidence.utils.formatting import (
    emit,
    format_display_value,
    render_csv,
    render_json,
    render_table,
)
from induction_confidence.utils.logging_config import setup_logging
from induction_confidence.utils.manifest import build_manifest


@pytest.fixture
def manifest(monkeypatch):
    monkeypatch.setenv("SOURCE_DATE_EPOCH", "1700000000")
    return build_manifest("confidence", {"trials": 10, "occurrences": 10}, seed=3, generator="PCG64")


@pytest.mark.parametrize("value,expected", [
    (0.6861894039100001, "0.68619"),
    (1.0, "1"),
    (float("nan"), "-"),
    (61, "61"),
    ("rising", "rising"),
    (True, "True"),
])
def test_format_display_value(value, expected):
    assert format_display_value(value) == expected


def test_manifest_timestamp_is_pinned(manifest):
    assert manifest.timestamp == "2023-11-14T22:13:20Z"
    assert manifest.seed == 3
    assert manifest.artifact_version


def test_settings_from_environment(monkeypatch):
    monkeypatch.setenv("SOURCE_DATE_EPOCH", "0")
    monkeypatch.setenv("LOG_LEVEL", "DEBUG")
    settings = get_settings()
    assert settings.source_date_epoch == 0
    assert settings.log_level == "DEBUG"
    assert settings.now().year == 1970


def test_render_json_embeds_manifest(manifest):
    payload = json.loads(render_json({"confidence": 0.1, "growth_ratio": float("nan")}, manifest))
    assert payload["manifest"]["command"] == "confidence"
    assert payload["result"]["confidence"] == 0.1
    assert payload["result"]["growth_ratio"] is None


def test_render_json_rows(manifest):
    frame = pd.DataFrame({"n": np.array([1, 2], dtype=np.int64), "confidence": [0.19, 0.271]})
    payload = json.loads(render_json(frame, manifest))
    assert payload["rows"] == [{"n": 1, "confidence": 0.19}, {"n": 2, "confidence": 0.271}]


def test_render_csv_full_precision_and_crlf():
    text = render_csv(pd.DataFrame({"n": [1], "confidence": [0.1]}))
    assert text == "n,confidence\r\n1,0.10000000000000001\r\n"
    assert float(text.split("\r\n")[1].split(",")[1]) == 0.1


def test_render_table_rows():
    table = render_table(pd.DataFrame({"n": [1, 2], "confidence": [0.19, 0.271]}), title="curve")
    assert table.row_count == 2
    assert [column.header for column in table.columns] == ["n", "confidence"]


def test_emit_to_file_writes_manifest(tmp_path, manifest):
    path = tmp_path / "report.csv"
    emit({"confidence": 0.5}, "csv", manifest, output=path)
    assert path.read_bytes() == b"confidence\r\n0.5\r\n"
    written = json.loads((tmp_path / "report.csv.manifest.json").read_text())
    assert written["timestamp"] == "2023-11-14T22:13:20Z"


def test_emit_json_file_has_no_sidecar(tmp_path, manifest):
    path = tmp_path / "report.json"
    emit({"confidence": 0.5}, "json", manifest, output=path)
    assert json.loads(path.read_text())["result"] == {"confidence": 0.5}
    assert not (tmp_path / "report.json.manifest.json").exists()


def test_load_config_file(tmp_path):
    path = tmp_path / "run.env"
    path.write_text("Max-Trials=1000\nseed=7\nwindow=\n")
    assert load_config_file(path) == {"max_trials": "1000", "seed": "7"}


def test_setup_logging_follows_settings(tmp_path, monkeypatch):
    log_dir = tmp_path / "logs"
    monkeypatch.setenv("INDUCTION_LOG_DIR", str(log_dir))
    monkeypatch.setenv("LOG_LEVEL", "info")
    assert get_settings().log_dir == str(log_dir)
    try:
        setup_logging()
        assert (log_dir / "app.log").exists()
        assert (log_dir / "error.log").exists()
    finally:
        monkeypatch.delenv("INDUCTION_LOG_DIR")
        monkeypatch.delenv("LOG_LEVEL")
        setup_logging()


def test_explicit_logging_arguments_win_over_settings(tmp_path):
    settings = Settings(log_dir=str(tmp_path / "from-settings"))
    try:
        setup_logging(log_dir=str(tmp_path / "explicit"), settings=settings)
        assert (tmp_path / "explicit" / "app.log").exists()
        assert not (tmp_path / "from-settings").exists()
    finally:
        setup_logging()
