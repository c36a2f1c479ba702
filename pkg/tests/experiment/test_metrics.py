"""
Tests for moving averages, summaries and the CSV files.
"""

import numpy as np
import pytest

from hsac.experiment.metrics import (
    METRICS_HEADER,
    STATUS_COMPLETED,
    STATUS_FAILED,
    MetricRow,
    RunRecord,
    SummaryRow,
    moving_average,
    read_metrics,
    read_runs,
    read_summary,
    summarize,
    write_metrics,
    write_runs,
    write_summary,
)
from hsac.utils.csvio import format_cell


def curve(variant, ng, seed, rewards, window=2):
    averages = moving_average(rewards, window)
    return [
        MetricRow(variant, ng, seed, i, r, averages[i], i + 1 < window, 3 * (i + 1), 0)
        for i, r in enumerate(rewards)
    ]


def record(variant, ng, seed, status=STATUS_COMPLETED):
    return RunRecord(variant, ng, seed, 12345, 3, 9, 0, 0, status, "" if status == STATUS_COMPLETED else "boom")


def test_moving_average_partial_then_full_window():
    assert moving_average([1.0, 0.0, 1.0, 1.0], 2) == [1.0, 0.5, 0.5, 1.0]
    assert moving_average([0.01, 1.0, 0.0], 100) == pytest.approx([0.01, 0.505, 1.01 / 3])
    assert moving_average([], 5) == []
    with pytest.raises(ValueError):
        moving_average([1.0], 0)


def test_summary_statistics():
    rows = curve("mi_sac", 6, 0, [0.0, 1.0, 1.0]) + curve("mi_sac", 6, 1, [0.0, 0.0, 0.0])
    (row,) = summarize(rows, oracle=lambda n: 0.5)
    assert row.mean_final == pytest.approx(0.5)
    assert row.stderr == pytest.approx(np.std([1.0, 0.0], ddof=1) / np.sqrt(2))
    assert row.oracle_ratio == pytest.approx(1.0)
    assert row.failed_runs == 0


def test_single_seed_has_zero_stderr():
    (row,) = summarize(curve("hdqn", 6, 0, [0.01, 0.01]), oracle=lambda n: 0.208)
    assert row.stderr == 0.0


def test_failed_runs_are_excluded_and_counted():
    rows = curve("hdqn", 6, 0, [1.0, 1.0]) + curve("hdqn", 6, 1, [0.0])
    runs = [record("hdqn", 6, 0), record("hdqn", 6, 1, STATUS_FAILED)]
    (row,) = summarize(rows, runs, oracle=lambda n: 1.0)
    assert row.mean_final == 1.0
    assert row.failed_runs == 1


def test_cell_with_only_failed_runs_is_empty():
    runs = [record("entropy_sac", 8, 0, STATUS_FAILED)]
    (row,) = summarize(curve("entropy_sac", 8, 0, [0.0]), runs, oracle=lambda n: 1.0)
    assert row == SummaryRow("entropy_sac", 8, None, None, None, 1)


def test_summary_order_follows_variant_then_ng():
    rows = (
        curve("adversarial_mi_sac", 6, 0, [0.0])
        + curve("hdqn", 8, 0, [0.0])
        + curve("hdqn", 6, 0, [0.0])
    )
    cells = [(r.variant, r.ng) for r in summarize(rows, oracle=lambda n: 1.0)]
    assert cells == [("hdqn", 6), ("hdqn", 8), ("adversarial_mi_sac", 6)]


def test_format_cell():
    assert format_cell(None) == ""
    assert format_cell(True) == "1"
    assert format_cell(0.1 + 0.2) == "0.30000000000000004"
    assert format_cell(7) == "7"


def test_csv_files_round_trip(tmp_path):
    rows = curve("mi_sac", 12, 3, [0.01, 1.0, 0.1 + 0.2], window=3)
    runs = [record("mi_sac", 12, 3), record("mi_sac", 12, 4, STATUS_FAILED)]
    summary = summarize(rows, runs, oracle=lambda n: 0.3)
    summary.append(SummaryRow("hdqn", 18, None, None, None, 2))

    write_metrics(tmp_path / "metrics.csv", rows)
    write_runs(tmp_path / "runs.csv", runs)
    write_summary(tmp_path / "summary.csv", summary)

    assert read_metrics(tmp_path / "metrics.csv") == rows
    assert read_runs(tmp_path / "runs.csv") == runs
    assert read_summary(tmp_path / "summary.csv") == summary

    text = (tmp_path / "metrics.csv").read_text(encoding="utf-8")
    assert text.splitlines()[0] == ",".join(METRICS_HEADER)
    assert "\r" not in text
    assert text.splitlines()[1] == "mi_sac,12,3,0,0.01,0.01,1,3,0"
    assert text.endswith("\n")
    assert "hdqn,18,,,,2" in (tmp_path / "summary.csv").read_text(encoding="utf-8")
