"""Test ability to run in parallel with shared cache."""

from __future__ import annotations

import os
from fractions import Fraction
from multiprocessing import Pool
from pathlib import Path

import pytest
import responses

from rbmodules.cache import DiskCache
from rbmodules.jobs import Command, JobSpec, batch_report, run, run_batch
from rbmodules.rbops import Family, Flavor

B_URL = "http://some-server.com/b.json"


def test_multiprocessing_makes_one_request(tmp_path: Path) -> None:
    """Ensure there aren't duplicate download requests."""
    process_count = 3
    with Pool(processes=process_count) as pool:
        http_request_counts = pool.map(_run_classify, [tmp_path] * process_count)
    assert sum(http_request_counts) == 1


def _run_classify(cache_dir: Path) -> int:
    """Run a classify job whose input comes from a URL."""
    with responses.RequestsMock(assert_all_requests_are_fired=False) as rsps:
        rsps.add(responses.GET, B_URL, status=200, body='[["-1", "1"], ["0", "-1"]]')
        result = run(
            JobSpec(
                command=Command.CLASSIFY,
                inputs=(B_URL,),
                flavor=Flavor.XKX,
                cache_dir=str(cache_dir),
            )
        )
        assert result.report["free_parameters"] == 2
        num_calls = len(rsps.calls)
    return num_calls


def test_batch_keeps_input_order(tmp_path: Path) -> None:
    """Test that a process pool returns reports in job order with the worst exit code."""
    jobs = [
        JobSpec(command=Command.SOLVE_BLOCK, s=2, t=2, b1=Fraction(-1), b2=Fraction(0)),
        JobSpec(command=Command.RB_CHECK, family=Family.P3, truncation=5),
        JobSpec(command=Command.SOLVE_BLOCK, s=1, t=3, b1=Fraction(2), b2=Fraction(0)),
        JobSpec(command=Command.CATALOG, n=4, flavor=Flavor.XKX),
        JobSpec(
            command=Command.CLASSIFY,
            inputs=('[["1", "0"], ["0", "-1"]]',),
            flavor=Flavor.KXP2,
            cache_dir=str(tmp_path),
        ),
    ]

    results = run_batch(jobs, processes=2)

    assert [r.exit_code for r in results] == [0, 0, 0, 2, 2]
    assert results[0].report["count"] == 3
    assert results[2].report["count"] == 1
    assert results[3].report["error"] == "UnsupportedDimension"
    assert results[4].report["error"] == "NotQuasiIdempotent"
    assert results == run_batch(jobs)

    combined = batch_report(results)
    assert combined.exit_code == 2
    assert [job["index"] for job in combined.report["jobs"]] == [0, 1, 2, 3, 4]


def test_cache_cleared_by_other_process(
    tmp_path: Path, monkeypatch: pytest.MonkeyPatch
) -> None:
    """Simulate a file being deleted after we check for existence but before we try to delete it."""
    cache_dir = str(tmp_path)
    cache = DiskCache(cache_dir)
    cache.set("solution-spaces", "key", {"dim": 1})
    orig_unlink = os.unlink

    def evil_unlink(filename: str | Path) -> None:
        """Simulate someone deletes the file right before we try to."""
        if (isinstance(filename, str) and filename.startswith(cache_dir)) or (
            isinstance(filename, Path) and filename.is_relative_to(cache_dir)
        ):
            orig_unlink(filename)
        orig_unlink(filename)

    monkeypatch.setattr(os, "unlink", evil_unlink)

    cache.clear()

    with pytest.raises(KeyError):
        cache.get("solution-spaces", "key")
