"""Test the caching functionality."""

from __future__ import annotations

import logging
import os
import sys
from collections.abc import Hashable
from pathlib import Path
from typing import Any
from unittest.mock import Mock

import pytest
import pytest_mock

import rbmodules
import rbmodules.cache
import rbmodules.jobs
from rbmodules.cache import (
    SOLUTION_SPACES_NAMESPACE,
    DiskCache,
    get_cache_dir,
    get_pkg_unique_identifier,
)
from rbmodules.jobs import Command, JobSpec, run
from rbmodules.rbops import Flavor


def test_disk_cache(tmp_path: Path) -> None:
    """Test DiskCache class basic use."""
    cache = DiskCache(str(tmp_path))
    cache.set("testing", "foo", {"dim": 2})
    assert cache.get("testing", "foo") == {"dim": 2}

    cache.clear()

    with pytest.raises(KeyError):
        cache.get("testing", "foo")

    cache.set("testing", "foo", ["baz"])
    assert cache.get("testing", "foo") == ["baz"]


def test_disabled_cache() -> None:
    """Test that a cache without a directory stores nothing and always misses."""
    cache = DiskCache(None)
    cache.set("testing", "foo", "bar")

    with pytest.raises(KeyError):
        cache.get("testing", "foo")

    some_fn = Mock(return_value=1)
    cache.run_and_cache(some_fn, "testing", {"value": 1}, ["value"])
    cache.run_and_cache(some_fn, "testing", {"value": 1}, ["value"])
    assert some_fn.call_count == 2


def test_clear_leaves_other_files(tmp_path: Path) -> None:
    """Test that clearing only removes cache and lock files."""
    cache = DiskCache(str(tmp_path))
    cache.set("testing", "foo", "bar")
    keep = tmp_path / "notes.txt"
    keep.write_text("mine")

    cache.clear()

    assert keep.read_text() == "mine"
    assert not list(tmp_path.rglob("*" + cache.file_ext))


def test_get_pkg_unique_identifier(monkeypatch: pytest.MonkeyPatch) -> None:
    """Test generating a unique identifier for the version of this package."""
    monkeypatch.setattr(sys, "version_info", (3, 9, 1, "final", 0))
    monkeypatch.setattr(sys, "prefix", "/home/john/.pyenv/versions/myvirtualenv")
    monkeypatch.setattr(rbmodules, "__version__", "1.2.3")

    assert (
        get_pkg_unique_identifier()
        == "3.9.1.final__myvirtualenv__f01a7b__rbmodules-1.2.3"
    )


def test_get_cache_dir(monkeypatch: pytest.MonkeyPatch) -> None:
    """Test finding the cache directory."""
    pkg_identifier = "3.9.1.final__myvirtualenv__f01a7b__rbmodules-1.2.3"
    monkeypatch.setattr(
        rbmodules.cache, "get_pkg_unique_identifier", lambda: pkg_identifier
    )

    # with no HOME set, fallback to attempting to use package directory itself
    monkeypatch.delenv("HOME", raising=False)
    monkeypatch.delenv("XDG_CACHE_HOME", raising=False)
    monkeypatch.delenv("RBMOD_CACHE", raising=False)
    assert get_cache_dir().endswith(str(Path("rbmodules", ".rbmodules_cache")))

    # with home set, but not anything else specified, use XDG_CACHE_HOME default
    monkeypatch.setenv("HOME", "/home/john")
    monkeypatch.delenv("XDG_CACHE_HOME", raising=False)
    assert get_cache_dir() == str(
        Path("/home/john", ".cache/python-rbmodules", pkg_identifier)
    )

    # if XDG_CACHE_HOME is set, use it
    monkeypatch.setenv("XDG_CACHE_HOME", "/my/alt/cache")
    assert get_cache_dir() == str(
        Path("/my/alt/cache/python-rbmodules", pkg_identifier)
    )

    # if RBMOD_CACHE is set, use it
    monkeypatch.setenv("RBMOD_CACHE", "/alt-rbmodules-cache")
    assert get_cache_dir() == "/alt-rbmodules-cache"


def test_run_and_cache(tmp_path: Path) -> None:
    """Test cache hits and misses.

    Repeated cache requests with the same arguments should hit the cache and
    not increment the call count of the underlying function.
    """
    cache = DiskCache(str(tmp_path))

    return_value1 = {"free_parameters": 3}
    some_fn = Mock(return_value=return_value1)
    kwargs1: dict[str, Hashable] = {"value": 1}

    assert some_fn.call_count == 0

    call1 = cache.run_and_cache(some_fn, "test_namespace", kwargs1, kwargs1.keys())
    assert call1 == return_value1
    assert some_fn.call_count == 1

    call2 = cache.run_and_cache(some_fn, "test_namespace", kwargs1, kwargs1.keys())
    assert call2 == return_value1
    assert some_fn.call_count == 1

    kwargs2: dict[str, Hashable] = {"value": 2}
    return_value2 = {"free_parameters": 4}
    some_fn.return_value = return_value2

    call3 = cache.run_and_cache(some_fn, "test_namespace", kwargs2, kwargs2.keys())
    assert call3 == return_value2
    assert some_fn.call_count == 2


def test_classify_reuses_cached_solution_space(
    mocker: pytest_mock.MockerFixture, tmp_path: Path
) -> None:
    """Test that a second classify job for the same B reads the cache."""
    compute = mocker.spy(rbmodules.jobs, "_compute_space")
    job = JobSpec(
        command=Command.CLASSIFY,
        inputs=('[["-1", "0"], ["0", "0"]]',),
        flavor=Flavor.XKX,
        cache_dir=str(tmp_path),
    )

    first = run(job)
    second = run(job)

    assert first == second
    assert first.report["free_parameters"] == 3
    assert compute.call_count == 1
    assert list((tmp_path / SOLUTION_SPACES_NAMESPACE).iterdir())


def test_cache_permission(
    mocker: pytest_mock.MockerFixture, monkeypatch: pytest.MonkeyPatch, tmp_path: Path
) -> None:
    """Emit a warning once when the cache directory can't be created."""
    warning = mocker.patch.object(logging.getLogger("rbmodules"), "warning")

    def no_permission_makedirs(*args: Any, **kwargs: Any) -> None:
        raise PermissionError(
            """[Errno 13] Permission denied:
            '/usr/local/lib/python3.11/site-packages/rbmodules/.rbmodules_cache"""
        )

    monkeypatch.setattr(os, "makedirs", no_permission_makedirs)

    for _ in range(0, 2):
        result = run(
            JobSpec(
                command=Command.CLASSIFY,
                inputs=('[["0"]]',),
                flavor=Flavor.XKX,
                cache_dir=str(tmp_path / "sub"),
            )
        )
        assert result.exit_code == 0

    assert warning.call_count == 1
    assert warning.call_args[0][0].startswith("unable to cache")
