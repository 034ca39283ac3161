"""Test reading job input from inline JSON, files and URLs."""

from __future__ import annotations

import logging
from pathlib import Path
from unittest.mock import Mock

import pytest
import responses

import rbmodules.sources
from rbmodules.cache import DiskCache
from rbmodules.codec import ParseError
from rbmodules.sources import InputNotFound, as_url, find_first_response, is_inline, load_input

SERVER = "http://some-server.com/module.json"
MIRROR = "http://mirror.example.org/module.json"
MODULE_JSON = '{"A": [["0"]], "B": [["-1"]], "flavor": "xkx"}'


def test_is_inline() -> None:
    """Test that objects and arrays are inline, locations are not."""
    assert is_inline(' {"A": []}')
    assert is_inline("[[1]]")
    assert not is_inline("module.json")
    assert not is_inline(SERVER)


def test_as_url(tmp_path: Path) -> None:
    """Test that existing files become file URIs and anything else is left alone."""
    path = tmp_path / "m.json"
    path.write_text(MODULE_JSON)

    assert as_url(str(path)).startswith("file://")
    assert as_url(SERVER) == SERVER
    assert as_url(str(tmp_path / "missing.json")) == str(tmp_path / "missing.json")


def test_inline_input(tmp_path: Path) -> None:
    """Test that inline JSON needs no fetching."""
    assert load_input([MODULE_JSON], DiskCache(str(tmp_path)))["flavor"] == "xkx"


@responses.activate
def test_url_input_is_cached(tmp_path: Path) -> None:
    """Test that a URL is fetched once and then served from the cache."""
    responses.add(responses.GET, SERVER, status=200, body=MODULE_JSON)
    cache = DiskCache(str(tmp_path))

    assert load_input([SERVER], cache)["B"] == [["-1"]]
    assert load_input([SERVER], cache)["B"] == [["-1"]]
    assert len(responses.calls) == 1


@responses.activate
def test_url_fallbacks(tmp_path: Path, caplog: pytest.LogCaptureFixture) -> None:
    """Test that a failing source is logged and the next one is used."""
    responses.add(responses.GET, SERVER, status=404)
    responses.add(responses.GET, MIRROR, status=200, body=MODULE_JSON)

    with caplog.at_level(logging.WARNING, logger="rbmodules"):
        data = load_input([SERVER, MIRROR], DiskCache(None))

    assert data["flavor"] == "xkx"
    assert SERVER in caplog.text


@responses.activate
def test_all_sources_fail(tmp_path: Path) -> None:
    """Test that InputNotFound is raised when every source fails."""
    responses.add(responses.GET, SERVER, status=408)

    with pytest.raises(InputNotFound):
        load_input([SERVER, str(tmp_path / "missing.json")], DiskCache(str(tmp_path)))
    with pytest.raises(InputNotFound):
        load_input([], DiskCache(None))


@responses.activate
def test_inline_fallback_after_failing_url() -> None:
    """Test that inline JSON listed after a failing URL is used."""
    responses.add(responses.GET, SERVER, status=500)

    assert load_input([SERVER, "[[2]]"], DiskCache(None)) == [[2]]


def test_local_file_is_reread(tmp_path: Path) -> None:
    """Test that local files bypass the cache."""
    path = tmp_path / "b.json"
    cache = DiskCache(str(tmp_path / "cache"))

    path.write_text('[["0"]]')
    assert load_input([str(path)], cache) == [["0"]]

    path.write_text('[["-1"]]')
    assert load_input([str(path)], cache) == [["-1"]]


def test_bad_json_in_file(tmp_path: Path) -> None:
    """Test that malformed file content is a parse error naming the source."""
    path = tmp_path / "broken.json"
    path.write_text("{")

    with pytest.raises(ParseError, match="broken.json"):
        load_input([str(path)], DiskCache(None))


def test_find_first_response_with_session(tmp_path: Path) -> None:
    """Test it is able to find first response with passed in session."""
    cache = DiskCache(str(tmp_path))
    mock_session = Mock()
    mock_session.get.return_value.text = MODULE_JSON

    result = find_first_response(cache, [SERVER], 5, mock_session)
    assert result == (SERVER, MODULE_JSON)
    mock_session.get.assert_called_once_with(SERVER, timeout=5)
    mock_session.close.assert_not_called()


def test_fetch_timeout_from_env(
    monkeypatch: pytest.MonkeyPatch, caplog: pytest.LogCaptureFixture
) -> None:
    """Test RBMOD_FETCH_TIMEOUT parsing."""
    monkeypatch.setenv("RBMOD_FETCH_TIMEOUT", "2.5")
    assert rbmodules.sources._timeout_from_env() == 2.5

    monkeypatch.setenv("RBMOD_FETCH_TIMEOUT", "soon")
    with caplog.at_level(logging.WARNING, logger="rbmodules"):
        assert rbmodules.sources._timeout_from_env() is None
    assert "RBMOD_FETCH_TIMEOUT" in caplog.text

    monkeypatch.delenv("RBMOD_FETCH_TIMEOUT")
    assert rbmodules.sources._timeout_from_env() is None
