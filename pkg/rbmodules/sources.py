"""Loading job input from inline JSON, local files or URLs."""

from __future__ import annotations

import logging
import os
import pathlib
from collections.abc import Sequence
from typing import Any

import requests
from requests_file import FileAdapter  # type: ignore[import-untyped]

from .cache import DiskCache, fetch_url
from .codec import loads

LOG = logging.getLogger("rbmodules")


def _timeout_from_env() -> float | None:
    raw = os.environ.get("RBMOD_FETCH_TIMEOUT")
    if not raw:
        return None
    try:
        return float(raw)
    except ValueError:
        LOG.warning("Ignoring RBMOD_FETCH_TIMEOUT=%r; expected a number of seconds", raw)
        return None


FETCH_TIMEOUT = _timeout_from_env()


class InputNotFound(LookupError):  # noqa: N818
    """None of the given input sources could be read.

    Recoverable in the sense that several sources may be listed; only when
    all of them fail is this raised.
    """


def is_inline(source: str) -> bool:
    """Whether the source is JSON text rather than a location."""
    return source.lstrip().startswith(("{", "["))


def as_url(source: str) -> str:
    """Turn an existing local path into a file:// URI; leave anything else alone."""
    if os.path.isfile(source):
        return pathlib.Path(os.path.abspath(source)).as_uri()
    return source


def find_first_response(
    cache: DiskCache,
    urls: Sequence[str],
    fetch_timeout: float | int | None = None,
    session: requests.Session | None = None,
) -> tuple[str, str]:
    """Text of the first URL that fetches successfully, with that URL.

    Remote bodies go through the cache; local files are always reread.
    """
    session_created = False
    if session is None:
        session = requests.Session()
        session.mount("file://", FileAdapter())
        session_created = True

    try:
        for url in urls:
            try:
                if url.startswith("file:"):
                    return url, fetch_url(session, url, fetch_timeout)
                return url, cache.cached_fetch_url(session=session, url=url, timeout=fetch_timeout)
            except requests.exceptions.RequestException:
                LOG.warning("Exception reading input %s", url, exc_info=True)
    finally:
        if session_created:
            session.close()

    raise InputNotFound(
        "No input could be read from " + ", ".join(urls) + ". Check the paths or pass the JSON inline."
    )


def load_input(
    sources: Sequence[str],
    cache: DiskCache,
    fetch_timeout: float | int | None = FETCH_TIMEOUT,
    session: requests.Session | None = None,
) -> Any:
    """Decoded JSON from the first usable source.

    Inline JSON is used as soon as it is reached; paths and URLs before it
    are tried in order.
    """
    if not sources:
        raise InputNotFound("no input given")
    pending: list[str] = []
    for source in sources:
        if is_inline(source):
            if pending:
                try:
                    url, text = find_first_response(cache, pending, fetch_timeout, session)
                    return loads(text, url)
                except InputNotFound:
                    pass
            return loads(source, "inline input")
        pending.append(as_url(source))
    url, text = find_first_response(cache, pending, fetch_timeout, session)
    return loads(text, url)
