"""JSON disk cache for fetched inputs and computed solution spaces."""

from __future__ import annotations

import errno
import hashlib
import json
import logging
import os
import sys
from collections.abc import Callable, Hashable, Iterable
from pathlib import Path
from typing import TypeVar, cast

import requests
from filelock import FileLock

LOG = logging.getLogger("rbmodules")

_DID_LOG_UNABLE_TO_CACHE = False

T = TypeVar("T")

URLS_NAMESPACE = "urls"
SOLUTION_SPACES_NAMESPACE = "solution-spaces"


def get_pkg_unique_identifier() -> str:
    """Identify the Python environment and rbmodules version.

    Cached solution spaces are keyed under it, so upgrading the package or
    switching virtualenvs never reads another version's results.
    """
    from . import __version__ as version

    env_hash = hashlib.md5(sys.prefix.encode("utf-8"), usedforsecurity=False).hexdigest()[:6]
    return "__".join(
        [
            ".".join(str(v) for v in sys.version_info[:-1]),
            os.path.basename(sys.prefix),
            env_hash,
            "rbmodules-" + version,
        ]
    )


def get_cache_dir() -> str:
    """RBMOD_CACHE, else an XDG cache directory, else one next to the package."""
    cache_dir = os.environ.get("RBMOD_CACHE")
    if cache_dir is not None:
        return cache_dir

    xdg_cache_home = os.getenv("XDG_CACHE_HOME")
    if xdg_cache_home is None:
        user_home = os.getenv("HOME")
        if user_home:
            xdg_cache_home = str(Path(user_home, ".cache"))

    if xdg_cache_home is not None:
        return str(Path(xdg_cache_home, "python-rbmodules", get_pkg_unique_identifier()))

    return str(Path(os.path.dirname(__file__), ".rbmodules_cache"))


def _warn_unwritable(namespace: str, key: object, path: str, exc: OSError) -> None:
    global _DID_LOG_UNABLE_TO_CACHE
    if not _DID_LOG_UNABLE_TO_CACHE:
        LOG.warning(
            "unable to cache %s.%s in %s; results will be recomputed on every run. "
            "Pass a writable --cache_dir or use --no_cache to silence this warning. %s",
            namespace,
            key,
            path,
            exc,
        )
        _DID_LOG_UNABLE_TO_CACHE = True


class DiskCache:
    """Cache of JSON-serializable values, one file per key, guarded by file locks."""

    def __init__(self, cache_dir: str | None, lock_timeout: int = 20):
        """Cache under `cache_dir`; a falsy directory disables caching."""
        self.enabled = bool(cache_dir)
        self.cache_dir = os.path.expanduser(str(cache_dir or ""))
        self.lock_timeout = lock_timeout
        # clear() only removes files with this extension
        self.file_ext = ".rbmodules.json"

    def get(self, namespace: str, key: str | dict[str, Hashable]) -> object:
        """Look up a value; KeyError when absent or unreadable."""
        if not self.enabled:
            raise KeyError("Cache is disabled")
        path = self._path_for(namespace, key)
        if not os.path.isfile(path):
            raise KeyError(f"namespace: {namespace} key: {key!r}")
        try:
            with open(path) as cache_file:
                return json.load(cache_file)
        except (OSError, ValueError) as exc:
            raise KeyError(f"namespace: {namespace} key: {key!r}") from exc

    def set(  # noqa: A003
        self, namespace: str, key: str | dict[str, Hashable], value: object
    ) -> None:
        """Store a value; an unwritable directory is logged once and otherwise ignored."""
        if not self.enabled:
            return
        path = self._path_for(namespace, key)
        try:
            _make_dir(path)
            with open(path, "w") as cache_file:
                json.dump(value, cache_file)
        except OSError as exc:
            _warn_unwritable(namespace, key, path, exc)

    def clear(self) -> None:
        """Remove every cache and lock file under the cache directory."""
        suffixes = (self.file_ext, self.file_ext + ".lock")
        for root, _, files in os.walk(self.cache_dir):
            for filename in files:
                if not filename.endswith(suffixes):
                    continue
                try:
                    os.unlink(str(Path(root, filename)))
                except FileNotFoundError:
                    pass
                except OSError as exc:
                    if exc.errno != errno.ENOENT:
                        raise

    def _path_for(self, namespace: str, key: str | dict[str, Hashable]) -> str:
        return str(Path(self.cache_dir, namespace, _make_cache_key(key) + self.file_ext))

    def run_and_cache(
        self,
        func: Callable[..., T],
        namespace: str,
        kwargs: dict[str, Hashable],
        hashed_argnames: Iterable[str],
    ) -> T:
        """Call `func(**kwargs)` once per distinct value of the hashed arguments."""
        if not self.enabled:
            return func(**kwargs)

        key_args = {k: v for k, v in kwargs.items() if k in hashed_argnames}
        path = self._path_for(namespace, key_args)
        try:
            _make_dir(path)
        except OSError as exc:
            _warn_unwritable(namespace, key_args, path, exc)
            return func(**kwargs)

        with FileLock(path + ".lock", timeout=self.lock_timeout):
            try:
                result = cast(T, self.get(namespace=namespace, key=key_args))
                LOG.debug("cache hit in %s for %s", namespace, key_args)
            except KeyError:
                result = func(**kwargs)
                self.set(namespace=namespace, key=key_args, value=result)
            return result

    def cached_fetch_url(
        self, session: requests.Session, url: str, timeout: float | int | None
    ) -> str:
        """Fetch a URL's body as text, at most once per URL."""
        return self.run_and_cache(
            func=fetch_url,
            namespace=URLS_NAMESPACE,
            kwargs={"session": session, "url": url, "timeout": timeout},
            hashed_argnames=["url"],
        )


def fetch_url(session: requests.Session, url: str, timeout: float | int | None) -> str:
    """GET a URL and return its body as text."""
    response = session.get(url, timeout=timeout)
    response.raise_for_status()
    text = response.text
    if not isinstance(text, str):
        text = str(text, "utf-8")
    return text


def _make_cache_key(inputs: str | dict[str, Hashable]) -> str:
    return hashlib.md5(repr(inputs).encode("utf8"), usedforsecurity=False).hexdigest()


def _make_dir(filename: str) -> None:
    """Create the parent directory of `filename` if needed."""
    try:
        os.makedirs(os.path.dirname(filename), exist_ok=True)
    except OSError as exc:
        if exc.errno != errno.EEXIST:
            raise
