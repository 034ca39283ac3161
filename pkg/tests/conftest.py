"""py.test standard config file."""

import logging
import os

import pytest
from hypothesis import HealthCheck, settings

import rbmodules.cache

settings.register_profile(
    "rbmodules",
    deadline=None,
    derandomize=True,
    suppress_health_check=[
        HealthCheck.function_scoped_fixture,
        HealthCheck.large_base_example,
        HealthCheck.too_slow,
    ],
)
settings.register_profile("explore", parent=settings.get_profile("rbmodules"), derandomize=False)
settings.load_profile(os.environ.get("RBMOD_HYPOTHESIS_PROFILE", "rbmodules"))


@pytest.fixture(autouse=True)
def reset_log_level() -> None:
    """Automatically reset log level verbosity between tests.

    Generally want test output the Unix way: silence is golden.
    """
    rbmodules.cache._DID_LOG_UNABLE_TO_CACHE = False
    logging.getLogger().setLevel(logging.WARN)
    logging.getLogger("rbmodules").setLevel(logging.NOTSET)


@pytest.fixture(autouse=True)
def isolated_cache(tmp_path_factory: pytest.TempPathFactory, monkeypatch: pytest.MonkeyPatch) -> None:
    """Keep every test's default cache out of the user's home directory."""
    monkeypatch.setenv("RBMOD_CACHE", str(tmp_path_factory.mktemp("rbmodules-cache")))
