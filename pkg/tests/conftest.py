import os
import sys
from pathlib import Path

import pytest

ROOT = Path(__file__).resolve().parents[1]
if str(ROOT) not in sys.path:
    sys.path.insert(0, str(ROOT))

os.environ.setdefault("APP_ENV", "test")


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: acceptance-scale runs (large n or many samples)")


@pytest.fixture
def clear_result_cache():
    from app.core.cache_utils import result_cache

    result_cache.clear()
    yield result_cache
    result_cache.clear()
