import json
import os
import tempfile

import pytest

# module-level loggers are created at import time; keep their files out of the repo
os.environ.setdefault("OAC_LOG_DIR", tempfile.mkdtemp(prefix="oac-test-logs-"))

from scripts.core.models import AlphabetSpec  # noqa: E402


@pytest.fixture
def binary_pair():
    """Two uniform binary sources: L = 3."""
    return (AlphabetSpec.uniform(2), AlphabetSpec.uniform(2))


@pytest.fixture
def write_experiment(tmp_path):
    """Write an experiment document and return its path."""
    def _write(name="experiment.json", **fields):
        path = tmp_path / name
        path.write_text(json.dumps(fields), encoding="utf-8")
        return path
    return _write
