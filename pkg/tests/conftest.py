import os

import pytest

from ordlab import fundseq

# keep runs independent of the caller's environment
os.environ.pop("ORDLAB_FUEL", None)


@pytest.fixture
def fuel_env(monkeypatch):
    def set_fuel(v):
        monkeypatch.setenv("ORDLAB_FUEL", str(v))
    return set_fuel


@pytest.fixture(autouse=True)
def _restore_fuel(monkeypatch):
    # the CLI exports --fuel into os.environ; setenv first so undo removes it
    monkeypatch.setenv("ORDLAB_FUEL", "1")
    monkeypatch.delenv("ORDLAB_FUEL")
    # a fuel-starved call leaves partial descents in the shared memo, which
    # would let a later call with the same fuel get further
    monkeypatch.setattr(fundseq, "_DEFAULT", None)
