import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent.parent))


@pytest.fixture(autouse=True)
def isolated_settings(monkeypatch, tmp_path):
    """Keep every test away from the real config/settings.json"""
    import settings
    monkeypatch.setattr(settings, "SETTINGS_PATH", tmp_path / "settings.json")
    yield tmp_path
