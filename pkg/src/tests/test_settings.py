"""
Test configuration loading and validation
"""
import json
import sys
from pathlib import Path

import pytest

# Add src to path for imports
sys.path.insert(0, str(Path(__file__).parent.parent.parent))

from src.settings import Settings


def _settings(tmp_path, monkeypatch, **env) -> Settings:
    for key in ("TDOM_THREADS", "TDOM_LOG_LEVEL", "TDOM_LOG_FILE", "TDOM_INITIAL_SAMPLES",
                "TDOM_MAX_SAMPLES", "TDOM_QUAD_NODES", "TDOM_QUAD_CUTOFF"):
        monkeypatch.delenv(key, raising=False)
    for key, value in env.items():
        monkeypatch.setenv(key, value)
    return Settings(str(tmp_path / "settings.json"))


def test_settings_load(tmp_path, monkeypatch):
    """Test that settings can be loaded without a config file"""
    settings = _settings(tmp_path, monkeypatch)
    assert hasattr(settings, 'contour')
    assert hasattr(settings, 'quadrature')
    assert hasattr(settings, 'runtime')
    print("PASS: Settings loading test passed")


def test_default_settings(tmp_path, monkeypatch):
    """Test that default settings match the documented defaults"""
    settings = _settings(tmp_path, monkeypatch)
    assert settings.contour.initial_samples == 1024
    assert settings.contour.max_samples == 1048576
    assert settings.quadrature.node_count == 64
    assert settings.quadrature.cutoff_T == 40.0
    assert settings.runtime.threads >= 1
    print("PASS: Default settings test passed")


def test_env_overrides(tmp_path, monkeypatch):
    """Test that TDOM_* variables override defaults"""
    settings = _settings(tmp_path, monkeypatch, TDOM_THREADS="3", TDOM_QUAD_NODES="32",
                         TDOM_LOG_LEVEL="debug", TDOM_LOG_FILE=str(tmp_path / "run.log"))
    assert settings.runtime.threads == 3
    assert settings.quadrature.node_count == 32
    assert settings.logging.level == "DEBUG"
    assert settings.logging.file_enabled
    print("PASS: Environment override test passed")


def test_config_file_then_env(tmp_path, monkeypatch):
    """Test that the config file applies first and the environment wins"""
    (tmp_path / "settings.json").write_text(json.dumps({
        "contour": {"initial_samples": 256},
        "runtime": {"threads": 2},
        "unknown": {"ignored": True},
    }))
    settings = _settings(tmp_path, monkeypatch, TDOM_THREADS="5")
    assert settings.contour.initial_samples == 256
    assert settings.runtime.threads == 5
    print("PASS: Config file precedence test passed")


def test_invalid_values_rejected(tmp_path, monkeypatch):
    """Test that invalid settings raise ValueError"""
    with pytest.raises(ValueError):
        _settings(tmp_path, monkeypatch, TDOM_INITIAL_SAMPLES="100")
    with pytest.raises(ValueError):
        _settings(tmp_path, monkeypatch, TDOM_THREADS="zero")
    with pytest.raises(ValueError):
        _settings(tmp_path, monkeypatch, TDOM_THREADS="0")
    print("PASS: Invalid settings test passed")


def test_save_config_roundtrip(tmp_path, monkeypatch):
    """Test that a saved configuration loads back"""
    settings = _settings(tmp_path, monkeypatch)
    settings.quadrature.cutoff_T = 30.0
    path = settings.save_config()
    reloaded = _settings(tmp_path, monkeypatch)
    assert Path(path).exists()
    assert reloaded.quadrature.cutoff_T == 30.0
    print("PASS: Save config test passed")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
