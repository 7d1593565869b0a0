#!/usr/bin/env python3
"""
Taylor Domination Toolkit Settings
Centralized configuration for contour sampling, quadrature, threading and logging
"""

import os
import json
import math
import logging
from pathlib import Path
from typing import Dict, Any, Optional
from dataclasses import dataclass, asdict, field
from dotenv import load_dotenv

# Load environment variables
load_dotenv()


def _default_threads() -> int:
    return os.cpu_count() or 1


@dataclass
class ContourConfig:
    """Argument-principle sampling settings"""
    initial_samples: int = 1024
    max_samples: int = 1048576
    max_phase_step: float = math.pi / 2
    min_modulus_rel: float = 1e-9


@dataclass
class QuadratureConfig:
    """Inverse Borel integral settings"""
    node_count: int = 64
    cutoff_T: float = 40.0
    trust_radius: float = 24.0


@dataclass
class RuntimeConfig:
    """Worker pool settings"""
    threads: int = field(default_factory=_default_threads)


@dataclass
class LoggingConfig:
    """Logging configuration settings"""
    level: str = "WARNING"
    format: str = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
    file_enabled: bool = False
    file_path: str = "./logs/tdom.log"


class Settings:
    """Main settings class for the toolkit"""

    def __init__(self, config_file: Optional[str] = None):
        self.config_file = config_file or self._get_default_config_file()
        self.project_root = Path(__file__).parent.parent

        # Initialize configuration objects
        self.contour = ContourConfig()
        self.quadrature = QuadratureConfig()
        self.runtime = RuntimeConfig()
        self.logging = LoggingConfig()

        # Load configuration
        self._load_config()
        self._validate_config()

    def _get_default_config_file(self) -> str:
        """Get default configuration file path"""
        return os.getenv("TDOM_CONFIG", str(Path(__file__).parent.parent / "config" / "settings.json"))

    def _load_config(self):
        """Load configuration from file and environment variables"""
        config_path = Path(self.config_file)
        if config_path.exists():
            try:
                with open(config_path, 'r') as f:
                    config_data = json.load(f)
                self._apply_config_data(config_data)
            except (OSError, json.JSONDecodeError, AttributeError) as e:
                logging.warning(f"Failed to load config file {config_path}: {e}")

        # Override with environment variables
        self._load_from_env()

    def _apply_config_data(self, config_data: Dict[str, Any]):
        """Apply configuration data to settings objects"""
        for section, data in config_data.items():
            if section in ("contour", "quadrature", "runtime", "logging"):
                section_obj = getattr(self, section)
                for key, value in data.items():
                    if hasattr(section_obj, key):
                        setattr(section_obj, key, value)

    def _load_from_env(self):
        """Load configuration from environment variables"""
        try:
            self.runtime.threads = int(os.getenv("TDOM_THREADS", self.runtime.threads))
            self.contour.initial_samples = int(os.getenv("TDOM_INITIAL_SAMPLES", self.contour.initial_samples))
            self.contour.max_samples = int(os.getenv("TDOM_MAX_SAMPLES", self.contour.max_samples))
            self.quadrature.node_count = int(os.getenv("TDOM_QUAD_NODES", self.quadrature.node_count))
            self.quadrature.cutoff_T = float(os.getenv("TDOM_QUAD_CUTOFF", self.quadrature.cutoff_T))
        except ValueError as e:
            raise ValueError(f"Invalid numeric environment override: {e}") from None

        # Logging configuration
        self.logging.level = os.getenv("TDOM_LOG_LEVEL", self.logging.level).upper()
        log_file = os.getenv("TDOM_LOG_FILE")
        if log_file:
            self.logging.file_path = log_file
            self.logging.file_enabled = True

    def _validate_config(self):
        """Validate configuration settings"""
        if self.runtime.threads < 1:
            raise ValueError(f"Invalid threads: {self.runtime.threads}")

        samples = self.contour.initial_samples
        if samples < 64 or samples & (samples - 1):
            raise ValueError(f"Invalid initial_samples: {samples} (power of two >= 64)")
        cap = self.contour.max_samples
        if cap < samples or cap & (cap - 1):
            raise ValueError(f"Invalid max_samples: {cap} (power of two >= initial_samples)")
        if not (0.0 < self.contour.max_phase_step < math.pi):
            raise ValueError(f"Invalid max_phase_step: {self.contour.max_phase_step}")
        if not self.contour.min_modulus_rel > 0:
            raise ValueError(f"Invalid min_modulus_rel: {self.contour.min_modulus_rel}")

        if self.quadrature.node_count < 8:
            raise ValueError(f"Invalid node_count: {self.quadrature.node_count}")
        if not self.quadrature.cutoff_T > 0:
            raise ValueError(f"Invalid cutoff_T: {self.quadrature.cutoff_T}")
        if not self.quadrature.trust_radius > 0:
            raise ValueError(f"Invalid trust_radius: {self.quadrature.trust_radius}")

        if self.logging.level not in ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"):
            raise ValueError(f"Invalid log level: {self.logging.level}")

    def save_config(self):
        """Save current configuration to file"""
        config_data = {
            "contour": asdict(self.contour),
            "quadrature": asdict(self.quadrature),
            "runtime": asdict(self.runtime),
            "logging": asdict(self.logging)
        }

        config_path = Path(self.config_file)
        config_path.parent.mkdir(parents=True, exist_ok=True)

        with open(config_path, 'w') as f:
            json.dump(config_data, f, indent=2)
        return str(config_path)

    def __str__(self) -> str:
        """String representation of settings"""
        return f"Taylor domination toolkit settings (Config: {self.config_file})"

    def __repr__(self) -> str:
        """Detailed representation of settings"""
        return f"Settings(config_file='{self.config_file}')"


# Global settings instance, built on first use
settings: Optional[Settings] = None


def get_settings() -> Settings:
    """Get the global settings instance"""
    global settings
    if settings is None:
        settings = Settings()
    return settings


def reload_settings() -> Settings:
    """Reload settings from configuration file and environment"""
    global settings
    settings = Settings(settings.config_file if settings is not None else None)
    return settings


def create_default_config() -> str:
    """Create a default configuration file"""
    return Settings().save_config()


if __name__ == "__main__":
    print("Taylor Domination Toolkit Settings")
    print("=" * 40)

    try:
        current = get_settings()
        print(f"Config file: {current.config_file}")
        print(f"Contour samples: {current.contour.initial_samples} .. {current.contour.max_samples}")
        print(f"Quadrature: {current.quadrature.node_count} nodes on [0, {current.quadrature.cutoff_T}]")
        print(f"Threads: {current.runtime.threads}")
        print(f"Log level: {current.logging.level}")
    except ValueError as e:
        print(f"Error: {e}")
