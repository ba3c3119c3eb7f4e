"""
Toolkit Configuration Wrapper
Antipath Toolkit - oriented graph verification

This module provides a unified configuration object for the solvers,
campaign runner and CLI, loaded from the YAML file under config/.
"""

import logging
from pathlib import Path
from typing import Any, Dict, Optional

import yaml

logger = logging.getLogger(__name__)

DEFAULT_CONFIG_PATH = Path(__file__).resolve().parent.parent / "config" / "toolkit_config.yaml"


class ToolkitConfig:
    """Unified toolkit configuration with defaults for guards and campaigns."""

    def __init__(self, config_path: Optional[str] = None):
        """
        Initialize configuration.

        Args:
            config_path: Path to the toolkit configuration YAML file
        """
        self.config_path = Path(config_path) if config_path else DEFAULT_CONFIG_PATH
        self.config = self._load_config()

    def _load_config(self) -> Dict[str, Any]:
        """Load configuration from YAML file."""
        try:
            with open(self.config_path, 'r', encoding='utf-8') as file:
                config = yaml.safe_load(file) or {}
            logger.info(f"Configuration loaded from {self.config_path}")
            return config
        except FileNotFoundError:
            logger.error(f"Configuration file not found: {self.config_path}")
            raise
        except yaml.YAMLError as e:
            logger.error(f"Error parsing configuration file: {e}")
            raise

    def get(self, section: str, key: str, default: Any = None) -> Any:
        """
        Read one configuration value.

        Args:
            section: Top-level section name (e.g. 'guards')
            key: Key inside the section
            default: Value returned when the section or key is absent

        Returns:
            The configured value or the default
        """
        return (self.config.get(section) or {}).get(key, default)

    @property
    def log_level(self) -> str:
        return str(self.get('environment', 'log_level', 'INFO')).upper()

    @property
    def log_format(self) -> str:
        return self.get('environment', 'log_format',
                        '%(asctime)s - %(name)s - %(levelname)s - %(message)s')


def create_toolkit_config(config_path: Optional[str] = None) -> ToolkitConfig:
    """
    Factory function to create the toolkit configuration.

    Args:
        config_path: Path to configuration file

    Returns:
        ToolkitConfig: Loaded configuration instance
    """
    return ToolkitConfig(config_path)
