"""
Configuration management for alcove-adlv

Nested dataclass sections, environment overrides and logging setup.
"""

import logging
import logging.handlers
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from .errors import ConfigError
from .root_data import RootSystemKind

LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
DATE_FORMAT = '%Y-%m-%d %H:%M:%S'
COMPUTE_MODES = ("all-vertices", "fundamental-domain")


@dataclass
class ComputeConfig:
    """Dimension-map computation settings"""
    group: str = "a2"
    radius: Optional[int] = None  # None means window + 4
    window: int = 12
    mode: str = "all-vertices"
    workers: int = 1
    allow_unstable: bool = False

    @property
    def effective_radius(self) -> int:
        return self.window + 4 if self.radius is None else self.radius


@dataclass
class PathConfig:
    """Path configuration"""
    workspace_root: str = str(Path.home() / ".alcove-adlv")
    output_dir: str = ""
    log_dir: str = ""

    def __post_init__(self):
        if not self.output_dir:
            self.output_dir = os.path.join(self.workspace_root, "outputs")
        if not self.log_dir:
            self.log_dir = os.path.join(self.workspace_root, "logs")


@dataclass
class RuntimeConfig:
    """Runtime configuration"""
    name: str = "alcove-adlv"
    version: str = "0.1.0"
    log_level: str = "INFO"
    log_to_file: bool = True


@dataclass
class Config:
    """Main configuration class"""
    compute: ComputeConfig = field(default_factory=ComputeConfig)
    paths: PathConfig = field(default_factory=PathConfig)
    runtime: RuntimeConfig = field(default_factory=RuntimeConfig)

    def __post_init__(self):
        self._setup_paths()
        self._setup_logging()
        self._validate_config()

    def _setup_paths(self):
        """Apply environment overrides"""
        workspace = os.getenv('ALCOVE_ADLV_WORKSPACE')
        if workspace:
            self.paths = PathConfig(workspace_root=workspace)

        level = os.getenv('ALCOVE_ADLV_LOG_LEVEL')
        if level:
            self.runtime.log_level = level.upper()

        workers = os.getenv('ALCOVE_ADLV_WORKERS')
        if workers:
            try:
                self.compute.workers = int(workers)
            except ValueError as exc:
                raise ConfigError(f"ALCOVE_ADLV_WORKERS must be an integer, got '{workers}'") from exc

        to_file = os.getenv('ALCOVE_ADLV_LOG_TO_FILE')
        if to_file is not None:
            self.runtime.log_to_file = to_file.strip() not in ("0", "false", "no", "")

    def _setup_logging(self):
        """Set up logging with a console handler and rotating files"""
        root_logger = logging.getLogger()
        level = getattr(logging, self.runtime.log_level.upper(), None)
        if not isinstance(level, int):
            raise ConfigError(f"unknown log level '{self.runtime.log_level}'")
        root_logger.setLevel(level)

        for handler in root_logger.handlers[:]:
            root_logger.removeHandler(handler)

        formatter = logging.Formatter(LOG_FORMAT, datefmt=DATE_FORMAT)
        console_handler = logging.StreamHandler()
        console_handler.setFormatter(formatter)
        root_logger.addHandler(console_handler)

        if not self.runtime.log_to_file:
            return None

        log_dir = Path(self.paths.log_dir)
        log_dir.mkdir(parents=True, exist_ok=True)

        file_handler = logging.handlers.RotatingFileHandler(
            log_dir / "alcove_adlv.log",
            maxBytes=10*1024*1024,  # 10MB
            backupCount=5
        )
        file_handler.setFormatter(formatter)
        root_logger.addHandler(file_handler)

        error_handler = logging.handlers.RotatingFileHandler(
            log_dir / "alcove_adlv_errors.log",
            maxBytes=5*1024*1024,  # 5MB
            backupCount=3
        )
        error_handler.setLevel(logging.ERROR)
        error_handler.setFormatter(formatter)
        root_logger.addHandler(error_handler)

        logging.getLogger(__name__).debug(f"Log files: {log_dir}")
        return log_dir

    def _validate_config(self):
        """Validate computation settings"""
        compute = self.compute
        compute.group = RootSystemKind.parse(compute.group).value
        if compute.mode not in COMPUTE_MODES:
            raise ConfigError(f"unknown mode '{compute.mode}'")
        if compute.window < 0:
            raise ConfigError(f"window must be non-negative, got {compute.window}")
        radius = compute.effective_radius
        if radius < 1 or 2 * radius < compute.window:
            raise ConfigError(f"radius {radius} is too small for window {compute.window}")
        if compute.workers < 1:
            raise ConfigError(f"workers must be positive, got {compute.workers}")

        os.makedirs(self.paths.output_dir, exist_ok=True)
        logging.getLogger(__name__).debug("Configuration loaded and validated")


def get_config() -> Config:
    """Get the global configuration instance"""
    if not hasattr(get_config, '_config'):
        get_config._config = Config()

    return get_config._config


def reload_config() -> Config:
    """Reload configuration (useful for testing)"""
    if hasattr(get_config, '_config'):
        delattr(get_config, '_config')
    return get_config()
