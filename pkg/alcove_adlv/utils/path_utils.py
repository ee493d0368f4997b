"""
Path utilities for alcove-adlv
Resolves output and input paths against the configured workspace
"""

import os
from pathlib import Path
from typing import List, Optional

from ..config import Config
from ..errors import MapFileError


def resolve_output_path(config: Config, output_path: Optional[str], default_name: str) -> Path:
    """
    Resolve where an output file goes

    Absolute paths are kept, relative ones are placed under the output
    directory, and a missing path falls back to ``default_name`` there.
    """
    if not output_path:
        return Path(config.paths.output_dir) / default_name
    path = Path(os.path.expanduser(output_path))
    if path.is_absolute() or path.parent != Path("."):
        return path
    return Path(config.paths.output_dir) / path


def resolve_input_path(config: Config, input_path: str, extensions: Optional[List[str]] = None) -> Path:
    """Find an input file as given, or inside the output directory."""
    candidates = [Path(os.path.expanduser(input_path)), Path(config.paths.output_dir) / input_path]
    for candidate in candidates:
        if candidate.is_file():
            if extensions and candidate.suffix.lower() not in extensions:
                raise MapFileError(f"{candidate} does not have one of the extensions {', '.join(extensions)}")
            return candidate
    raise MapFileError(f"input file not found: {input_path}")


def default_output_name(group: str, window: int, suffix: str) -> str:
    return f"{group}_window{window}.{suffix.lstrip('.')}"
