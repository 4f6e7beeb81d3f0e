"""
File handling utilities for trajectories, drift reports and the report cache
"""

import csv
import json
import logging
from pathlib import Path
from typing import Any, Dict, Iterable, Optional, Sequence, Union

from app.core.config import settings
from app.core.exceptions import OutputWriteException

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]


class FileHandler:
    """Utility class for reading and writing result files"""

    def __init__(self, output_dir: Optional[PathLike] = None):
        """Initialize file handler"""
        self.output_dir = Path(output_dir or settings.OUTPUT_DIR)
        self.output_dir.mkdir(parents=True, exist_ok=True)

    def resolve(self, filename: PathLike) -> Path:
        path = Path(filename)
        return path if path.is_absolute() else self.output_dir / path

    def write_csv(self, filename: PathLike, header: Sequence[str], rows: Iterable[Sequence[float]]) -> str:
        """Write rows with full float precision"""
        path = self.resolve(filename)
        try:
            with open(path, "w", newline="", encoding="utf-8") as f:
                writer = csv.writer(f)
                writer.writerow(header)
                for row in rows:
                    writer.writerow([repr(float(value)) for value in row])
            logger.info(f"CSV written: {path}")
            return str(path)
        except OSError as e:
            logger.error(f"Failed to write CSV {path}: {e}")
            raise OutputWriteException(f"Failed to write {path}: {e}")

    def write_json(self, filename: PathLike, payload: Any) -> str:
        path = self.resolve(filename)
        try:
            with open(path, "w", encoding="utf-8") as f:
                json.dump(payload, f, indent=2, sort_keys=False)
            logger.info(f"JSON written: {path}")
            return str(path)
        except (OSError, TypeError) as e:
            logger.error(f"Failed to write JSON {path}: {e}")
            raise OutputWriteException(f"Failed to write {path}: {e}")

    def read_json(self, filename: PathLike) -> Any:
        path = self.resolve(filename)
        try:
            with open(path, "r", encoding="utf-8") as f:
                return json.load(f)
        except (OSError, json.JSONDecodeError) as e:
            logger.error(f"Failed to read JSON {path}: {e}")
            raise OutputWriteException(f"Failed to read {path}: {e}")

    def load_report_cache(self) -> Dict[str, Any]:
        """Return cached reports keyed by example id; empty when absent or unreadable"""
        path = self.resolve(settings.REPORT_CACHE_FILE)
        if not path.exists():
            return {}
        try:
            cache = self.read_json(path)
        except OutputWriteException:
            logger.warning(f"Ignoring unreadable report cache {path}")
            return {}
        return cache if isinstance(cache, dict) else {}

    def save_report_cache(self, cache: Dict[str, Any]) -> str:
        return self.write_json(settings.REPORT_CACHE_FILE, cache)
