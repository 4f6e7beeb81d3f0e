"""
Registry Package
Built-in example systems and loading of user systems from JSON
"""

import json
import logging
from pathlib import Path
from typing import Any, Dict, List, Union

from pydantic import ValidationError

from app.core.exceptions import UnknownExampleException, UsageException

from .examples import EXAMPLES
from .models import ExampleRecord, ExampleSystem

logger = logging.getLogger(__name__)

_BY_ID = {record.id: record for record in EXAMPLES}


def example_ids() -> List[str]:
    """Registered ids in registry order"""
    return [record.id for record in EXAMPLES]


def get_example(example_id: str) -> ExampleSystem:
    if example_id not in _BY_ID:
        raise UnknownExampleException(example_id, detail=f"Known examples: {', '.join(example_ids())}")
    return _BY_ID[example_id].system


def _structure_record(data: Dict[str, Any], default_id: str) -> Dict[str, Any]:
    """Lift the bare structure schema {chart, forms, domain} to a record"""
    return {
        "id": data.get("id", default_id),
        "chart": data["chart"],
        "domain": data.get("domain", {}),
        "forms": [
            {"label": f"omega{n + 1}", "entries": entries}
            for n, entries in enumerate(data["forms"])
        ],
    }


def load_example(path: Union[str, Path]) -> ExampleSystem:
    """Load a user system from an example-record or structure JSON file"""
    path = Path(path)
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as e:
        raise UsageException(f"Cannot read {path}: {e}") from e
    if not isinstance(data, dict) or "chart" not in data or "forms" not in data:
        raise UsageException(f"{path} is neither an example record nor a structure")
    if data["forms"] and isinstance(data["forms"][0], list):
        data = _structure_record(data, path.stem)
    data.setdefault("id", path.stem)
    try:
        record = ExampleRecord.model_validate(data)
    except ValidationError as e:
        raise UsageException(f"Invalid system in {path}", detail=str(e)) from e
    logger.info("Loaded system %s from %s", record.id, path)
    return record.system


__all__ = [
    'EXAMPLES',
    'ExampleRecord',
    'ExampleSystem',
    'example_ids',
    'get_example',
    'load_example',
]
