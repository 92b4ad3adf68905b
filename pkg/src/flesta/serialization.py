"""JSON input/output helpers shared by the schemas and the CLI."""

import json
import logging
from pathlib import Path
from typing import Any, Iterable, Union

from pydantic import ValidationError

from .exceptions import InputError, ReportingError

logger = logging.getLogger(__name__)


def json_pointer(loc: Iterable[Union[str, int]], prefix: str = "") -> str:
    """Render a pydantic error location as an RFC 6901 pointer."""
    parts = [str(p).replace("~", "~0").replace("/", "~1") for p in loc]
    return prefix + "".join(f"/{p}" for p in parts)


def input_error_from_validation(error: ValidationError, prefix: str = "") -> InputError:
    """Convert the first pydantic error into an InputError carrying its pointer."""
    first = error.errors()[0]
    # pydantic appends the validator name for union members; keep field locations only
    loc = [p for p in first.get("loc", ()) if not (isinstance(p, str) and "[" in p)]
    return InputError(first.get("msg", "invalid value"), json_pointer(loc, prefix))


def read_json_file(path: Union[str, Path]) -> Any:
    """Load a JSON document, mapping syntax errors to InputError."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except FileNotFoundError:
        raise InputError(f"input file not found: {path}", "")
    except json.JSONDecodeError as e:
        raise InputError(f"malformed JSON in {path}: {e.msg} (line {e.lineno}, column {e.colno})", "")


def dump_json(data: Any) -> str:
    """Deterministic JSON text: sorted keys, two-space indent, trailing newline."""
    return json.dumps(data, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def write_json_file(path: Union[str, Path], data: Any) -> Path:
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(dump_json(data), encoding="utf-8")
    except OSError as e:
        raise ReportingError(f"could not write report to {path}: {e}")
    logger.debug(f"Wrote {path}")
    return path
