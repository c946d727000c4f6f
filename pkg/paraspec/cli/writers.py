"""Deterministic table and manifest output."""

import logging
from collections.abc import Sequence
from importlib import metadata
from pathlib import Path
from typing import Any

import orjson

from paraspec.base import constants as tolerances
from paraspec.cli.constants import CONFIG_PREFIX, DSV_DELIMITER, MANIFEST_NAME, NUMBER_FORMAT, OutputFormat

logger = logging.getLogger(__name__)

TOLERANCE_NAMES = (
    "DEGENERACY_TOLERANCE",
    "BLOCK_COUPLING_TOLERANCE",
    "ZERO_EIGENVALUE_TOLERANCE",
    "CLUSTER_RADIUS",
    "HERMITIAN_TOLERANCE",
    "TRACE_TOLERANCE",
    "POSITIVITY_TOLERANCE",
    "STEADY_STATE_RESIDUAL",
    "MATCH_EXACT_LIMIT",
)


def format_value(value: Any) -> str:
    match value:
        case None:
            return ""
        case bool():
            return "true" if value else "false"
        case float():
            return NUMBER_FORMAT.format(value)
        case _:
            return str(value)


def _dumps(payload: Any, *, indent: bool = False) -> bytes:
    option = orjson.OPT_SORT_KEYS | orjson.OPT_SERIALIZE_NUMPY
    if indent:
        option |= orjson.OPT_INDENT_2
    return orjson.dumps(payload, option=option)


def write_table(
    out_dir: Path,
    stem: str,
    columns: Sequence[str],
    records: Sequence[dict[str, Any]],
    config: dict,
    fmt: OutputFormat,
) -> Path:
    """
    One file per observable table, with the resolved configuration embedded.

    Records are written in the order given, missing columns are left empty.
    """
    out_dir.mkdir(parents=True, exist_ok=True)
    match fmt:
        case OutputFormat.DSV:
            path = out_dir / f"{stem}.dsv"
            lines = [CONFIG_PREFIX + _dumps(config).decode(), DSV_DELIMITER.join(columns)]
            lines.extend(
                DSV_DELIMITER.join(format_value(record.get(column)) for column in columns) for record in records
            )
            path.write_text("\n".join(lines) + "\n", encoding="utf-8")
        case OutputFormat.STRUCTURED:
            path = out_dir / f"{stem}.json"
            rows = [{column: record.get(column) for column in columns} for record in records]
            path.write_bytes(_dumps({"config": config, "columns": list(columns), "records": rows}, indent=True))
    logger.info("Wrote %d records to %s", len(records), path)
    return path


def _version(package: str) -> str:
    try:
        return metadata.version(package)
    except metadata.PackageNotFoundError:
        return "unknown"


def write_manifest(out_dir: Path, command: str, config: dict, files: Sequence[Path]) -> Path:
    out_dir.mkdir(parents=True, exist_ok=True)
    manifest = {
        "command": command,
        "config": config,
        "files": sorted(path.name for path in files),
        "tolerances": {name: getattr(tolerances, name) for name in TOLERANCE_NAMES},
        "versions": {package: _version(package) for package in ("paraspec", "numpy", "scipy", "pydantic", "orjson")},
    }
    path = out_dir / MANIFEST_NAME
    path.write_bytes(_dumps(manifest, indent=True))
    return path
