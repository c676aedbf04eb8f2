import json
import math
from pathlib import Path
from typing import Any, Mapping, Union

import click
import pandas as pd
from rich.console import Console
from rich.table import Table as RichTable

from induction_confidence.utils.logging_config import logger
from induction_confidence.utils.manifest import RunManifest

Result = Union[Mapping[str, Any], pd.DataFrame]

DISPLAY_DIGITS = 5
CSV_FLOAT_FORMAT = "%.17g"
CSV_LINE_TERMINATOR = "\r\n"


def format_display_value(value: Any) -> str:
    """Five significant digits for floats, plain text otherwise."""
    if isinstance(value, bool) or value is None:
        return str(value)
    if isinstance(value, float):
        if math.isnan(value):
            return "-"
        return f"{value:.{DISPLAY_DIGITS}g}"
    return str(value)


def _json_safe(value: Any) -> Any:
    if isinstance(value, float) and (math.isnan(value) or math.isinf(value)):
        return None
    if hasattr(value, "item"):  # numpy scalars
        return _json_safe(value.item())
    return value


def _records(result: Result) -> list[dict[str, Any]]:
    if isinstance(result, pd.DataFrame):
        return [{k: _json_safe(v) for k, v in row.items()} for row in result.to_dict("records")]
    return [{k: _json_safe(v) for k, v in result.items()}]


def render_table(result: Result, title: str | None = None) -> RichTable:
    """
    Build a rich table for a single report (field/value rows) or a DataFrame.
    """
    table = RichTable(title=title, header_style="bold magenta")
    if isinstance(result, pd.DataFrame):
        for column in result.columns:
            table.add_column(str(column), justify="right")
        for row in result.itertuples(index=False):
            table.add_row(*(format_display_value(_json_safe(v)) for v in row))
        return table

    table.add_column("Field", style="dim")
    table.add_column("Value", justify="right")
    for key, value in result.items():
        table.add_row(str(key), format_display_value(_json_safe(value)))
    return table


def render_json(result: Result, manifest: RunManifest) -> str:
    """Single JSON object with a `manifest` member and the full-precision result."""
    payload: dict[str, Any] = {"manifest": manifest.model_dump()}
    if isinstance(result, pd.DataFrame):
        payload["rows"] = _records(result)
    else:
        payload["result"] = _records(result)[0]
    return json.dumps(payload, indent=2)


def render_csv(result: Result) -> str:
    """RFC 4180 CSV with a header row and round-trip float precision."""
    frame = result if isinstance(result, pd.DataFrame) else pd.DataFrame([dict(result)])
    return frame.to_csv(index=False, float_format=CSV_FLOAT_FORMAT, lineterminator=CSV_LINE_TERMINATOR)


def render(result: Result, fmt: str, manifest: RunManifest, title: str | None = None) -> str | RichTable:
    if fmt == "json":
        return render_json(result, manifest)
    if fmt == "csv":
        return render_csv(result)
    if fmt == "table":
        return render_table(result, title=title)
    raise ValueError(f"unknown output format {fmt!r}")


def emit(result: Result, fmt: str, manifest: RunManifest, output: str | Path | None = None,
         title: str | None = None) -> None:
    """
    Print a result to stdout, or write it to `output` with the manifest alongside.

    Table output to a file is written as plain text.
    """
    rendered = render(result, fmt, manifest, title=title)
    if output is None:
        if isinstance(rendered, RichTable):
            Console().print(rendered)
        else:
            click.echo(rendered, nl=not rendered.endswith("\n"))
        return

    path = Path(output)
    if isinstance(rendered, RichTable):
        with path.open("w", encoding="utf-8") as handle:
            Console(file=handle, width=120).print(rendered)
    else:
        path.write_text(rendered, encoding="utf-8", newline="")
    if fmt != "json":
        write_manifest(manifest, path.with_name(path.name + ".manifest.json"))
    logger.info(f"Wrote {fmt} output to {path}")


def write_csv(frame: pd.DataFrame, path: str | Path) -> Path:
    path = Path(path)
    path.write_text(render_csv(frame), encoding="utf-8", newline="")
    logger.debug(f"Wrote {len(frame)} rows to {path}")
    return path


def write_manifest(manifest: RunManifest, path: str | Path) -> Path:
    path = Path(path)
    path.write_text(json.dumps(manifest.model_dump(), indent=2) + "\n", encoding="utf-8")
    return path
