"""
Presentación de OutputRecord como tabla legible, CSV o JSON usando pandas
"""
import math
import numbers
from typing import Any, Union

import numpy as np
import pandas as pd

from ..schemas.output import OutputFormat, OutputRecord

TABLE_COMMAND = "table"


def _is_missing(value: Any) -> bool:
    return value is None or (isinstance(value, float) and math.isnan(value))


def _scientific(value: Any) -> str:
    if _is_missing(value):
        return ""
    if isinstance(value, (bool, np.bool_)):
        return str(bool(value))
    if isinstance(value, numbers.Integral):
        return str(int(value))
    if isinstance(value, numbers.Real):
        return f"{float(value):.3e}"
    return str(value)


def _compact(value: Any) -> str:
    if _is_missing(value):
        return ""
    if isinstance(value, (bool, np.bool_, numbers.Integral)) or not isinstance(value, numbers.Real):
        return str(value)
    return f"{float(value):.10g}"


def to_frame(record: OutputRecord) -> pd.DataFrame:
    """Filas del registro como DataFrame, con las columnas en orden de aparición."""
    columnas = []
    for fila in record.results:
        for clave in fila:
            if clave not in columnas:
                columnas.append(clave)
    return pd.DataFrame(record.results, columns=columnas)


def volume_grid(record: OutputRecord) -> pd.DataFrame:
    """Rejilla de volúmenes con filas n y columnas p."""
    df = to_frame(record)
    grid = df.pivot(index="n", columns="p", values="value")
    grid = grid[list(dict.fromkeys(df["p"]))]
    grid.columns = [f"p={p}" for p in grid.columns]
    return grid


def render_table(record: OutputRecord) -> str:
    lineas = [f"# {record.command} (schema {record.schema_version})"]
    if record.command == TABLE_COMMAND and record.results:
        grid = volume_grid(record)
        lineas.append(grid.to_string(formatters={col: _scientific for col in grid.columns}))
    elif record.results:
        df = to_frame(record)
        lineas.append(df.to_string(index=False, formatters={col: _compact for col in df.columns}))
    for aviso in record.warnings:
        lineas.append(f"# aviso: {aviso}")
    return "\n".join(lineas) + "\n"


def render_csv(record: OutputRecord) -> str:
    """CSV con separador coma, punto decimal y cabecera; flotantes con 17 cifras."""
    return to_frame(record).to_csv(index=False, float_format="%.17g", lineterminator="\n")


def render_json(record: OutputRecord) -> str:
    return record.model_dump_json(indent=2) + "\n"


def render(record: OutputRecord, fmt: Union[OutputFormat, str] = OutputFormat.TABLE) -> str:
    fmt = OutputFormat(fmt)
    if fmt == OutputFormat.CSV:
        return render_csv(record)
    if fmt == OutputFormat.JSON:
        return render_json(record)
    return render_table(record)
