"""CSV reading and writing for input records and report tables."""

from __future__ import annotations

import re
from pathlib import Path
from typing import TYPE_CHECKING

import pandas as pd

from ._exceptions import ConfigError, DataFileNotFoundError, MalformedRowError

if TYPE_CHECKING:
    from collections.abc import Sequence

_LINE_PATTERN = re.compile(r"line (\d+)")

# Header occupies line 1; data row k (0-based) sits on line k + 2.
HEADER_LINES = 1


def read_table(path: str | Path, columns: Sequence[str]) -> pd.DataFrame:
    """Read a UTF-8 CSV whose header must be exactly ``columns``.

    Every field is read as a string; empty fields stay empty strings so
    the caller decides what "missing" means. A ``line`` column holding the
    1-based file line of each row is appended.

    Raises:
        DataFileNotFoundError: The file does not exist.
        MalformedRowError: Tokenizing fails or the header does not match.
    """
    path = Path(path)
    if not path.is_file():
        raise DataFileNotFoundError(f"Input file not found: {path}", path=str(path))

    try:
        frame = pd.read_csv(
            path,
            dtype=str,
            keep_default_na=False,
            na_filter=False,
            encoding="utf-8",
        )
    except pd.errors.EmptyDataError as exc:
        raise MalformedRowError("File is empty", path=str(path), line=1) from exc
    except pd.errors.ParserError as exc:
        match = _LINE_PATTERN.search(str(exc))
        raise MalformedRowError(
            f"Malformed row: {exc}",
            path=str(path),
            line=int(match.group(1)) if match else None,
        ) from exc
    except UnicodeDecodeError as exc:
        raise MalformedRowError(
            f"File is not valid UTF-8: {exc}", path=str(path)
        ) from exc

    header = [str(c) for c in frame.columns]
    if header != list(columns):
        raise MalformedRowError(
            f"Expected header {','.join(columns)}, found {','.join(header)}",
            path=str(path),
            line=1,
        )

    frame["line"] = range(HEADER_LINES + 1, HEADER_LINES + 1 + len(frame))
    return frame


def write_table(frame: pd.DataFrame, path: str | Path) -> Path:
    """Write ``frame`` as RFC 4180 CSV with ``\\n`` line endings.

    Floats are written with ``repr`` precision so reading the file back
    with ``float_precision="round_trip"`` reproduces them exactly.
    """
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        frame.to_csv(path, index=False, lineterminator="\n", encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"Cannot write {path}: {exc}") from exc
    return path
