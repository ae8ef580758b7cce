"""
Shared CSV plumbing for every reader: header check, comment skipping,
typed field parsing with per-field error kinds.
"""
import csv
from pathlib import Path
from typing import Iterable, List, Optional, Tuple, Union

from core.errors import IngestError


class FieldError(Exception):
    """One bad field; readers turn it into a RecordError or an IngestError."""

    def __init__(self, kind: str, field: Optional[str], message: str):
        super().__init__(message)
        self.kind = kind
        self.field = field


def number(raw: str, field: str, cast=float):
    text = raw.strip()
    if text == "":
        raise FieldError("missing", field, f"{field} is empty")
    try:
        return cast(text)
    except ValueError:
        raise FieldError("parse", field, f"{field}={text!r} is not a number")


def check_range(value: float, lo: float, hi: float, field: str, hi_inclusive: bool = True):
    ok = lo <= value <= hi if hi_inclusive else lo <= value < hi
    if not ok:
        raise FieldError("range", field, f"{field}={value} out of range")


def format_float(value: float) -> str:
    return repr(float(value))


def data_rows(path: Path, expected_header: List[str]) -> Iterable[Tuple[int, Union[List[str], FieldError]]]:
    """
    Yield (line number, row) after validating the header. '#' lines are skipped.

    Lines are decoded one at a time as UTF-8. An undecodable line yields a
    FieldError in place of the row; pass rows through decoded() inside the
    caller's FieldError handling so it becomes a rejected record.
    """
    if not path.exists():
        raise IngestError(f"file not found: {path}")
    try:
        handle = open(path, "rb")
    except OSError as e:
        raise IngestError(f"cannot open {path}: {e}")
    with handle:
        header = None
        for line, raw in enumerate(handle, start=1):
            try:
                text = raw.decode("utf-8-sig")
            except UnicodeDecodeError as e:
                if header is None:
                    raise IngestError(f"{path}:{line}: header is not valid UTF-8")
                yield line, FieldError("parse", None, f"not valid UTF-8 at byte {e.start}")
                continue
            row = next(csv.reader([text]), [])
            if not row or row[0].startswith("#"):
                continue
            if header is None:
                header = [c.strip() for c in row]
                if header != expected_header:
                    raise IngestError(f"{path}: unreadable header {header}, expected {','.join(expected_header)}")
                continue
            yield line, row
        if header is None:
            raise IngestError(f"{path}: no header, expected {','.join(expected_header)}")


def decoded(row: Union[List[str], FieldError]) -> List[str]:
    if isinstance(row, FieldError):
        raise row
    return row
