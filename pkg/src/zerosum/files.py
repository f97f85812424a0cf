"""Vector input files and JSON reports."""

from __future__ import annotations

import datetime as _dt
import json
import re
from pathlib import Path
from typing import Optional

from . import __version__
from .checkpoint import atomic_write_text
from .errors import DomainError

# keys that legitimately differ between otherwise identical runs
VOLATILE_KEYS = ("generated_at", "elapsed_seconds")
REPORT_KEYS = (
    "artifact_version",
    "command",
    "elapsed_seconds",
    "failures",
    "generated_at",
    "mode",
    "p",
    "result",
    "seed",
    "totals",
)

_SPLIT = re.compile(r"[,\s]+")


class ParseError(DomainError):
    def __init__(self, path, line_no: int, message: str):
        super().__init__(f"{path}:{line_no}: {message}")
        self.line_no = line_no


def parse_vector_lines(
    lines, p: int, *, rank: int = 2, allow_duplicates: bool = False, allow_zero: bool = True, source="<input>"
) -> list:
    """Parse one element per line: two integers for F_p^2, one for F_p.

    Integers may be separated by commas and/or whitespace; values are
    reduced mod p; blank lines and ``#`` comments are skipped.
    """
    out = []
    seen = {}
    for line_no, raw in enumerate(lines, start=1):
        text = raw.split("#", 1)[0].strip()
        if not text:
            continue
        tokens = [t for t in _SPLIT.split(text) if t]
        if len(tokens) != rank:
            raise ParseError(source, line_no, f"expected {rank} integer(s), found {len(tokens)}")
        try:
            values = tuple(int(t) % p for t in tokens)
        except ValueError:
            bad = next(t for t in tokens if not re.fullmatch(r"[+-]?\d+", t))
            raise ParseError(source, line_no, f"not an integer: {bad!r}") from None
        if not allow_zero and not any(values):
            raise ParseError(source, line_no, "zero vector is not allowed here")
        element = values if rank == 2 else values[0]
        if not allow_duplicates and element in seen:
            raise ParseError(source, line_no, f"duplicate of line {seen[element]} after reduction mod {p}")
        seen.setdefault(element, line_no)
        out.append(element)
    return out


def parse_vector_file(path, p: int, **kwargs) -> list:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise DomainError(f"cannot read {path}: {exc}") from exc
    return parse_vector_lines(text.splitlines(), p, source=path, **kwargs)


def make_report(
    command: str,
    p: int,
    *,
    mode: str = "single",
    seed: Optional[int] = 0,
    totals: dict,
    failures: list,
    result: dict,
    elapsed: Optional[float] = None,
) -> dict:
    return {
        "artifact_version": __version__,
        "command": command,
        "elapsed_seconds": None if elapsed is None else round(elapsed, 3),
        "failures": failures,
        "generated_at": _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds"),
        "mode": mode,
        "p": p,
        "result": result,
        "seed": seed,
        "totals": totals,
    }


def dumps_report(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True) + "\n"


def write_report(report: dict, path) -> None:
    atomic_write_text(path, dumps_report(report))


def strip_volatile(report: dict) -> dict:
    return {k: v for k, v in report.items() if k not in VOLATILE_KEYS}
