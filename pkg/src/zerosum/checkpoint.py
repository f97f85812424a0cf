"""Line-oriented checkpoint files for resumable surveys.

Layout::

    zerosum-checkpoint 1
    fingerprint verify-theorem1 p=7 mode=exhaustive seed=0 trials=0
    cursor 114688
    counter verified_cases 114688
    counter witness_size.3 40000
    failure 1,2,1,1,1,1,1,1

The cursor is the number of cases already processed, which is also the
mixed-radix index of the next case.
"""

from __future__ import annotations

import os
import tempfile
from dataclasses import dataclass, field
from pathlib import Path

from .errors import ZeroSumError

FORMAT_VERSION = 1
_MAGIC = "zerosum-checkpoint"


class CheckpointError(ZeroSumError):
    """Unreadable checkpoint, fingerprint mismatch, or a cursor that went backwards."""


def atomic_write_text(path, text: str) -> None:
    """Write via a temporary file in the same directory, then rename over ``path``."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(prefix=f".{path.name}.", dir=path.parent)
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
            fh.flush()
            os.fsync(fh.fileno())
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


@dataclass
class Checkpoint:
    fingerprint: str
    cursor: int
    counters: dict[str, int] = field(default_factory=dict)
    failures: list[tuple[int, ...]] = field(default_factory=list)
    version: int = FORMAT_VERSION

    def dumps(self) -> str:
        lines = [f"{_MAGIC} {self.version}", f"fingerprint {self.fingerprint}", f"cursor {self.cursor}"]
        for name in sorted(self.counters):
            lines.append(f"counter {name} {self.counters[name]}")
        for tup in self.failures:
            lines.append("failure " + ",".join(str(a) for a in tup))
        return "\n".join(lines) + "\n"

    @classmethod
    def loads(cls, text: str) -> "Checkpoint":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        if len(lines) < 3:
            raise CheckpointError("truncated checkpoint")
        head = lines[0].split()
        if len(head) != 2 or head[0] != _MAGIC:
            raise CheckpointError(f"not a checkpoint file: {lines[0]!r}")
        version = int(head[1])
        if version != FORMAT_VERSION:
            raise CheckpointError(f"unsupported checkpoint version {version}")
        if not lines[1].startswith("fingerprint "):
            raise CheckpointError("missing fingerprint line")
        fingerprint = lines[1][len("fingerprint "):]
        kind, _, value = lines[2].partition(" ")
        if kind != "cursor" or not value.isdigit():
            raise CheckpointError(f"bad cursor line {lines[2]!r}")
        ck = cls(fingerprint, int(value), version=version)
        for ln in lines[3:]:
            kind, _, rest = ln.partition(" ")
            try:
                if kind == "counter":
                    name, val = rest.split()
                    ck.counters[name] = int(val)
                elif kind == "failure":
                    ck.failures.append(tuple(int(a) for a in rest.split(",")))
                else:
                    raise ValueError(kind)
            except ValueError as exc:
                raise CheckpointError(f"bad checkpoint line {ln!r}") from exc
        return ck

    @classmethod
    def load(cls, path) -> "Checkpoint":
        try:
            text = Path(path).read_text()
        except OSError as exc:
            raise CheckpointError(f"cannot read checkpoint {path}: {exc}") from exc
        return cls.loads(text)


class CheckpointWriter:
    """Single writer for one checkpoint path; refuses to move the cursor backwards."""

    def __init__(self, path, fingerprint: str):
        self.path = Path(path)
        self.fingerprint = fingerprint
        self.last_cursor = -1
        self.saves = 0

    def resume(self) -> Checkpoint | None:
        if not self.path.exists():
            return None
        ck = Checkpoint.load(self.path)
        if ck.fingerprint != self.fingerprint:
            raise CheckpointError(
                f"checkpoint fingerprint {ck.fingerprint!r} does not match {self.fingerprint!r}"
            )
        self.last_cursor = ck.cursor
        return ck

    def save(self, ck: Checkpoint) -> None:
        if ck.fingerprint != self.fingerprint:
            raise CheckpointError("fingerprint changed mid-run")
        if ck.cursor <= self.last_cursor:
            raise CheckpointError(f"cursor {ck.cursor} does not advance past {self.last_cursor}")
        atomic_write_text(self.path, ck.dumps())
        self.last_cursor = ck.cursor
        self.saves += 1
