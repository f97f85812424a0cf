"""
Stopping and resuming a long survey
===================================

Surveys checkpoint their cursor and counters to a small text file. A run
cut short picks up where the file says and ends with the same report.
"""

import tempfile
from pathlib import Path

from zerosum.checkpoint import Checkpoint
from zerosum.verifier import verify_theorem1

with tempfile.TemporaryDirectory() as tmp:
    ck = Path(tmp) / "survey.ck"
    part = verify_theorem1(7, checkpoint=ck, stop_at=200_000)
    print("stopped at cursor", part.cursor, "of", part.total_cases)
    print(ck.read_text())

    done = verify_theorem1(7, checkpoint=ck, resume=True)
    print("resumed from", part.cursor, "->", done.as_dict()["totals"])
    print("last checkpoint cursor:", Checkpoint.load(ck).cursor)
