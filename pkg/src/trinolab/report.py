"""Report records, their serialization, and atomic persistence."""

from __future__ import annotations

import csv
import hashlib
import io
import json
import os
import tempfile
from collections import Counter
from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .claims import STATUSES, CheckOutcome

SCHEMA_VERSION = "1"


def number_text(v) -> str:
    """Decimal text for ints, "a/b" for fractions, comma-joined for tuples, "" for no value."""
    if v is None:
        return ""
    if isinstance(v, tuple):
        return ",".join(number_text(x) for x in v)
    if isinstance(v, Fraction):
        return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    return str(int(v))


@dataclass(frozen=True)
class ReportRecord:
    schema_version: str
    run_id: str
    spec_id: str
    kind: str
    instance: dict
    modulus: str
    lhs: str
    rhs: str
    status: str

    def sort_key(self):
        inst = tuple((k, int(v)) for k, v in self.instance.items())
        return (self.kind, self.spec_id, int(self.modulus or 0), inst)

    def to_json(self) -> str:
        return json.dumps(asdict(self), separators=(",", ":"))

    @classmethod
    def from_json(cls, line: str) -> ReportRecord:
        return cls(**json.loads(line))


def record_from_outcome(o: CheckOutcome, run_id: str) -> ReportRecord:
    inst = {} if o.p is None else {"p": str(o.p)}
    inst.update((k, str(v)) for k, v in o.instance)
    return ReportRecord(
        SCHEMA_VERSION,
        run_id,
        o.spec_id,
        o.kind,
        inst,
        number_text(o.modulus),
        number_text(o.lhs),
        number_text(o.rhs),
        o.status,
    )


def run_id_for(config: Mapping) -> str:
    """Hash of the run's scientific content; worker count and output choices are excluded."""
    text = json.dumps(config, sort_keys=True, default=str)
    return hashlib.sha256(text.encode()).hexdigest()[:16]


def build_records(outcomes: Iterable[CheckOutcome], run_id: str) -> list[ReportRecord]:
    recs = [record_from_outcome(o, run_id) for o in outcomes]
    recs.sort(key=ReportRecord.sort_key)
    return recs


def jsonl_text(records: Sequence[ReportRecord]) -> str:
    return "".join(r.to_json() + "\n" for r in records)


def csv_summary_text(records: Sequence[ReportRecord]) -> str:
    """One row per claim id with a count per status."""
    counts: dict[tuple[str, str], Counter] = {}
    for r in records:
        counts.setdefault((r.kind, r.spec_id), Counter())[r.status] += 1
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["kind", "spec_id", "checked", *STATUSES])
    for (kind, sid), c in sorted(counts.items()):
        w.writerow([kind, sid, sum(c.values()), *(c[s] for s in STATUSES)])
    return buf.getvalue()


def write_atomic(path: str, text: str) -> None:
    """Write to a temp file beside ``path`` and rename it into place."""
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".report-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
            fh.flush()
            os.fsync(fh.fileno())
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
