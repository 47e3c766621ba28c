"""Deterministic fan-out of independent check tasks."""

from __future__ import annotations

import fnmatch
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Iterable, Mapping, Sequence, TypeVar

A = TypeVar("A")
R = TypeVar("R")


def id_matches(spec_id: str, pattern: str) -> bool:
    """Exact id, shell glob, or a family name: "lem2.4" covers lem2.4a..c, "c5.6" covers c5.6-*."""
    return (
        fnmatch.fnmatchcase(spec_id, pattern)
        or fnmatch.fnmatchcase(spec_id, pattern + "-*")
        or fnmatch.fnmatchcase(spec_id, pattern + "[a-z]")
    )


def match_ids(patterns: Sequence[str], known: Iterable[str]) -> list[str]:
    """Known ids selected by any pattern, in the order ``known`` lists them."""
    return [k for k in known if any(id_matches(k, pat) for pat in patterns)]


def fan_out(fn: Callable[[A], R], tasks: Sequence[A], workers: int = 1) -> list[R]:
    """``[fn(t) for t in tasks]``, optionally spread over worker processes.

    Results come back in task order, so the caller's merge does not depend
    on scheduling.  ``fn`` and the tasks must be picklable when workers > 1.
    """
    if workers < 1:
        raise ValueError("workers must be >= 1")
    if workers == 1 or len(tasks) <= 1:
        return [fn(t) for t in tasks]
    chunk = max(1, len(tasks) // (workers * 4))
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, tasks, chunksize=chunk))


def count_statuses(outcomes: Iterable, statuses: Mapping[str, int] | None = None) -> dict[str, int]:
    out = dict(statuses or {})
    for o in outcomes:
        out[o.status] = out.get(o.status, 0) + 1
    return out
