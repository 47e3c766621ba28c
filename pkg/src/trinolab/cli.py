"""Command-line front end: ``trinolab seq | verify | conjecture``."""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import sequences as seq
from .arith import odd_primes
from .claims import FAIL, REPRESENTATION_MISSING, SKIPPED, UNRESOLVED, Grid, PASS
from .conjectures import candidate_matches, conjecture_ids, cross_check, run_conjectures
from .congruences import registry_by_id, run_registry
from .identities import identity_ids, run_identities
from .report import build_records, csv_summary_text, jsonl_text, run_id_for, write_atomic
from .runner import match_ids

FAMILIES = ("T", "M", "D", "catalan", "central-binom", "lucas", "euler")
MAX_WITNESSES = 50


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    ids: tuple[str, ...] = ("*",)
    pmin: int = 3
    pmax: int = 100
    nmax: int = 50
    grid: tuple[tuple[int, int], tuple[int, int]] = ((-4, 4), (-4, 4))
    workers: int = 1
    out: str | None = None
    format: str = "jsonl"

    def validate(self) -> RunConfig:
        if self.pmin < 3:
            raise ConfigError("pmin must be at least 3")
        if self.pmax < self.pmin:
            raise ConfigError("pmax must be at least pmin")
        if self.nmax < 1:
            raise ConfigError("nmax must be at least 1")
        if self.workers < 1:
            raise ConfigError("workers must be at least 1")
        if self.format not in ("jsonl", "csv"):
            raise ConfigError("format must be jsonl or csv")
        for lo, hi in self.grid:
            if lo > hi:
                raise ConfigError("grid ranges need min <= max")
        return self

    def as_grid(self) -> Grid:
        """b, m, x and A take the first range; c and B the second."""
        br, cr = self.grid
        return Grid(b=br, c=cr, m=br, x=br, A=br, B=cr)

    def identity(self, command: str) -> dict:
        return {
            "command": command,
            "ids": list(self.ids),
            "pmin": self.pmin,
            "pmax": self.pmax,
            "nmax": self.nmax,
            "grid": [list(r) for r in self.grid],
        }


def parse_grid(text: str):
    try:
        parts = [tuple(int(v) for v in chunk.split(":")) for chunk in text.split(",")]
    except ValueError as exc:
        raise ConfigError(f"bad grid {text!r}") from exc
    if len(parts) != 2 or any(len(r) != 2 for r in parts):
        raise ConfigError(f"grid must look like bmin:bmax,cmin:cmax, got {text!r}")
    return tuple(parts)


def read_config_file(path: str) -> dict[str, str]:
    out = {}
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.read().splitlines()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    for n, line in enumerate(lines, 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{n}: expected key=value")
        k, v = (s.strip() for s in line.split("=", 1))
        out[k.replace("-", "_")] = v
    return out


_KEYS = ("ids", "pmin", "pmax", "nmax", "grid", "workers", "out", "format")


def build_config(args: argparse.Namespace) -> RunConfig:
    """Defaults, then the config file, then command-line flags."""
    raw: dict[str, object] = {}
    if args.config:
        filed = read_config_file(args.config)
        unknown = set(filed) - set(_KEYS)
        if unknown:
            raise ConfigError(f"unknown config keys: {', '.join(sorted(unknown))}")
        raw.update(filed)
    for k in _KEYS:
        v = getattr(args, k, None)
        if v is not None:
            raw[k] = v
    kw: dict[str, object] = {}
    try:
        if "ids" in raw:
            ids = raw["ids"]
            items = ids if isinstance(ids, list) else str(ids).split(",")
            kw["ids"] = tuple(s.strip() for item in items for s in str(item).split(",") if s.strip())
        for k in ("pmin", "pmax", "nmax", "workers"):
            if k in raw:
                kw[k] = int(raw[k])
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    if "grid" in raw:
        kw["grid"] = parse_grid(str(raw["grid"]))
    if "out" in raw:
        kw["out"] = str(raw["out"])
    if "format" in raw:
        kw["format"] = str(raw["format"])
    return RunConfig(**kw).validate()


# -- commands ------------------------------------------------------------------


def _param(text: str | None, default):
    if text is None:
        return default
    v = Fraction(text)
    return int(v) if v.denominator == 1 else v


def _fmt(v) -> str:
    if isinstance(v, Fraction):
        return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    return str(v)


def cmd_seq(args) -> int:
    lo, hi = args.from_, args.to
    if lo < 0 or hi < lo:
        print("error: need 0 <= --from <= --to", file=sys.stderr)
        return 2
    count = hi + 1
    b, c = _param(args.b, 1), _param(args.c, 1)
    fam = args.family
    if fam in ("T", "M") and not (isinstance(b, int) and isinstance(c, int)):
        print("error: --b and --c must be integers", file=sys.stderr)
        return 2
    if fam == "T":
        values = seq.trinomial_list(b, c, count)
    elif fam == "M":
        values = seq.motzkin_list(b, c, count)
    elif fam == "D":
        values = seq.delannoy_list(_param(args.x, 1), count)
    elif fam == "catalan":
        values = [seq.catalan(n) for n in range(count)]
    elif fam == "central-binom":
        values = [seq.central_binom(n) for n in range(count)]
    elif fam == "lucas":
        params = seq.LucasParams(int(_param(args.A, 1)), int(_param(args.B, -1)))
        values = [seq.lucas_u(n, params) for n in range(count)]
    else:
        values = [seq.euler_number(n) for n in range(count)]
    for n in range(lo, count):
        print(f"{n}\t{_fmt(values[n])}")
    return 0


def _emit(outcomes, config: RunConfig, command: str) -> None:
    records = build_records(outcomes, run_id_for(config.identity(command)))
    if config.out:
        text = jsonl_text(records) if config.format == "jsonl" else csv_summary_text(records)
        write_atomic(config.out, text)


def _tally(outcomes) -> dict[str, int]:
    t = {s: 0 for s in (PASS, FAIL, SKIPPED, UNRESOLVED, REPRESENTATION_MISSING)}
    for o in outcomes:
        t[o.status] += 1
    return t


def _print_witnesses(outcomes) -> None:
    fails = [o for o in outcomes if o.status == FAIL]
    for o in fails[:MAX_WITNESSES]:
        print(f"FAIL {o.witness()}")
    if len(fails) > MAX_WITNESSES:
        print(f"... {len(fails) - MAX_WITNESSES} more failures in the report")


def cmd_verify(config: RunConfig) -> int:
    grid = config.as_grid()
    cong_ids = match_ids(config.ids, registry_by_id())
    ident_ids = match_ids(config.ids, identity_ids())
    if not cong_ids and not ident_ids:
        print(f"error: no identity or congruence matches {', '.join(config.ids)}", file=sys.stderr)
        return 2
    primes = odd_primes(config.pmin, config.pmax)
    outcomes = []
    if ident_ids:
        outcomes += run_identities(ident_ids, config.nmax, grid, config.workers)
    if cong_ids:
        outcomes += run_registry(cong_ids, primes, grid, config.workers)
    _emit(outcomes, config, "verify")
    t = _tally(outcomes)
    _print_witnesses(outcomes)
    print(f"checked {len(outcomes)}, passed {t[PASS]}, skipped {t[SKIPPED]}, failed {t[FAIL]}")
    return 1 if t[FAIL] else 0


def cmd_conjecture(config: RunConfig) -> int:
    ids = match_ids(config.ids, conjecture_ids())
    if not ids:
        print(f"error: no conjecture matches {', '.join(config.ids)}", file=sys.stderr)
        return 2
    outcomes = run_conjectures(ids, odd_primes(config.pmin, config.pmax), config.nmax, config.as_grid(), config.workers)
    _emit(outcomes, config, "conjecture")
    t = _tally(outcomes)
    _print_witnesses(outcomes)
    for line in cross_check(outcomes):
        print(f"DISAGREE {line}")
    print(
        f"checked {len(outcomes)}, passed {t[PASS]}, skipped {t[SKIPPED]}, failed {t[FAIL]}, "
        f"unresolved {t[UNRESOLVED]} (candidate matched {candidate_matches(outcomes)}), "
        f"representation-missing {t[REPRESENTATION_MISSING]}"
    )
    return 1 if t[FAIL] else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="trinolab", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    s = sub.add_parser("seq", help="print a sequence, one 'n<TAB>value' line per index")
    s.add_argument("family", choices=FAMILIES)
    for flag in ("--b", "--c", "--x", "--A", "--B"):
        s.add_argument(flag, default=None)
    s.add_argument("--from", dest="from_", type=int, default=0)
    s.add_argument("--to", type=int, default=10)

    for name, what in (("verify", "identities and proven congruences"), ("conjecture", "conjectured congruences")):
        p = sub.add_parser(name, help=f"check {what}")
        p.add_argument("--ids", action="append", help="id or glob; repeat or comma-separate")
        p.add_argument("--pmin", type=int)
        p.add_argument("--pmax", type=int)
        p.add_argument("--nmax", type=int)
        p.add_argument("--grid", help="bmin:bmax,cmin:cmax")
        p.add_argument("--workers", type=int)
        p.add_argument("--out")
        p.add_argument("--format", choices=("jsonl", "csv"))
        p.add_argument("--config", help="key=value file; flags override it")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "seq":
        return cmd_seq(args)
    try:
        config = build_config(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return cmd_verify(config) if args.command == "verify" else cmd_conjecture(config)


if __name__ == "__main__":
    sys.exit(main())
