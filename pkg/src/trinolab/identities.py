"""Exact identities and all-n divisibility statements, checked by evaluation.

Every ``id_*`` function evaluates both sides over Z or Q and returns an
:class:`IdentityCase`.  Sums of the shape sum_{k<n} a_k q^(n-1-k) are taken
from exact sequence lists, so sweeping n only costs one pass per list.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence, Union

from . import sequences as seq
from .arith import jacobi
from .claims import FAIL, PASS, CheckOutcome, DivisibilitySpec, Grid
from .runner import fan_out, match_ids

Value = Union[int, Fraction, tuple]


@dataclass(frozen=True)
class IdentityCase:
    identity_id: str
    instance: tuple[tuple[str, int], ...]
    lhs: Value
    rhs: Value

    @property
    def passed(self) -> bool:
        return self.lhs == self.rhs

    def outcome(self) -> CheckOutcome:
        return CheckOutcome(
            self.identity_id, "identity", None, self.instance, 0, self.lhs, self.rhs, PASS if self.passed else FAIL
        )


def _case(name: str, lhs: Value, rhs: Value, **inst: int) -> IdentityCase:
    return IdentityCase(name, tuple(inst.items()), lhs, rhs)


def _T(b: int, c: int, n: int) -> tuple[int, ...]:
    """T_0..T_n(b,c), drawn from a cached list sized to the next power of two."""
    size = max(64, 1 << n.bit_length())
    return seq.trinomial_list(b, c, size + 1)[: n + 1]


def _horner(terms: Iterable[int], q: int) -> int:
    """sum_{k<n} a_k q^(n-1-k) for the n terms given."""
    s = 0
    for a in terms:
        s = s * q + a
    return s


def id_1_15(n: int, m: int) -> IdentityCase:
    """d = 1 family: (1/n) sum (2k+1) T_k(2m+1, m^2+m) against a binomial sum in m."""
    if n < 1:
        raise ValueError("n >= 1 required")
    t = _T(2 * m + 1, m * m + m, n)
    lhs = Fraction(sum((2 * k + 1) * t[k] for k in range(n)), n)
    rhs = sum(math.comb(n, k + 1) * math.comb(n + k, k) * m**k for k in range(n))
    return _case("id_1_15", lhs, rhs, n=n, m=m)


def id_1_19(n: int, b: int, c: int) -> IdentityCase:
    if n < 1:
        raise ValueError("n >= 1 required")
    d = b * b - 4 * c
    t = _T(b, c, n)
    lhs = b * _horner(((2 * k + 1) * t[k] ** 2 for k in range(n)), -d)
    rhs = n * t[n] * t[n - 1]
    return _case("id_1_19", lhs, rhs, n=n, b=b, c=c)


def id_1_20(n: int, b: int, c: int) -> IdentityCase:
    """Also pins integrality: the right side is n^2 times an integer sum."""
    if n < 1:
        raise ValueError("n >= 1 required")
    d = b * b - 4 * c
    t = _T(b, c, n)
    lhs = _horner(((2 * k + 1) * t[k] ** 2 for k in range(n)), d)
    inner = sum(
        math.comb(n - 1, k) * math.comb(n + k, k) * seq.catalan(k) * c**k * d ** (n - 1 - k) for k in range(n)
    )
    return _case("id_1_20", lhs, n * n * inner, n=n, b=b, c=c)


def id_3_1(n: int, b: int, c: int) -> IdentityCase:
    if n < 1:
        raise ValueError("n >= 1 required")
    t = _T(b, c * c, n)
    lhs = 2 * c * _horner(t[:n], b - 2 * c)
    rhs = -n * t[n] + (b + 2 * c) * n * t[n - 1]
    return _case("id_3_1", lhs, rhs, n=n, b=b, c=c)


def id_3_2(n: int, b: int, c: int) -> IdentityCase:
    """Compared as reduced fractions.  c = 0 is outside the statement and rejected."""
    if n < 1:
        raise ValueError("n >= 1 required")
    if c == 0:
        raise ValueError("c must be nonzero")
    t = _T(b, c * c, n)
    q = b - 2 * c
    weighted = _horner((k * t[k] for k in range(n)), q)
    plain = _horner(t[:n], q)
    lhs = Fraction(3 * weighted, n) - plain
    rhs = Fraction((b + 4 * c) * t[n] - (b + 2 * c) ** 2 * t[n - 1], 4 * c * c)
    return _case("id_3_2", lhs, rhs, n=n, b=b, c=c)


def id_3_3(n: int, k: int) -> IdentityCase:
    if n < 1 or k < 0:
        raise ValueError("n >= 1 and k >= 0 required")
    lhs = sum((2 * m + 1) ** 2 * math.comb(m + k, 2 * k) for m in range(n))
    rhs = Fraction((4 * n * n - 1) * (n - k), 2 * k + 3) * math.comb(n + k, 2 * k)
    return _case("id_3_3", lhs, rhs, n=n, k=k)


def id_4_1(n: int, b: int, c: int) -> IdentityCase:
    if n < 0:
        raise ValueError("n >= 0 required")
    d = b * b - 4 * c
    lhs = _T(b, c, n)[n] ** 2
    rhs = sum(math.comb(n + k, 2 * k) * math.comb(2 * k, k) ** 2 * c**k * d ** (n - k) for k in range(n + 1))
    return _case("id_4_1", lhs, rhs, n=n, b=b, c=c)


def id_s2_thm31(n: int, x: int) -> IdentityCase:
    if n < 0:
        raise ValueError("n >= 0 required")
    w = x * (x + 1)
    lhs = sum(math.comb(n + k, 2 * k) * math.comb(2 * k, k) ** 2 * w**k for k in range(n + 1))
    rhs = seq.delannoy_D(n, x) ** 2
    return _case("id_s2_thm31", lhs, rhs, n=n, x=x)


def id_4_2(n: int, k: int) -> IdentityCase:
    if n < 1 or k < 0:
        raise ValueError("n >= 1 and k >= 0 required")
    lhs = sum((2 * m + 1) * math.comb(m + k, 2 * k) for m in range(n))
    rhs = Fraction(n * (n - k), k + 1) * math.comb(n + k, 2 * k)
    return _case("id_4_2", lhs, rhs, n=n, k=k)


def id_tauraso(m: int) -> IdentityCase:
    """Both sides multiplied by 16^m, so the comparison is between integers."""
    if m < 0:
        raise ValueError("m >= 0 required")
    lhs = sum((4 * k + 1) * math.comb(2 * k, k) ** 2 * 16 ** (m - k) for k in range(m + 1))
    rhs = (2 * m + 1) ** 2 * math.comb(2 * m, m) ** 2
    return _case("id_tauraso", lhs, rhs, m=m)


def id_su2_25(n: int) -> IdentityCase:
    if n < 0:
        raise ValueError("n >= 0 required")
    lhs = sum(Fraction((-1) ** r * math.comb(2 * n, r), (2 * n + 1 - 2 * r) ** 2) for r in range(2 * n + 1))
    rhs = Fraction((-16) ** n, (2 * n + 1) ** 2 * math.comb(2 * n, n))
    return _case("id_su2_25", lhs, rhs, n=n)


def _uv(n: int, z: int) -> Fraction:
    return (2 * n + 1) * sum(Fraction(math.comb(n + k, 2 * k) * z**k, 2 * k + 1) for k in range(n + 1))


def u_seq(n: int) -> Fraction:
    return _uv(n, -2)


def v_seq(n: int) -> Fraction:
    return _uv(n, -3)


def id_un_vn(n: int) -> IdentityCase:
    """Sides are 4-tuples: (u_n, v_n, u_n + u_{n+2}, v_n + v_{n+1} + v_{n+2}) against closed forms and zeros."""
    if n < 0:
        raise ValueError("n >= 0 required")
    u = [u_seq(n + i) for i in range(3)]
    v = [v_seq(n + i) for i in range(3)]
    lhs = (u[0], v[0], u[0] + u[2], sum(v))
    rhs = ((-1) ** (n * (n - 1) // 2), jacobi(2 * n + 1, 3), 0, 0)
    return _case("id_un_vn", lhs, rhs, n=n)


def id_remark_1_1(n: int) -> IdentityCase:
    if n < 1:
        raise ValueError("n >= 1 required")
    t = _T(1, 1, n)
    lhs = Fraction(_horner(((2 * k + 1) * t[k] for k in range(n)), 3), n)
    rhs = sum(math.comb(n - 1, k) * (-1) ** (n - 1 - k) * (k + 1) * math.comb(2 * k, k) for k in range(n))
    return _case("id_remark_1_1", lhs, rhs, n=n)


# -- registry for sweeps ---------------------------------------------------------


@dataclass(frozen=True)
class IdentityFamily:
    """An id_* function plus how to enumerate its instances for n up to nmax."""

    id: str
    fn: Callable[..., IdentityCase]
    instances: Callable[[Grid, int], Iterable[tuple]]


def _n_bc(lo: int, need_c: bool = False):
    def gen(grid: Grid, nmax: int):
        for b in grid.values("b"):
            for c in grid.values("c"):
                if need_c and c == 0:
                    continue
                for n in range(lo, nmax + 1):
                    yield (n, b, c)

    return gen


def _n_param(name: str, lo: int):
    def gen(grid: Grid, nmax: int):
        for v in grid.values(name):
            for n in range(lo, nmax + 1):
                yield (n, v)

    return gen


def _n_only(lo: int):
    def gen(grid: Grid, nmax: int):
        for n in range(lo, nmax + 1):
            yield (n,)

    return gen


def _n_k(grid: Grid, nmax: int):
    for n in range(1, nmax + 1):
        for k in range(n + 2):
            yield (n, k)


IDENTITIES = (
    IdentityFamily("id_1_15", id_1_15, _n_param("m", 1)),
    IdentityFamily("id_1_19", id_1_19, _n_bc(1)),
    IdentityFamily("id_1_20", id_1_20, _n_bc(1)),
    IdentityFamily("id_3_1", id_3_1, _n_bc(1)),
    IdentityFamily("id_3_2", id_3_2, _n_bc(1, need_c=True)),
    IdentityFamily("id_3_3", id_3_3, _n_k),
    IdentityFamily("id_4_1", id_4_1, _n_bc(0)),
    IdentityFamily("id_4_2", id_4_2, _n_k),
    IdentityFamily("id_remark_1_1", id_remark_1_1, _n_only(1)),
    IdentityFamily("id_s2_thm31", id_s2_thm31, _n_param("x", 0)),
    IdentityFamily("id_su2_25", id_su2_25, _n_only(0)),
    IdentityFamily("id_tauraso", id_tauraso, _n_only(0)),
    IdentityFamily("id_un_vn", id_un_vn, _n_only(0)),
)


# -- divisibility families -------------------------------------------------------


def _bc2(i: Mapping[str, int], n: int) -> tuple[int, ...]:
    return _T(i["b"], i["c"] ** 2, n)[:n]


def _bc(i: Mapping[str, int], n: int) -> tuple[int, ...]:
    return _T(i["b"], i["c"], n)[:n]


DIVISIBILITY = (
    DivisibilitySpec(
        "div-1.11",
        "n | sum_{k<n} T_k(b,c^2) (b-2c)^(n-1-k)",
        ("b", "c"),
        lambda i, n: list(_bc2(i, n)),
        lambda i: i["b"] - 2 * i["c"],
        lambda n: n,
    ),
    DivisibilitySpec(
        "div-1.12",
        "n | 6 sum_{k<n} k T_k(b,c^2) (b-2c)^(n-1-k)",
        ("b", "c"),
        lambda i, n: [k * v for k, v in enumerate(_bc2(i, n))],
        lambda i: i["b"] - 2 * i["c"],
        lambda n: n,
        scale=6,
    ),
    DivisibilitySpec(
        "div-1.18",
        "n | sum_{k<n} (2k+1) T_k(b,c)^2 (-d)^(n-1-k)",
        ("b", "c"),
        lambda i, n: [(2 * k + 1) * v * v for k, v in enumerate(_bc(i, n))],
        lambda i: -(i["b"] ** 2 - 4 * i["c"]),
        lambda n: n,
    ),
    DivisibilitySpec(
        "div-1.20",
        "n^2 | sum_{k<n} (2k+1) T_k(b,c)^2 d^(n-1-k)",
        ("b", "c"),
        lambda i, n: [(2 * k + 1) * v * v for k, v in enumerate(_bc(i, n))],
        lambda i: i["b"] ** 2 - 4 * i["c"],
        lambda n: n * n,
    ),
)

DIVISIBILITY_BY_ID = {s.id: s for s in DIVISIBILITY}
IDENTITY_BY_ID = {f.id: f for f in IDENTITIES}


def check_divisibility(family_id: str, n: int, b: int, c: int) -> IdentityCase:
    """Residue of the designated sum modulo the designated modulus (passes when 0)."""
    spec = DIVISIBILITY_BY_ID[family_id]
    inst = {"b": b, "c": c}
    total = spec.prefix_sums(inst, n)[n - 1]
    return _case(family_id, total % spec.modulus(n), 0, b=b, c=c, n=n)


def identity_ids() -> list[str]:
    return sorted([*IDENTITY_BY_ID, *DIVISIBILITY_BY_ID])


def _identity_task(task) -> list[CheckOutcome]:
    ident, grid, nmax = task
    if ident in DIVISIBILITY_BY_ID:
        spec = DIVISIBILITY_BY_ID[ident]
        return [o for inst in spec.instances_for(grid) for o in spec.check(inst, nmax)]
    fam = IDENTITY_BY_ID[ident]
    return [fam.fn(*args).outcome() for args in fam.instances(grid, nmax)]


def run_identities(ids: Sequence[str], nmax: int, grid: Grid, workers: int = 1) -> list[CheckOutcome]:
    chosen = match_ids(ids, identity_ids())
    chunks = fan_out(_identity_task, [(i, grid, nmax) for i in chosen], workers)
    out = [o for ch in chunks for o in ch]
    out.sort(key=CheckOutcome.sort_key)
    return out
