"""Registry of proven congruences and the engine that sweeps them.

Each entry reads "U * S == p^j * R (mod p^(e+j))": U is a unit factor kept
on the left, S a finite sum computed in Z/p^(e+j), R a closed form lifted
to Z/p^e.  Nothing is ever divided by p.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from . import sequences as seq
from .arith import jacobi as J
from .arith import to_residue
from .claims import (
    C2,
    INV_ODD,
    INV_SQ,
    Case,
    Cat,
    CheckOutcome,
    Condition,
    CongruenceSpec,
    D,
    Grid,
    H,
    M,
    SeriesSum,
    T,
    check_instance,
    check_spec_at_prime,
    evaluate_mod,
    poly,
)
from .runner import fan_out, match_ids
from .sequences import SeqParams, euler_number, fermat_quotient


def _d(i):
    return i["b"] ** 2 - 4 * i["c"]


def _not_div(label, value):
    return Condition(f"p does not divide {label}", lambda p, i: value(p, i) % p != 0)


def _half(p):
    return (p - 1) // 2


def _delannoy_params(i):
    """b = 2m+1, c = m^2+m, the d = 1 family."""
    m = i["m"]
    return 2 * m + 1, m * m + m


def _single(rhs, e, j=0, label=""):
    return (Case(rhs, e, j, label=label),)


# -- entries with custom evaluators --------------------------------------------


def _lem22_instances(p: int, grid: Grid) -> Iterable[dict]:
    h = p // 2
    idx = sorted({n for n in (0, 1, 2, 3, h - 1, h, h + 1, h + 2, p - 3, p - 2, p - 1) if 0 <= n < p})
    for bc in grid.product(("b", "c")):
        for n in idx:
            yield dict(bc, n=n)


def _lem22_rhs(p, i, m):
    d = _d(i)
    t = seq.trinomial_mod(i["b"], i["c"], p, 1, p)[p - 1 - i["n"]]
    return J(d, p) * pow(d, i["n"], p) * t


def _lem22_exact_rhs(p, i):
    d = _d(i)
    return J(d, p) * d ** i["n"] * seq.trinomial_T(p - 1 - i["n"], SeqParams(i["b"], i["c"]))


def _s1_instances(p: int, grid: Grid) -> Iterable[dict]:
    for k in range(_half(p) + 1):
        yield {"k": k}


def _lem43_rhs(p, i, m):
    d = _d(i)
    h = _half(p)
    z = Fraction(-i["c"], d)
    lead = pow(to_residue(Fraction(16 * i["c"], d), m), h, m)
    low = evaluate_mod(SeriesSum((C2(), INV_ODD), 0, h - 1, z), p, 3)
    high = evaluate_mod(SeriesSum((C2(), INV_ODD), h + 1, p - 1, z), p, 3)
    return lead + p * (low + high)


def builtin_registry() -> list[CongruenceSpec]:
    """Every proven congruence the lab checks, in a fixed order."""
    specs = [
        CongruenceSpec(
            "eq1.1",
            "sum_{k<p} T_k(b,c)/m^k == ((m-b)^2-4c / p) (mod p)",
            ("b", "c", "m"),
            _single(lambda p, i, m: J((i["m"] - i["b"]) ** 2 - 4 * i["c"], p), 1),
            lhs=lambda p, i: SeriesSum((T(i["b"], i["c"]),), 0, p - 1, Fraction(1, i["m"])),
            conditions=(_not_div("m", lambda p, i: i["m"]),),
        ),
        CongruenceSpec(
            "eq1.2",
            "2c sum_{k<p} M_k(b,c)/m^k == (m-b)^2 - ((m-b)^2-4c)((m-b)^2-4c / p) (mod p)",
            ("b", "c", "m"),
            _single(
                lambda p, i, m: (i["m"] - i["b"]) ** 2
                - ((i["m"] - i["b"]) ** 2 - 4 * i["c"]) * J((i["m"] - i["b"]) ** 2 - 4 * i["c"], p),
                1,
            ),
            lhs=lambda p, i: SeriesSum((M(i["b"], i["c"]),), 0, p - 1, Fraction(1, i["m"]), 2 * i["c"]),
            conditions=(_not_div("m", lambda p, i: i["m"]),),
        ),
        CongruenceSpec(
            "eq1.3",
            "sum_{k<p} T_k(b,c)^2/d^k == (cd / p) (mod p)",
            ("b", "c"),
            _single(lambda p, i, m: J(i["c"] * _d(i), p), 1),
            lhs=lambda p, i: SeriesSum((T(i["b"], i["c"], 2),), 0, p - 1, Fraction(1, _d(i))),
            conditions=(_not_div("d", lambda p, i: _d(i)),),
        ),
        CongruenceSpec(
            "eq1.4",
            "sum_{k<p} T_k(b,c^2)^2/(b-2c)^(2k) == (-c^2 / p) (mod p)",
            ("b", "c"),
            _single(lambda p, i, m: J(-i["c"] ** 2, p), 1),
            lhs=lambda p, i: SeriesSum((T(i["b"], i["c"] ** 2, 2),), 0, p - 1, Fraction(1, (i["b"] - 2 * i["c"]) ** 2)),
            conditions=(_not_div("b-2c", lambda p, i: i["b"] - 2 * i["c"]),),
        ),
        CongruenceSpec(
            "eq1.5",
            "sum_{k<p} T_k(b,c) M_k(b,c)/d^k == 0 (mod p)",
            ("b", "c"),
            _single(lambda p, i, m: 0, 1),
            lhs=lambda p, i: SeriesSum((T(i["b"], i["c"]), M(i["b"], i["c"])), 0, p - 1, Fraction(1, _d(i))),
            conditions=(_not_div("c", lambda p, i: i["c"]), _not_div("d", lambda p, i: _d(i))),
        ),
        CongruenceSpec(
            "eq1.6",
            "sum_{k<p} T_k(b,c^2) M_k(b,c^2)/(b-2c)^(2k) == 4b/(b+2c) (D / p) (mod p)",
            ("b", "c"),
            _single(lambda p, i, m: Fraction(4 * i["b"], i["b"] + 2 * i["c"]) * J(i["b"] ** 2 - 4 * i["c"] ** 2, p), 1),
            lhs=lambda p, i: SeriesSum(
                (T(i["b"], i["c"] ** 2), M(i["b"], i["c"] ** 2)), 0, p - 1, Fraction(1, (i["b"] - 2 * i["c"]) ** 2)
            ),
            conditions=(
                _not_div("c", lambda p, i: i["c"]),
                _not_div("D", lambda p, i: i["b"] ** 2 - 4 * i["c"] ** 2),
            ),
        ),
        CongruenceSpec(
            "eq1.9",
            "sum_{k<p} D_k(x)^2 == (x(x+1) / p) (mod p)",
            ("x",),
            _single(lambda p, i, m: J(i["x"] * (i["x"] + 1), p), 1),
            lhs=lambda p, i: SeriesSum((D(i["x"], 2),), 0, p - 1),
        ),
        CongruenceSpec(
            "eq1.13",
            "2c sum_{k<p} T_k(b,c^2)/(b-2c)^k == p(-b + (b+2c)(b^2-4c^2 / p)) (mod p^2)",
            ("b", "c"),
            _single(lambda p, i, m: -i["b"] + (i["b"] + 2 * i["c"]) * J(i["b"] ** 2 - 4 * i["c"] ** 2, p), 1, 1),
            lhs=lambda p, i: SeriesSum((T(i["b"], i["c"] ** 2),), 0, p - 1, Fraction(1, i["b"] - 2 * i["c"]), 2 * i["c"]),
            conditions=(_not_div("b-2c", lambda p, i: i["b"] - 2 * i["c"]),),
        ),
        CongruenceSpec(
            "eq1.14",
            "12c^2 sum_{k<p} k T_k(b,c^2)/(b-2c)^k == p((b+2c)^2(1-(D/p)) - 4c^2) (mod p^2)",
            ("b", "c"),
            _single(
                lambda p, i, m: (i["b"] + 2 * i["c"]) ** 2 * (1 - J(i["b"] ** 2 - 4 * i["c"] ** 2, p)) - 4 * i["c"] ** 2,
                1,
                1,
            ),
            lhs=lambda p, i: SeriesSum(
                (poly(0, 1), T(i["b"], i["c"] ** 2)), 0, p - 1, Fraction(1, i["b"] - 2 * i["c"]), 12 * i["c"] ** 2
            ),
            conditions=(_not_div("b-2c", lambda p, i: i["b"] - 2 * i["c"]),),
        ),
        CongruenceSpec(
            "eq1.16",
            "d=1: sum_{k<p} (2k+1) T_k(b,c) == p + (b+1)/(b-1) p (((b+1)/2)^(p-1) - 1) (mod p^3)",
            ("m",),
            _single(
                lambda p, i, m: p + Fraction(i["m"] + 1, i["m"]) * p * ((i["m"] + 1) ** (p - 1) - 1),
                3,
            ),
            lhs=lambda p, i: SeriesSum((poly(1, 2), T(*_delannoy_params(i))), 0, p - 1),
            conditions=(_not_div("2m", lambda p, i: 2 * i["m"]),),
        ),
        CongruenceSpec(
            "eq1.17",
            "d=1: sum_{k<p} (2k+1)^2 T_k(b,c) == (1/m)(-m / p) (mod p)",
            ("m",),
            _single(lambda p, i, m: Fraction(J(-i["m"], p), i["m"]), 1),
            lhs=lambda p, i: SeriesSum((poly(1, 4, 4), T(*_delannoy_params(i))), 0, p - 1),
            conditions=(_not_div("2m", lambda p, i: 2 * i["m"]),),
        ),
        CongruenceSpec(
            "eq1.21",
            "sum_{k<p} (2k+1) T_k(b,c)^2/d^k == p^2 (1 + (b^2/c)((d/p)-1)/2) (mod p^3)",
            ("b", "c"),
            _single(lambda p, i, m: 1 + Fraction(i["b"] ** 2, i["c"]) * ((J(_d(i), p) - 1) // 2), 1, 2),
            lhs=lambda p, i: SeriesSum((poly(1, 2), T(i["b"], i["c"], 2)), 0, p - 1, Fraction(1, _d(i))),
            conditions=(
                Condition("c != 0", lambda p, i: i["c"] != 0),
                _not_div("d", lambda p, i: _d(i)),
                _not_div("c", lambda p, i: i["c"]),
            ),
        ),
        CongruenceSpec(
            "eq1.21-pc",
            "p | c != 0: sum_{k<p} (2k+1) T_k(b,c)^2/d^k == p^2 (mod p^3)",
            ("b", "c"),
            _single(lambda p, i, m: 1, 1, 2),
            lhs=lambda p, i: SeriesSum((poly(1, 2), T(i["b"], i["c"], 2)), 0, p - 1, Fraction(1, _d(i))),
            conditions=(
                Condition("c != 0", lambda p, i: i["c"] != 0),
                _not_div("d", lambda p, i: _d(i)),
                Condition("p divides c", lambda p, i: i["c"] % p == 0),
            ),
        ),
        CongruenceSpec(
            "eq1.22",
            "sum_{k<p} T_k(6,-3)^2/48^k == (-1/p) + (p^2/3) E_{p-3} (mod p^3)",
            (),
            _single(lambda p, i, m: J(-1, p) + Fraction(p * p, 3) * euler_number(p - 3), 3),
            lhs=lambda p, i: SeriesSum((T(6, -3, 2),), 0, p - 1, Fraction(1, 48)),
            min_prime=5,
        ),
        CongruenceSpec(
            "eq1.23",
            "sum_{k<p} T_k(2,-1)^2/8^k == (-2/p) (mod p^2)",
            (),
            _single(lambda p, i, m: J(-2, p), 2),
            lhs=lambda p, i: SeriesSum((T(2, -1, 2),), 0, p - 1, Fraction(1, 8)),
            min_prime=5,
        ),
        CongruenceSpec(
            "eq1.24",
            "sum_{k<p} T_k(2,-3)^2/16^k == (p/3) (mod p^2)",
            (),
            _single(lambda p, i, m: J(p, 3), 2),
            lhs=lambda p, i: SeriesSum((T(2, -3, 2),), 0, p - 1, Fraction(1, 16)),
            min_prime=5,
        ),
        CongruenceSpec(
            "eq1.25",
            "sum_{0<k<p} D_k^2/k^2 == -2 q_p(2)^2 (mod p)",
            (),
            _single(lambda p, i, m: -2 * fermat_quotient(p) ** 2, 1),
            lhs=lambda p, i: SeriesSum((D(1, 2), INV_SQ), 1, p - 1),
            min_prime=5,
        ),
        CongruenceSpec(
            "lem2.1a",
            "sum_{k<=(p-1)/2} C(2k,k)/m^k == (m(m-4) / p) (mod p)",
            ("m",),
            _single(lambda p, i, m: J(i["m"] * (i["m"] - 4), p), 1),
            lhs=lambda p, i: SeriesSum((C2(),), 0, _half(p), Fraction(1, i["m"])),
            conditions=(_not_div("m", lambda p, i: i["m"]),),
        ),
        CongruenceSpec(
            "lem2.1b",
            "sum_{k<=(p-1)/2} Cat_k/m^k == m/2 - (m-4)/2 (m(m-4) / p) (mod p)",
            ("m",),
            _single(lambda p, i, m: Fraction(i["m"], 2) - Fraction(i["m"] - 4, 2) * J(i["m"] * (i["m"] - 4), p), 1),
            lhs=lambda p, i: SeriesSum((Cat(),), 0, _half(p), Fraction(1, i["m"])),
            conditions=(_not_div("m", lambda p, i: i["m"]),),
        ),
        CongruenceSpec(
            "lem2.2",
            "T_n(b,c) == (d/p) d^n T_{p-1-n}(b,c) (mod p), n < p, if p does not divide d or p/2 < n",
            ("b", "c", "n"),
            _single(_lem22_rhs, 1),
            lhs_mod=lambda p, i, e: seq.trinomial_mod(i["b"], i["c"], p, e, p)[i["n"]],
            lhs_exact=lambda p, i: seq.trinomial_T(i["n"], SeqParams(i["b"], i["c"])),
            conditions=(
                Condition("p does not divide d, or p/2 < n < p", lambda p, i: _d(i) % p != 0 or p < 2 * i["n"] < 2 * p),
            ),
            instances=_lem22_instances,
        ),
        CongruenceSpec(
            "lem2.3",
            "u_p(A,B) == (A^2-4B / p) (mod p)",
            ("A", "B"),
            _single(lambda p, i, m: J(i["A"] ** 2 - 4 * i["B"], p), 1),
            lhs_mod=lambda p, i, e: seq.lucas_mod(i["A"], i["B"], p**e, p),
            lhs_exact=lambda p, i: seq.lucas_u(p, seq.LucasParams(i["A"], i["B"])),
        ),
        CongruenceSpec(
            "lem2.4a",
            "T_p(b,c) == b (mod p)",
            ("b", "c"),
            _single(lambda p, i, m: i["b"], 1),
            lhs_mod=lambda p, i, e: seq.trinomial_mod(i["b"], i["c"], p, e, p + 2)[p],
            lhs_exact=lambda p, i: seq.trinomial_T(p, SeqParams(i["b"], i["c"])),
        ),
        CongruenceSpec(
            "lem2.4b",
            "T_{p+1}(b,c) == b^2 (mod p)",
            ("b", "c"),
            _single(lambda p, i, m: i["b"] ** 2, 1),
            lhs_mod=lambda p, i, e: seq.trinomial_mod(i["b"], i["c"], p, e, p + 2)[p + 1],
            lhs_exact=lambda p, i: seq.trinomial_T(p + 1, SeqParams(i["b"], i["c"])),
        ),
        CongruenceSpec(
            "lem2.4c",
            "T_{p-1}(b,c) == (b^2-4c / p) (mod p)",
            ("b", "c"),
            _single(lambda p, i, m: J(_d(i), p), 1),
            lhs_mod=lambda p, i, e: seq.trinomial_mod(i["b"], i["c"], p, e, p + 2)[p - 1],
            lhs_exact=lambda p, i: seq.trinomial_T(p - 1, SeqParams(i["b"], i["c"])),
        ),
        CongruenceSpec(
            "lem4.3",
            "sum_{k<p} T_k(b,c)^2/d^k == (16c/d)^((p-1)/2) + p sum_{k != (p-1)/2} C(2k,k)/(2k+1) (-c/d)^k (mod p^3)",
            ("b", "c"),
            _single(_lem43_rhs, 3),
            lhs=lambda p, i: SeriesSum((T(i["b"], i["c"], 2),), 0, p - 1, Fraction(1, _d(i))),
            conditions=(_not_div("d", lambda p, i: _d(i)),),
            min_prime=5,
        ),
        CongruenceSpec(
            "aux-morley",
            "C(p-1,(p-1)/2) == (-1)^((p-1)/2) 4^(p-1) (mod p^3)",
            (),
            _single(lambda p, i, m: (-1) ** _half(p) * pow(4, p - 1, m), 3),
            lhs_mod=lambda p, i, e: math.comb(p - 1, _half(p)) % p**e,
            lhs_exact=lambda p, i: math.comb(p - 1, _half(p)),
            min_prime=5,
        ),
        CongruenceSpec(
            "aux-wolstenholme2a",
            "H^(2)_{p-1} == 0 (mod p)",
            (),
            _single(lambda p, i, m: 0, 1),
            lhs_mod=lambda p, i, e: seq.harmonic_table(p, e, p, 2)[p - 1],
            lhs_exact=lambda p, i: seq.harmonic(p - 1, 2),
            min_prime=5,
        ),
        CongruenceSpec(
            "aux-wolstenholme2b",
            "H^(2)_{(p-1)/2} == 0 (mod p)",
            (),
            _single(lambda p, i, m: 0, 1),
            lhs_mod=lambda p, i, e: seq.harmonic_table(p, e, p, 2)[_half(p)],
            lhs_exact=lambda p, i: seq.harmonic(_half(p), 2),
            min_prime=5,
        ),
        CongruenceSpec(
            "aux-s1-l22",
            "n=(p-1)/2, 0<=k<=n: C(n+k,2k) == C(2k,k)/(-16)^k (mod p^2)",
            ("k",),
            _single(lambda p, i, m: Fraction(math.comb(2 * i["k"], i["k"]), (-16) ** i["k"]), 2),
            lhs_mod=lambda p, i, e: math.comb(_half(p) + i["k"], 2 * i["k"]) % p**e,
            lhs_exact=lambda p, i: math.comb(_half(p) + i["k"], 2 * i["k"]),
            instances=_s1_instances,
        ),
        CongruenceSpec(
            "aux-su3-l21",
            "sum_{0<k<p} Cat_k/m^k == (m-4)/2 (1 - (m(m-4) / p)) (mod p)",
            ("m",),
            _single(lambda p, i, m: Fraction(i["m"] - 4, 2) * (1 - J(i["m"] * (i["m"] - 4), p)), 1),
            lhs=lambda p, i: SeriesSum((Cat(),), 1, p - 1, Fraction(1, i["m"])),
            conditions=(_not_div("m", lambda p, i: i["m"]),),
        ),
        CongruenceSpec(
            "aux-su2-14",
            "sum_{k<=(p-3)/2} C(2k,k)/((2k+1) 16^k) == 0 (mod p^2)",
            (),
            _single(lambda p, i, m: 0, 2),
            lhs=lambda p, i: SeriesSum((C2(), INV_ODD), 0, _half(p) - 1, Fraction(1, 16)),
            min_prime=5,
        ),
        CongruenceSpec(
            "aux-su2-15",
            "sum_{(p+1)/2<=k<p} C(2k,k)/((2k+1) 16^k) == (p/3) E_{p-3} (mod p^2)",
            (),
            _single(lambda p, i, m: Fraction(p, 3) * euler_number(p - 3), 2),
            lhs=lambda p, i: SeriesSum((C2(), INV_ODD), _half(p) + 1, p - 1, Fraction(1, 16)),
            min_prime=5,
        ),
        CongruenceSpec(
            "aux-mt",
            "sum_{0<k<p} (-2)^k C(2k,k)/k^2 == -2 q_p(2)^2 (mod p)",
            (),
            _single(lambda p, i, m: -2 * fermat_quotient(p) ** 2, 1),
            lhs=lambda p, i: SeriesSum((C2(), INV_SQ), 1, p - 1, -2),
            min_prime=5,
        ),
        CongruenceSpec(
            "aux-r41a",
            "sum_{0<k<p} (-2)^k Cat_k == -4p q_p(2) (mod p^3)",
            (),
            _single(lambda p, i, m: -4 * p * fermat_quotient(p), 3),
            lhs=lambda p, i: SeriesSum((Cat(),), 1, p - 1, -2),
            min_prime=5,
        ),
        CongruenceSpec(
            "aux-r41b",
            "sum_{0<k<p} (-2)^k Cat_k H^(2)_k == 2 q_p(2)^2 (mod p)",
            (),
            _single(lambda p, i, m: 2 * fermat_quotient(p) ** 2, 1),
            lhs=lambda p, i: SeriesSum((Cat(), H(2)), 1, p - 1, -2),
            min_prime=5,
        ),
        CongruenceSpec(
            "aux-r41c",
            "sum_{k<p} (2k+1) D_k^2 == p^2 - 4p^3 q_p(2) - 2p^4 q_p(2)^2 (mod p^5)",
            (),
            _single(
                lambda p, i, m: p**2 - 4 * p**3 * fermat_quotient(p) - 2 * p**4 * fermat_quotient(p) ** 2,
                5,
            ),
            lhs=lambda p, i: SeriesSum((poly(1, 2), D(1, 2)), 0, p - 1),
            min_prime=5,
        ),
        CongruenceSpec(
            "rem2.1",
            "sum_{k<p} T_k^2/9^k == (-1/p) (mod p)",
            (),
            _single(lambda p, i, m: J(-1, p), 1),
            lhs=lambda p, i: SeriesSum((T(1, 1, 2),), 0, p - 1, Fraction(1, 9)),
            min_prime=5,
        ),
        CongruenceSpec(
            "rem1.1b",
            "b^2-4c=1, p does not divide c: sum_{k<p} (2k+1) T_k(b,c) == p (mod p^2)",
            ("m",),
            _single(lambda p, i, m: 1, 1, 1),
            lhs=lambda p, i: SeriesSum((poly(1, 2), T(*_delannoy_params(i))), 0, p - 1),
            conditions=(_not_div("c", lambda p, i: _delannoy_params(i)[1]),),
        ),
    ]
    return specs


@lru_cache(maxsize=1)
def registry_by_id() -> dict[str, CongruenceSpec]:
    return {s.id: s for s in builtin_registry()}


def _prime_task(task) -> list[CheckOutcome]:
    spec_id, p, grid = task
    return check_spec_at_prime(registry_by_id()[spec_id], p, grid)


def run_registry(
    ids: Sequence[str],
    primes: Iterable[int],
    grid: Grid,
    workers: int = 1,
    specs: dict[str, CongruenceSpec] | None = None,
) -> list[CheckOutcome]:
    """Evaluate every (spec, p, instance) selected; output sorted by (id, p, instance).

    ``ids`` are exact ids or glob patterns.  Skipped instances are kept.
    """
    table = registry_by_id() if specs is None else specs
    chosen = match_ids(ids, table)
    primes = list(primes)
    tasks = [(sid, p, grid) for sid in chosen for p in primes]
    if specs is None:
        results = fan_out(_prime_task, tasks, workers)
    else:
        results = [check_spec_at_prime(table[sid], p, g) for sid, p, g in tasks]
    out = [o for chunk in results for o in chunk]
    out.sort(key=CheckOutcome.sort_key)
    return out


__all__ = [
    "builtin_registry",
    "registry_by_id",
    "run_registry",
    "check_instance",
]
