"""Declarative congruence claims and the machinery that checks them.

A claim's left side is usually a finite sum

    unit * sum_{k=lo}^{hi} (prod of factor_i(k)) * ratio^k

described by a :class:`SeriesSum`.  The same description is evaluated two
ways: in Z/p^E through cached residue tables (the fast path used by sweeps),
and over Q with definitional sequence values (the exact oracle used by the
tests).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from operator import mul
from typing import Callable, Iterable, Mapping, Sequence, Union

from . import sequences as seq
from .arith import DenominatorNotInvertible, Rational, to_residue
from .sequences import SeqParams

PASS = "pass"
FAIL = "fail"
SKIPPED = "skipped"
REPRESENTATION_MISSING = "representation-missing"
UNRESOLVED = "unresolved"
STATUSES = (PASS, FAIL, SKIPPED, REPRESENTATION_MISSING, UNRESOLVED)


class RepresentationMissing(LookupError):
    """A case split expected p to be represented by a quadratic form and it is not."""


# -- factors and sums ----------------------------------------------------------


@dataclass(frozen=True)
class Factor:
    """One multiplicative piece of a summand, as a function of the index k.

    kinds: T(b,c), M(b,c), D(x), C2 (central binomial), Cat, H(order),
    poly(c0, c1, ...) = c0 + c1 k + ..., inv_sq = 1/k^2, inv_odd = 1/(2k+1).
    """

    kind: str
    args: tuple = ()
    power: int = 1


def T(b, c, power=1):
    return Factor("T", (b, c), power)


def M(b, c, power=1):
    return Factor("M", (b, c), power)


def D(x, power=1):
    return Factor("D", (Fraction(x),), power)


def C2(power=1):
    return Factor("C2", (), power)


def Cat(power=1):
    return Factor("Cat", (), power)


def H(order=1):
    return Factor("H", (order,))


def poly(*coeffs):
    return Factor("poly", tuple(coeffs))


INV_SQ = Factor("inv_sq")
INV_ODD = Factor("inv_odd")


@dataclass(frozen=True)
class SeriesSum:
    factors: tuple[Factor, ...]
    lo: int
    hi: int
    ratio: Rational = 1
    unit: Rational = 1


def _unit_inverse_table(values: Iterable[int], p: int, m: int) -> list[int]:
    out = []
    for v in values:
        if v % p == 0:
            raise DenominatorNotInvertible(f"1/{v} needed modulo a power of {p}")
        out.append(pow(v, -1, m))
    return out


def _factor_table(f: Factor, p: int, e: int, lo: int, hi: int) -> list[int]:
    m = p**e
    n = hi + 1
    if f.kind == "T":
        base = seq.trinomial_mod(to_residue(f.args[0], m), to_residue(f.args[1], m), p, e, n)[lo:]
    elif f.kind == "M":
        base = seq.motzkin_mod(to_residue(f.args[0], m), to_residue(f.args[1], m), p, e, n)[lo:]
    elif f.kind == "D":
        base = seq.delannoy_mod(to_residue(f.args[0], m), p, e, n)[lo:]
    elif f.kind == "C2":
        base = seq.central_binom_mod(p, e, n)[lo:]
    elif f.kind == "Cat":
        base = seq.catalan_mod(p, e, n)[lo:]
    elif f.kind == "H":
        base = seq.harmonic_table(p, e, n, f.args[0])[lo:]
    elif f.kind == "poly":
        coeffs = [to_residue(c, m) for c in f.args]
        base = [sum(c * k**i for i, c in enumerate(coeffs)) % m for k in range(lo, n)]
    elif f.kind == "inv_sq":
        base = [v * v % m for v in _unit_inverse_table(range(lo, n), p, m)]
    elif f.kind == "inv_odd":
        base = _unit_inverse_table((2 * k + 1 for k in range(lo, n)), p, m)
    else:
        raise ValueError(f"unknown factor kind {f.kind!r}")
    if f.power != 1:
        base = [pow(v, f.power, m) for v in base]
    return list(base)


@lru_cache(maxsize=8192)
def _combined_table(factors: tuple[Factor, ...], p: int, e: int, lo: int, hi: int) -> tuple[int, ...]:
    m = p**e
    if hi < lo:
        return ()
    out = None
    for f in factors:
        t = _factor_table(f, p, e, lo, hi)
        out = t if out is None else [a * b % m for a, b in zip(out, t)]
    if out is None:
        out = [1] * (hi - lo + 1)
    return tuple(out)


@lru_cache(maxsize=4096)
def _powers(z: int, m: int, lo: int, hi: int) -> tuple[int, ...]:
    if hi < lo:
        return ()
    cur = pow(z, lo, m)
    out = [cur]
    for _ in range(hi - lo):
        cur = cur * z % m
        out.append(cur)
    return tuple(out)


def evaluate_mod(s: SeriesSum, p: int, e: int) -> int:
    """The sum reduced mod p^e, with every division done by a modular inverse."""
    m = p**e
    table = _combined_table(s.factors, p, e, s.lo, s.hi)
    z = to_residue(s.ratio, m)
    if z == 1:
        total = sum(table)
    else:
        total = sum(map(mul, table, _powers(z, m, s.lo, s.hi)))
    return total * to_residue(s.unit, m) % m


def _factor_exact(f: Factor, k: int) -> Rational:
    if f.kind == "T":
        v = seq.trinomial_T(k, SeqParams(*f.args))
    elif f.kind == "M":
        v = seq.motzkin_M(k, SeqParams(*f.args))
    elif f.kind == "D":
        v = seq.delannoy_D(k, f.args[0])
    elif f.kind == "C2":
        v = seq.central_binom(k)
    elif f.kind == "Cat":
        v = seq.catalan(k)
    elif f.kind == "H":
        v = seq.harmonic(k, f.args[0])
    elif f.kind == "poly":
        v = sum(Fraction(c) * k**i for i, c in enumerate(f.args))
    elif f.kind == "inv_sq":
        v = Fraction(1, k * k)
    elif f.kind == "inv_odd":
        v = Fraction(1, 2 * k + 1)
    else:
        raise ValueError(f"unknown factor kind {f.kind!r}")
    return v**f.power


def evaluate_exact(s: SeriesSum) -> Fraction:
    """The same sum over Q, from definitional sequence values."""
    z = Fraction(s.ratio)
    total = Fraction(0)
    for k in range(s.lo, s.hi + 1):
        term = z**k
        for f in s.factors:
            term *= _factor_exact(f, k)
        total += term
    return total * s.unit


# -- grids ---------------------------------------------------------------------


@dataclass(frozen=True)
class Grid:
    """Inclusive ranges for every free parameter a claim may take."""

    b: tuple[int, int] = (-4, 4)
    c: tuple[int, int] = (-4, 4)
    m: tuple[int, int] = (-4, 4)
    x: tuple[int, int] = (-4, 4)
    A: tuple[int, int] = (-4, 4)
    B: tuple[int, int] = (-4, 4)
    power: tuple[int, int] = (1, 4)

    @classmethod
    def square(cls, bound: int, power: tuple[int, int] = (1, 4)) -> Grid:
        r = (-bound, bound)
        return cls(r, r, r, r, r, r, power)

    def values(self, name: str) -> range:
        lo, hi = getattr(self, name)
        return range(lo, hi + 1)

    def product(self, names: Sequence[str]) -> Iterable[dict]:
        for combo in itertools.product(*(self.values(n) for n in names)):
            yield dict(zip(names, combo))


# -- congruence claims ---------------------------------------------------------


@dataclass(frozen=True)
class Condition:
    label: str
    holds: Callable[[int, Mapping[str, int]], bool]


@dataclass(frozen=True)
class Case:
    """One branch of a claim: U*S == p^j * R (mod p^(e+j)).

    ``rhs(p, inst, m)`` returns R as an int or a Fraction with unit
    denominator; ``m`` = p^e is supplied for evaluators that work in the ring.
    """

    rhs: Callable[[int, Mapping[str, int], int], Rational]
    e: int
    j: int = 0
    when: Callable[[int, Mapping[str, int]], bool] | None = None
    label: str = ""
    unresolved: bool = False


LhsBuilder = Callable[[int, Mapping[str, int]], Union[SeriesSum, Sequence[SeriesSum]]]


@dataclass(frozen=True)
class CongruenceSpec:
    id: str
    statement: str
    params: tuple[str, ...]
    cases: tuple[Case, ...]
    lhs: LhsBuilder | None = None
    conditions: tuple[Condition, ...] = ()
    min_prime: int = 3
    lhs_mod: Callable[[int, Mapping[str, int], int], int] | None = None
    lhs_exact: Callable[[int, Mapping[str, int]], Rational] | None = None
    instances: Callable[[int, Grid], Iterable[dict]] | None = None
    kind: str = "congruence"

    def sums(self, p: int, inst: Mapping[str, int]) -> list[SeriesSum]:
        built = self.lhs(p, inst)
        return [built] if isinstance(built, SeriesSum) else list(built)

    def evaluate_lhs(self, p: int, inst: Mapping[str, int], e: int) -> int:
        """U*S reduced mod p^e."""
        if self.lhs_mod is not None:
            return self.lhs_mod(p, inst, e) % p**e
        return sum(evaluate_mod(s, p, e) for s in self.sums(p, inst)) % p**e

    def exact_lhs(self, p: int, inst: Mapping[str, int]) -> Rational:
        if self.lhs_exact is not None:
            return self.lhs_exact(p, inst)
        return sum((evaluate_exact(s) for s in self.sums(p, inst)), Fraction(0))

    def instances_for(self, p: int, grid: Grid) -> Iterable[dict]:
        if self.instances is not None:
            return self.instances(p, grid)
        return grid.product(self.params)

    def select_case(self, p: int, inst: Mapping[str, int]) -> Case | None:
        for case in self.cases:
            if case.when is None or case.when(p, inst):
                return case
        return None


@dataclass(frozen=True)
class CheckOutcome:
    spec_id: str
    kind: str
    p: int | None
    instance: tuple[tuple[str, int], ...]
    modulus: int | None = None
    lhs: int | None = None
    rhs: int | None = None
    status: str = SKIPPED
    note: str = field(default="", compare=False)

    @property
    def passed(self) -> bool:
        return self.status == PASS

    @property
    def skipped(self) -> bool:
        return self.status == SKIPPED

    def sort_key(self):
        return (self.spec_id, self.p or 0, tuple(v for _, v in self.instance))

    def witness(self) -> str:
        where = ", ".join(f"{k}={v}" for k, v in self.instance)
        head = f"{self.spec_id} p={self.p}" if self.p is not None else self.spec_id
        return f"{head} [{where}] lhs={self.lhs} rhs={self.rhs} (mod {self.modulus}) {self.status}"


def check_instance(spec: CongruenceSpec, p: int, inst: Mapping[str, int]) -> CheckOutcome:
    """Check one (spec, p, instance) triple.

    Skips when a side condition fails or no case applies.  Otherwise
    evaluates U*S mod p^(e+j) and compares with p^j * R.  A NotInvertible
    raised here means a side condition is missing and propagates.
    """
    key = tuple((n, inst[n]) for n in inst)
    base = dict(spec_id=spec.id, kind=spec.kind, p=p, instance=key)
    if p < spec.min_prime:
        return CheckOutcome(**base, note=f"needs p >= {spec.min_prime}")
    for cond in spec.conditions:
        if not cond.holds(p, inst):
            return CheckOutcome(**base, note=cond.label)
    case = spec.select_case(p, inst)
    if case is None:
        return CheckOutcome(**base, note="no case applies")
    total = case.e + case.j
    modulus = p**total
    lhs = spec.evaluate_lhs(p, inst, total)
    try:
        r = case.rhs(p, inst, p**case.e)
    except RepresentationMissing as exc:
        return CheckOutcome(**base, modulus=modulus, lhs=lhs, status=REPRESENTATION_MISSING, note=str(exc))
    rhs = p**case.j * to_residue(r, p**case.e) % modulus
    if case.unresolved:
        status = UNRESOLVED
    else:
        status = PASS if lhs == rhs else FAIL
    return CheckOutcome(**base, modulus=modulus, lhs=lhs, rhs=rhs, status=status, note=case.label)


def check_spec_at_prime(spec: CongruenceSpec, p: int, grid: Grid) -> list[CheckOutcome]:
    return [check_instance(spec, p, inst) for inst in spec.instances_for(p, grid)]


# -- divisibility claims over all n --------------------------------------------


@dataclass(frozen=True)
class DivisibilitySpec:
    """modulus(n) | scale * sum_{k<n} a_k q^(n-1-k), for n = 1, 2, ..."""

    id: str
    statement: str
    params: tuple[str, ...]
    terms: Callable[[Mapping[str, int], int], Sequence[int]]
    ratio: Callable[[Mapping[str, int]], int]
    modulus: Callable[[int], int]
    scale: int = 1
    kind: str = "identity"
    instances: Callable[[Grid], Iterable[dict]] | None = None

    def instances_for(self, grid: Grid) -> Iterable[dict]:
        if self.instances is not None:
            return self.instances(grid)
        return grid.product(self.params)

    def prefix_sums(self, inst: Mapping[str, int], nmax: int) -> list[int]:
        """Exact S_1..S_nmax via S_{n+1} = q S_n + a_n."""
        a = self.terms(inst, nmax)
        q = self.ratio(inst)
        out, s = [], 0
        for n in range(nmax):
            s = q * s + a[n]
            out.append(self.scale * s)
        return out

    def check(self, inst: Mapping[str, int], nmax: int) -> list[CheckOutcome]:
        out = []
        for n, s in enumerate(self.prefix_sums(inst, nmax), start=1):
            mod = self.modulus(n)
            r = s % mod
            key = tuple((k, inst[k]) for k in inst) + (("n", n),)
            out.append(CheckOutcome(self.id, self.kind, None, key, mod, r, 0, PASS if r == 0 else FAIL))
        return out
