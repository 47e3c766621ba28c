"""Sequence families T_n(b,c), M_n(b,c), D_n(x) and their companions.

Every family has an exact integer evaluator and a residue-ring table
generator.  The exact evaluators use the definitional sums; the
``*_list`` helpers run the three-term recursions over Z, and the
``*_mod`` tables run the same recursions in Z/p^e, falling back to the
definitional sum whenever the divisor of a recursion step is a multiple
of p.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from operator import mul

from .arith import (
    DenominatorNotInvertible,
    Residue,
    ResidueRing,
    exact_divide,
    is_prime,
    to_residue,
)


@dataclass(frozen=True)
class SeqParams:
    b: int
    c: int

    @property
    def d(self) -> int:
        return self.b * self.b - 4 * self.c

    @property
    def D(self) -> int:
        return self.b * self.b - 4 * self.c * self.c


@dataclass(frozen=True)
class LucasParams:
    A: int
    B: int

    @property
    def delta(self) -> int:
        return self.A * self.A - 4 * self.B


# -- exact values ----------------------------------------------------------


def central_binom(n: int) -> int:
    return math.comb(2 * n, n)


def catalan(n: int) -> int:
    return exact_divide(math.comb(2 * n, n), n + 1)


def trinomial_T(n: int, params: SeqParams) -> int:
    """T_n(b,c) = sum_k C(n,2k) C(2k,k) b^(n-2k) c^k."""
    b, c = params.b, params.c
    return sum(math.comb(n, 2 * k) * math.comb(2 * k, k) * b ** (n - 2 * k) * c**k for k in range(n // 2 + 1))


def motzkin_M(n: int, params: SeqParams) -> int:
    """M_n(b,c) = sum_k C(n,2k) Cat_k b^(n-2k) c^k."""
    b, c = params.b, params.c
    return sum(math.comb(n, 2 * k) * catalan(k) * b ** (n - 2 * k) * c**k for k in range(n // 2 + 1))


def delannoy_D(n: int, x):
    """D_n(x) = sum_k C(n,k) C(n+k,k) x^k for x an int, Fraction or Residue."""
    if isinstance(x, Residue):
        m = x.ring.modulus
        v = x.value
        total = sum(math.comb(n, k) * math.comb(n + k, k) * pow(v, k, m) for k in range(n + 1))
        return Residue(x.ring, total % m)
    return sum(math.comb(n, k) * math.comb(n + k, k) * x**k for k in range(n + 1))


@lru_cache(maxsize=256)
def trinomial_list(b: int, c: int, count: int) -> tuple[int, ...]:
    """T_0..T_{count-1} over Z by (n+1)T_{n+1} = (2n+1)b T_n - d n T_{n-1}."""
    d = b * b - 4 * c
    out = [1, b][:count]
    for n in range(1, count - 1):
        out.append(exact_divide((2 * n + 1) * b * out[n] - d * n * out[n - 1], n + 1))
    return tuple(out)


@lru_cache(maxsize=256)
def motzkin_list(b: int, c: int, count: int) -> tuple[int, ...]:
    """M_0..M_{count-1} over Z by (n+3)M_{n+1} = b(2n+3)M_n - d n M_{n-1}."""
    d = b * b - 4 * c
    out = [1, b][:count]
    for n in range(1, count - 1):
        out.append(exact_divide(b * (2 * n + 3) * out[n] - d * n * out[n - 1], n + 3))
    return tuple(out)


def delannoy_list(x, count: int) -> list:
    """D_0(x)..D_{count-1}(x) through D_n(x) = T_n(2x+1, x^2+x); x may be a Fraction."""
    if isinstance(x, int):
        return list(trinomial_list(2 * x + 1, x * x + x, count))
    b = 2 * x + 1
    out = [Fraction(1), b][:count]
    for n in range(1, count - 1):
        out.append(((2 * n + 1) * b * out[n] - n * out[n - 1]) / (n + 1))
    return out


def lucas_u(n: int, params: LucasParams) -> int:
    prev, cur = 0, 1
    if n == 0:
        return 0
    for _ in range(n - 1):
        prev, cur = cur, params.A * cur - params.B * prev
    return cur


_euler_lock = threading.Lock()
_euler_even = [1]  # E_0, E_2, E_4, ...


def euler_number(n: int) -> int:
    """Euler number E_n; odd indices give 0."""
    if n < 0:
        raise ValueError("Euler numbers are indexed from 0")
    if n % 2:
        return 0
    half = n // 2
    with _euler_lock:
        while len(_euler_even) <= half:
            m = len(_euler_even)
            _euler_even.append(-sum(math.comb(2 * m, 2 * j) * e for j, e in enumerate(_euler_even)))
        return _euler_even[half]


def fermat_quotient(p: int, base: int = 2) -> int:
    if p % 2 == 0 or not is_prime(p):
        raise ValueError(f"Fermat quotient needs an odd prime, got {p}")
    return exact_divide(pow(base, p - 1) - 1, p)


def harmonic(k: int, order: int = 1) -> Fraction:
    return sum((Fraction(1, j**order) for j in range(1, k + 1)), Fraction(0))


def harmonic_mod(k: int, ring: ResidueRing) -> Residue:
    if k >= ring.p:
        raise DenominatorNotInvertible(f"H_{k} has denominators divisible by {ring.p}")
    return ring(harmonic_table(ring.p, ring.e, k + 1, 1)[k])


def harmonic2_mod(k: int, ring: ResidueRing) -> Residue:
    if k >= ring.p:
        raise DenominatorNotInvertible(f"H2_{k} has denominators divisible by {ring.p}")
    return ring(harmonic_table(ring.p, ring.e, k + 1, 2)[k])


# -- power series oracle ---------------------------------------------------


def _truncated_product(a: list[int], b: list[int], n: int) -> list[int]:
    a = a[:n] + [0] * (n - len(a[:n]))
    b = b[:n] + [0] * (n - len(b[:n]))
    return [sum(map(mul, a[: i + 1], reversed(b[: i + 1]))) for i in range(n)]


def series_T_oracle(params: SeqParams, count: int) -> list[int]:
    """First ``count`` coefficients of 1/sqrt(1 - 2bx + dx^2).

    Newton iteration g <- g(3 - f g^2)/2 on truncated series.  Each step
    doubles the number of correct coefficients, which are integers, so the
    halving is exact on the retained prefix.
    """
    f = [1, -2 * params.b, params.d]
    g = [1]
    prec = 1
    while prec < count:
        prec = min(2 * prec, count)
        fgg = _truncated_product(f, _truncated_product(g, g, prec), prec)
        corr = [3 - fgg[0]] + [-v for v in fgg[1:]]
        g = [exact_divide(v, 2) for v in _truncated_product(g, corr, prec)]
    return g[:count]


# -- residue-ring tables -----------------------------------------------------


@lru_cache(maxsize=64)
def _inverses(p: int, e: int, count: int) -> tuple[int, ...]:
    m = p**e
    return tuple(pow(i, -1, m) if i % p else 0 for i in range(count))


@lru_cache(maxsize=256)
def _even_binomials_mod(n: int, m: int) -> tuple[int, ...]:
    return tuple(math.comb(n, 2 * k) % m for k in range(n // 2 + 1))


def _direct_mod(n: int, b: int, c: int, m: int, weights: tuple[int, ...]) -> int:
    """sum_k C(n,2k) w_k b^(n-2k) c^k mod m, with w_k already reduced."""
    row = _even_binomials_mod(n, m)
    total = 0
    for k in range(n // 2 + 1):
        total += row[k] * weights[k] * pow(b, n - 2 * k, m) * pow(c, k, m)
    return total % m


@lru_cache(maxsize=4096)
def trinomial_mod(b: int, c: int, p: int, e: int, count: int) -> tuple[int, ...]:
    """T_0(b,c)..T_{count-1}(b,c) reduced mod p^e; b and c may be any residues."""
    m = p**e
    b, c = b % m, c % m
    d = (b * b - 4 * c) % m
    inv = _inverses(p, e, count + 1)
    out = [1, b][:count]
    for n in range(1, count - 1):
        if inv[n + 1]:
            out.append(((2 * n + 1) * b * out[n] - d * n * out[n - 1]) * inv[n + 1] % m)
        else:
            out.append(_direct_mod(n + 1, b, c, m, central_binom_mod(p, e, count)))
    return tuple(out)


@lru_cache(maxsize=4096)
def motzkin_mod(b: int, c: int, p: int, e: int, count: int) -> tuple[int, ...]:
    m = p**e
    b, c = b % m, c % m
    d = (b * b - 4 * c) % m
    inv = _inverses(p, e, count + 3)
    out = [1, b][:count]
    for n in range(1, count - 1):
        if inv[n + 3]:
            out.append((b * (2 * n + 3) * out[n] - d * n * out[n - 1]) * inv[n + 3] % m)
        else:
            out.append(_direct_mod(n + 1, b, c, m, catalan_mod(p, e, count)))
    return tuple(out)


def delannoy_mod(x: int, p: int, e: int, count: int) -> tuple[int, ...]:
    """D_k(x) mod p^e where x is already a residue (rational arguments pre-mapped)."""
    m = p**e
    return trinomial_mod((2 * x + 1) % m, (x * x + x) % m, p, e, count)


@lru_cache(maxsize=256)
def central_binom_mod(p: int, e: int, count: int) -> tuple[int, ...]:
    m = p**e
    inv = _inverses(p, e, count + 1)
    out = [1][:count]
    for k in range(count - 1):
        if inv[k + 1]:
            out.append(2 * (2 * k + 1) * out[k] * inv[k + 1] % m)
        else:
            out.append(central_binom(k + 1) % m)
    return tuple(out)


@lru_cache(maxsize=256)
def catalan_mod(p: int, e: int, count: int) -> tuple[int, ...]:
    m = p**e
    inv = _inverses(p, e, count + 2)
    out = [1][:count]
    for k in range(count - 1):
        if inv[k + 2]:
            out.append(2 * (2 * k + 1) * out[k] * inv[k + 2] % m)
        else:
            out.append(catalan(k + 1) % m)
    return tuple(out)


@lru_cache(maxsize=256)
def harmonic_table(p: int, e: int, count: int, order: int = 1) -> tuple[int, ...]:
    """H^(order)_0..H^(order)_{count-1} mod p^e; needs count <= p."""
    if count > p:
        raise DenominatorNotInvertible(f"harmonic sums past index {p - 1} need 1/{p}")
    m = p**e
    inv = _inverses(p, e, count)
    out = [0]
    for j in range(1, count):
        out.append((out[-1] + pow(inv[j], order, m)) % m)
    return tuple(out[:count])


def lucas_mod(A: int, B: int, m: int, n: int) -> int:
    """u_n(A,B) mod m."""
    if n == 0:
        return 0
    prev, cur = 0, 1
    for _ in range(n - 1):
        prev, cur = cur, (A * cur - B * prev) % m
    return cur % m

