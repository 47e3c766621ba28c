"""Exact and modular arithmetic: residues mod p^e, Jacobi symbols, primes, binomials.

Integers are plain Python ``int`` and rationals are ``fractions.Fraction``;
both are arbitrary precision and always reduced.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

Rational = Union[int, Fraction]

MAX_EXPONENT = 5


class NotInvertible(ArithmeticError):
    """Raised when a residue shares a factor with the modulus."""


class DenominatorNotInvertible(NotInvertible):
    """Raised when a sum needs 1/j for some j divisible by p."""


def jacobi(a: int, n: int) -> int:
    """Jacobi symbol (a/n) for odd n >= 1, by binary quadratic reciprocity."""
    if n <= 0 or n % 2 == 0:
        raise ValueError(f"jacobi needs odd positive n, got {n}")
    a %= n
    result = 1
    while a:
        tz = (a & -a).bit_length() - 1
        a >>= tz
        if tz & 1 and n % 8 in (3, 5):
            result = -result
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a, n = n % a, a
    return result if n == 1 else 0


def exact_divide(a: int, b: int) -> int:
    q, r = divmod(a, b)
    if r:
        raise ArithmeticError(f"{b} does not divide {a}")
    return q


def binomial(n: int, k: int) -> int:
    """C(n, k) for integer n (negative n via the falling factorial)."""
    if k < 0:
        return 0
    if n >= 0:
        return math.comb(n, k) if k <= n else 0
    # C(-m, k) = (-1)^k C(m+k-1, k)
    return (-1) ** k * math.comb(-n + k - 1, k)


def to_residue(value: Rational, modulus: int) -> int:
    """Map an integer or a rational with unit denominator into [0, modulus)."""
    if isinstance(value, Fraction):
        try:
            inv = pow(value.denominator, -1, modulus)
        except ValueError:
            raise NotInvertible(f"{value.denominator} is not a unit mod {modulus}") from None
        return value.numerator * inv % modulus
    return value % modulus


_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for n < 3.3e24."""
    if n < 2:
        return False
    for q in _MR_BASES:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def sieve_primes(limit: int) -> list[int]:
    """All primes <= limit, ascending (sieve of Eratosthenes)."""
    if limit < 2:
        return []
    flags = bytearray([1]) * (limit + 1)
    flags[0] = flags[1] = 0
    for i in range(2, math.isqrt(limit) + 1):
        if flags[i]:
            flags[i * i :: i] = bytes(len(range(i * i, limit + 1, i)))
    return [i for i, f in enumerate(flags) if f]


def odd_primes(lo: int, hi: int) -> list[int]:
    return [p for p in sieve_primes(hi) if p >= max(lo, 3)]


@dataclass(frozen=True)
class ResidueRing:
    """Z/p^e for an odd prime p and 1 <= e <= 5."""

    p: int
    e: int = 1

    def __post_init__(self):
        if self.p < 3 or not is_prime(self.p):
            raise ValueError(f"modulus base must be an odd prime, got {self.p}")
        if not 1 <= self.e <= MAX_EXPONENT:
            raise ValueError(f"exponent must lie in 1..{MAX_EXPONENT}, got {self.e}")

    @property
    def modulus(self) -> int:
        return self.p**self.e

    def __call__(self, value: Rational) -> Residue:
        return Residue(self, to_residue(value, self.modulus))


@dataclass(frozen=True)
class Residue:
    ring: ResidueRing
    value: int

    def __post_init__(self):
        if not 0 <= self.value < self.ring.modulus:
            object.__setattr__(self, "value", self.value % self.ring.modulus)

    def _lift(self, other) -> int:
        if isinstance(other, Residue):
            if other.ring != self.ring:
                raise ValueError("residues from different rings")
            return other.value
        return to_residue(other, self.ring.modulus)

    def __add__(self, other):
        return Residue(self.ring, (self.value + self._lift(other)) % self.ring.modulus)

    __radd__ = __add__

    def __sub__(self, other):
        return Residue(self.ring, (self.value - self._lift(other)) % self.ring.modulus)

    def __rsub__(self, other):
        return Residue(self.ring, (self._lift(other) - self.value) % self.ring.modulus)

    def __mul__(self, other):
        return Residue(self.ring, self.value * self._lift(other) % self.ring.modulus)

    __rmul__ = __mul__

    def __neg__(self):
        return Residue(self.ring, -self.value % self.ring.modulus)

    def __pow__(self, k: int):
        if k < 0:
            return mod_inv(self) ** -k
        return Residue(self.ring, pow(self.value, k, self.ring.modulus))

    def __truediv__(self, other):
        return self * mod_inv(Residue(self.ring, self._lift(other)))

    def __eq__(self, other):
        if isinstance(other, Residue):
            return self.ring == other.ring and self.value == other.value
        if isinstance(other, (int, Fraction)):
            return self.value == to_residue(other, self.ring.modulus)
        return NotImplemented

    def __hash__(self):
        return hash((self.ring, self.value))

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"{self.value} (mod {self.ring.p}^{self.ring.e})"


def mod_inv(x: Residue) -> Residue:
    if x.value % x.ring.p == 0:
        raise NotInvertible(f"{x.value} is not a unit mod {x.ring.modulus}")
    return Residue(x.ring, pow(x.value, -1, x.ring.modulus))
