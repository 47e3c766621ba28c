import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from oracles import reduce_fraction, trinomial_by_expansion
from trinolab import sequences as seq
from trinolab.arith import DenominatorNotInvertible, ResidueRing, odd_primes
from trinolab.sequences import LucasParams, SeqParams


def test_trinomial_examples():
    assert seq.trinomial_T(4, SeqParams(1, 1)) == 19 == trinomial_by_expansion(4, 1, 1)
    assert seq.trinomial_T(3, SeqParams(2, 1)) == 20 == math.comb(6, 3)
    assert all(seq.trinomial_T(0, SeqParams(b, c)) == 1 for b in range(-3, 4) for c in range(-3, 4))


def test_motzkin_examples():
    assert seq.motzkin_M(5, SeqParams(1, 1)) == 21
    assert seq.motzkin_M(2, SeqParams(2, 1)) == 5 == seq.catalan(3)
    assert all(seq.motzkin_M(1, SeqParams(b, 7)) == b for b in range(-5, 6))


def test_delannoy_examples():
    assert seq.delannoy_D(3, 1) == 63
    assert seq.delannoy_D(2, 2) == 37 == seq.trinomial_T(2, SeqParams(5, 6))
    assert all(seq.delannoy_D(n, 0) == 1 for n in range(20))
    ring = ResidueRing(7, 2)
    assert int(seq.delannoy_D(5, ring(3))) == seq.delannoy_D(5, 3) % 49


def test_catalan_and_central_binomial():
    assert seq.catalan(3) == 5 and seq.catalan(0) == 1
    assert seq.central_binom(4) == 70


def test_lucas_examples():
    assert seq.lucas_u(5, LucasParams(1, -1)) == 5
    fib = [0, 1]
    for _ in range(40):
        fib.append(fib[-1] + fib[-2])
    assert [seq.lucas_u(n, LucasParams(1, -1)) for n in range(42)] == fib
    for A in range(-4, 5):
        for B in range(-4, 5):
            assert seq.lucas_u(0, LucasParams(A, B)) == 0
            assert seq.lucas_u(1, LucasParams(A, B)) == 1
            assert seq.lucas_u(2, LucasParams(A, B)) == A


def test_euler_numbers():
    assert [seq.euler_number(n) for n in range(0, 11, 2)] == [1, -1, 5, -61, 1385, -50521]
    assert seq.euler_number(7) == 0
    # defining relation
    for n in range(1, 25):
        assert sum(math.comb(2 * n, 2 * j) * seq.euler_number(2 * j) for j in range(n + 1)) == 0


def test_fermat_quotient():
    assert [seq.fermat_quotient(p) for p in (3, 5, 7)] == [1, 3, 9]
    for bad in (2, 9, 1, -7):
        with pytest.raises(ValueError):
            seq.fermat_quotient(bad)


def test_harmonic_residues():
    assert int(seq.harmonic_mod(3, ResidueRing(5, 2))) == 6
    assert int(seq.harmonic_mod(0, ResidueRing(7, 3))) == 0
    for p in odd_primes(5, 100):
        assert int(seq.harmonic2_mod(p - 1, ResidueRing(p, 1))) == 0
    with pytest.raises(DenominatorNotInvertible):
        seq.harmonic_mod(5, ResidueRing(5, 1))
    assert seq.harmonic(4) == Fraction(25, 12)
    assert seq.harmonic(3, 2) == Fraction(49, 36)


def test_series_oracle_examples():
    assert seq.series_T_oracle(SeqParams(1, 1), 6) == [1, 1, 3, 7, 19, 51]
    assert seq.series_T_oracle(SeqParams(2, 1), 4) == [1, 2, 6, 20]
    assert seq.series_T_oracle(SeqParams(-7, 11), 1) == [1]


def test_three_way_agreement_small_grid():
    for b in range(-3, 4):
        for c in range(-3, 4):
            p = SeqParams(b, c)
            direct = [seq.trinomial_T(n, p) for n in range(80)]
            assert list(seq.trinomial_list(b, c, 80)) == direct
            assert seq.series_T_oracle(p, 80) == direct


def test_expansion_oracle_agrees():
    for b, c in [(1, 1), (3, 2), (-2, 5), (4, -3)]:
        for n in range(12):
            assert seq.trinomial_T(n, SeqParams(b, c)) == trinomial_by_expansion(n, b, c)


def test_motzkin_recursion_matches_sum():
    for b in range(-4, 5):
        for c in range(-4, 5):
            assert list(seq.motzkin_list(b, c, 60)) == [seq.motzkin_M(n, SeqParams(b, c)) for n in range(60)]


def test_delannoy_is_a_trinomial_specialisation():
    for x in range(-10, 11):
        lst = seq.trinomial_list(2 * x + 1, x * x + x, 101)
        assert [seq.delannoy_D(n, x) for n in range(101)] == list(lst)
        assert seq.delannoy_list(x, 101) == list(lst)


def test_delannoy_list_rational_argument():
    x = Fraction(-1, 4)
    assert seq.delannoy_list(x, 30) == [seq.delannoy_D(n, x) for n in range(30)]


def test_sign_symmetries():
    for b in range(-4, 5):
        for c in range(-4, 5):
            pos, neg = seq.trinomial_list(b, c, 101), seq.trinomial_list(-b, c, 101)
            assert all(neg[n] == (-1) ** n * pos[n] for n in range(101))
    for x in range(-6, 7):
        assert all((-1) ** n * seq.delannoy_D(n, x) == seq.delannoy_D(n, -x - 1) for n in range(60))


def test_classical_specialisations():
    t21 = seq.trinomial_list(2, 1, 201)
    m21 = seq.motzkin_list(2, 1, 201)
    t32 = seq.trinomial_list(3, 2, 201)
    for n in range(201):
        assert t21[n] == seq.central_binom(n)
        assert m21[n] == seq.catalan(n + 1)
        assert t32[n] == seq.delannoy_D(n, 1)


def test_square_discriminant_reduces_to_delannoy():
    checked = 0
    for b in range(-12, 13):
        for c in range(-12, 13):
            d = b * b - 4 * c
            s = math.isqrt(d) if d > 0 else 0
            if s == 0 or s * s != d:
                continue
            for root in (s, -s):
                if b % root or (b // root - 1) % 2:
                    continue
                x = (b // root - 1) // 2
                t = seq.trinomial_list(b, c, 101)
                assert all(t[n] == root**n * seq.delannoy_D(n, x) for n in range(101))
                checked += 1
    assert checked > 20


def test_residue_tables_match_exact_values():
    for p in odd_primes(3, 200):
        for e in (1, 2, 3):
            m = p**e
            for b, c in [(1, 1), (3, 2), (-2, 5), (6, -3), (0, 4)]:
                exact_t = seq.trinomial_list(b, c, p)
                exact_m = seq.motzkin_list(b, c, p)
                assert seq.trinomial_mod(b, c, p, e, p) == tuple(v % m for v in exact_t)
                assert seq.motzkin_mod(b, c, p, e, p) == tuple(v % m for v in exact_m)
            for x in (-3, 1, 2):
                assert seq.delannoy_mod(x % m, p, e, p) == tuple(v % m for v in seq.delannoy_list(x, p))


def test_residue_tables_cross_multiples_of_p():
    # indices p-1..2p+2 hit the fallback where the recursion divisor is a multiple of p
    for p in (3, 5, 7, 11):
        for e in (1, 2, 3):
            m = p**e
            n = 2 * p + 4
            assert seq.trinomial_mod(1, 1, p, e, n) == tuple(v % m for v in seq.trinomial_list(1, 1, n))
            assert seq.motzkin_mod(2, -1, p, e, n) == tuple(v % m for v in seq.motzkin_list(2, -1, n))
            assert seq.catalan_mod(p, e, n) == tuple(seq.catalan(k) % m for k in range(n))
            assert seq.central_binom_mod(p, e, n) == tuple(seq.central_binom(k) % m for k in range(n))


def test_rational_delannoy_residues():
    p, e = 13, 2
    m = p**e
    x = Fraction(1, 8)
    table = seq.delannoy_mod(reduce_fraction(x, m), p, e, p)
    assert table == tuple(reduce_fraction(v, m) for v in seq.delannoy_list(x, p))


@settings(max_examples=40, deadline=None)
@given(st.integers(-50, 50), st.integers(-50, 50), st.integers(0, 60))
def test_recursion_reproduces_sum_random(b, c, n):
    assert seq.trinomial_list(b, c, n + 1)[n] == seq.trinomial_T(n, SeqParams(b, c))
    assert seq.motzkin_list(b, c, n + 1)[n] == seq.motzkin_M(n, SeqParams(b, c))


def test_params_derived_fields():
    p = SeqParams(3, 2)
    assert (p.d, p.D) == (1, -7)
    assert LucasParams(1, -1).delta == 5
