"""Tests for the exact scalar layer.

Expected values are frozen from independent brute-force oracles computed in
this file (squares enumerated directly, roots found by exhaustive search),
never from the implementation under test.
"""

import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from sl2covers.errors import (DivisionByNonUnit, InsufficientPrecision,
                              InvertZero, NotInModel)
from sl2covers.exactnum import (DEFAULT_PADIC_PRECISION, FpElem, Fp2Elem,
                                PadicApprox, QuadRat, ZpnElem, conj_like,
                                legendre_symbol, one_like, padic_invert,
                                smallest_nonresidue, sqrt_in_fp2, sqrt_mod_p,
                                zero_like)

SMALL_PRIMES = [3, 5, 7, 11, 13]


# ---------------------------------------------------------------------------
# Legendre symbol and non-residues
# ---------------------------------------------------------------------------

def squares_mod(p):
    return {r * r % p for r in range(1, p)}


@pytest.mark.parametrize("p", SMALL_PRIMES + [17, 19, 23, 97])
def test_legendre_against_square_enumeration(p):
    sq = squares_mod(p)
    for t in range(p):
        expected = 0 if t == 0 else (1 if t in sq else -1)
        assert legendre_symbol(t, p) == expected


def test_legendre_frozen_values():
    # hand-checked: squares mod 7 are {1,2,4}; squares mod 11 are {1,3,4,5,9}
    assert legendre_symbol(2, 7) == 1
    assert legendre_symbol(3, 7) == -1
    assert legendre_symbol(0, 7) == 0
    assert legendre_symbol(10, 11) == -1
    assert legendre_symbol(5, 11) == 1


def test_legendre_rejects_bad_modulus():
    for bad in (1, 2, 4, 9, 15):
        with pytest.raises(ValueError):
            legendre_symbol(1, bad)


@pytest.mark.parametrize("p", SMALL_PRIMES + [17, 19, 23])
def test_smallest_nonresidue(p):
    sq = squares_mod(p)
    expected = min(t for t in range(2, p) if t not in sq)
    assert smallest_nonresidue(p) == expected


def test_smallest_nonresidue_frozen():
    assert smallest_nonresidue(3) == 2
    assert smallest_nonresidue(5) == 2
    assert smallest_nonresidue(7) == 3
    assert smallest_nonresidue(11) == 2
    assert smallest_nonresidue(23) == 5


@given(st.sampled_from(SMALL_PRIMES), st.integers(0, 200), st.integers(0, 200))
def test_legendre_is_multiplicative(p, s, t):
    assert legendre_symbol(s * t, p) == legendre_symbol(s, p) * legendre_symbol(t, p)


# ---------------------------------------------------------------------------
# F_p
# ---------------------------------------------------------------------------

def test_fp_basic_arithmetic():
    x = FpElem(4, 7)
    y = FpElem(5, 7)
    assert x + y == 2
    assert x - y == 6
    assert x * y == 6
    assert -x == 3
    assert x / y == 4 * pow(5, -1, 7) % 7
    assert x + 3 == 0 and 3 + x == 0


def test_fp_inverse_errors():
    with pytest.raises(InvertZero):
        FpElem(0, 5).inverse()
    with pytest.raises(InvertZero):
        FpElem(1, 5) / FpElem(0, 5)


@given(st.sampled_from(SMALL_PRIMES), st.integers(-50, 50), st.integers(-50, 50),
       st.integers(-50, 50))
def test_fp_field_axioms(p, a, b, c):
    x, y, z = FpElem(a, p), FpElem(b, p), FpElem(c, p)
    assert (x + y) + z == x + (y + z)
    assert x * (y + z) == x * y + x * z
    assert x * y == y * x
    if not y.is_zero:
        assert (x / y) * y == x


# ---------------------------------------------------------------------------
# F_{p^2}
# ---------------------------------------------------------------------------

def fp2_all(p):
    return [Fp2Elem(u, v, p) for u in range(p) for v in range(p)]


@pytest.mark.parametrize("p", [3, 5, 7])
def test_fp2_is_a_field(p):
    # every nonzero element invertible, and x * x^{-1} == 1
    for x in fp2_all(p):
        if x.is_zero:
            with pytest.raises(InvertZero):
                x.inverse()
        else:
            assert x * x.inverse() == 1


@pytest.mark.parametrize("p", [3, 5, 7, 11])
def test_frobenius_is_the_p_power_map(p):
    for x in fp2_all(p):
        power = one_like(x)
        for _ in range(p):
            power = power * x
        assert x.frobenius() == power
        assert x.frobenius().frobenius() == x


def test_fp2_norm_lands_in_base_field():
    for x in fp2_all(5):
        n = x.norm()
        assert isinstance(n, FpElem)
        assert (x * x.frobenius()) == Fp2Elem(n.v, 0, 5)


# ---------------------------------------------------------------------------
# square roots in F_{p^2}
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("p", [3, 5, 7, 11, 13])
def test_sqrt_in_fp2_against_exhaustive_search(p):
    for t in range(p):
        target = Fp2Elem(t, 0, p)
        roots = [x for x in fp2_all(p) if x * x == target]
        assert roots, f"{t} has no square root in F_{p}^2 -- impossible"
        expected = min(roots, key=lambda x: x.canonical_int())
        got = sqrt_in_fp2(FpElem(t, p))
        assert got == expected
        assert got * got == target


def test_sqrt_in_fp2_frozen_values():
    assert sqrt_in_fp2(FpElem(4, 7)) == Fp2Elem(2, 0, 7)
    assert sqrt_in_fp2(FpElem(0, 7)) == Fp2Elem(0, 0, 7)
    # eps itself: root is sqrt(eps), coefficient pair (0, 1)
    for p in SMALL_PRIMES:
        eps = smallest_nonresidue(p)
        r = sqrt_in_fp2(FpElem(eps, p))
        assert (r.u, r.v) == (0, 1)


def test_sqrt_mod_p_picks_smaller_root():
    # 2 has the two roots {3, 4} mod 7; the smaller one wins
    assert sqrt_mod_p(2, 7) == 3
    assert sqrt_mod_p(3, 7) is None
    assert sqrt_mod_p(0, 7) == 0


# ---------------------------------------------------------------------------
# Z/p^n
# ---------------------------------------------------------------------------

def test_zpn_basic():
    x = ZpnElem(10, 3, 3)  # 10 mod 27
    y = ZpnElem(20, 3, 3)
    assert x + y == 3
    assert x * y == 200 % 27
    assert x.is_unit
    assert (x * x.inverse()) == 1
    assert x.reduce(1) == ZpnElem(1, 3, 1)
    assert x.to_fp() == FpElem(1, 3)


def test_zpn_non_unit_inverse():
    with pytest.raises(DivisionByNonUnit):
        ZpnElem(6, 3, 3).inverse()
    with pytest.raises(DivisionByNonUnit):
        ZpnElem(0, 3, 3).inverse()


def test_zpn_no_precision_lift():
    with pytest.raises(InsufficientPrecision):
        ZpnElem(1, 3, 2).reduce(3)


@given(st.sampled_from([3, 5]), st.integers(1, 3), st.integers(-200, 200),
       st.integers(-200, 200), st.integers(-200, 200))
def test_zpn_ring_axioms(p, n, a, b, c):
    x, y, z = (ZpnElem(v, p, n) for v in (a, b, c))
    assert (x + y) + z == x + (y + z)
    assert x * (y + z) == x * y + x * z
    assert (x * y) * z == x * (y * z)
    if y.is_unit:
        assert (x / y) * y == x


@given(st.sampled_from([3, 5, 7]), st.integers(1, 4), st.integers(0, 2),
       st.integers(-500, 500), st.integers(-500, 500))
def test_zpn_reduction_is_a_ring_map(p, m, extra, a, b):
    n = m + extra
    x, y = ZpnElem(a, p, n), ZpnElem(b, p, n)
    assert (x + y).reduce(m) == x.reduce(m) + y.reduce(m)
    assert (x * y).reduce(m) == x.reduce(m) * y.reduce(m)


# ---------------------------------------------------------------------------
# Q(sqrt d)
# ---------------------------------------------------------------------------

def test_quadrat_basic():
    r5 = QuadRat.sqrt_of(5)
    assert r5 * r5 == 5
    x = QuadRat(Fraction(1, 2), 3, 5)
    assert x.conj() == QuadRat(Fraction(1, 2), -3, 5)
    assert x * x.conj() == x.norm()
    assert (x / x) == 1
    assert x + 1 == QuadRat(Fraction(3, 2), 3, 5)


def test_quadrat_inverse_of_zero():
    with pytest.raises(InvertZero):
        QuadRat(0, 0, 5).inverse()


def test_quadrat_rejects_square_radicand():
    with pytest.raises(ValueError):
        QuadRat(1, 1, 9)
    with pytest.raises(ValueError):
        QuadRat(1, 1, 1)


def test_quadrat_mixed_radicands():
    # rationals interoperate across radicands; irrationals do not
    a = QuadRat(2, 0, 5)
    b = QuadRat(1, 1, 7)
    assert a + b == QuadRat(3, 1, 7)
    with pytest.raises(ValueError):
        QuadRat(0, 1, 5) + QuadRat(0, 1, 7)


def test_quadrat_float_embedding():
    x = QuadRat(1, 2, 5)
    assert math.isclose(float(x), 1 + 2 * math.sqrt(5))


@given(st.integers(-20, 20), st.integers(-20, 20), st.integers(-20, 20),
       st.integers(-20, 20))
def test_quadrat_field_axioms(a1, b1, a2, b2):
    x = QuadRat(a1, b1, 5)
    y = QuadRat(a2, b2, 5)
    assert (x + y).conj() == x.conj() + y.conj()
    assert (x * y).conj() == x.conj() * y.conj()
    assert x.norm() == x.a * x.a - 5 * x.b * x.b
    if not y.is_zero:
        assert (x / y) * y == x


# ---------------------------------------------------------------------------
# capped-precision p-adics
# ---------------------------------------------------------------------------

def test_padic_from_int_normalizes():
    x = PadicApprox.from_int(45, 3)  # 45 = 3^2 * 5
    assert x.valuation == 2
    assert x.unit == 5
    assert x.precision == DEFAULT_PADIC_PRECISION
    assert x.abs_precision == 2 + DEFAULT_PADIC_PRECISION


def test_padic_from_rational():
    x = PadicApprox.from_rational(Fraction(5, 9), 3)
    assert x.valuation == -2
    y = x * PadicApprox.from_int(9, 3)
    assert y == 5


def test_padic_addition_tracks_valuation():
    p = 5
    x = PadicApprox.from_int(5, p)    # valuation 1
    y = PadicApprox.from_int(30, p)   # valuation 1
    z = x + y                         # 35 = 5 * 7
    assert z.valuation == 1 and z == 35


def test_padic_cancellation_lowers_precision():
    p = 5
    n = DEFAULT_PADIC_PRECISION
    x = PadicApprox.from_int(1, p, n)
    y = PadicApprox.from_int(-1 + p ** 3 * 2, p, n)
    z = x + y  # exact value 2 * p^3, computed from units known mod p^n
    assert z.valuation == 3
    assert z.unit == 2
    # three digits were consumed by the cancellation
    assert z.precision == n - 3
    assert z.abs_precision == n


def test_padic_full_cancellation_is_underflow_not_exact_zero():
    p = 5
    x = PadicApprox.from_int(7, p)
    z = x - x
    assert z.is_zero and not z.is_exact_zero
    assert z.abs_precision == DEFAULT_PADIC_PRECISION
    with pytest.raises(InvertZero):
        z.invert()


def test_padic_exact_zero():
    z = PadicApprox.exact_zero(5)
    assert z.is_exact_zero
    assert z.abs_precision == math.inf
    x = PadicApprox.from_int(7, 5)
    assert (x + z) == x
    assert (x * z).is_exact_zero
    with pytest.raises(InvertZero):
        padic_invert(z)


def test_padic_multiplication_precision_is_min():
    p = 3
    x = PadicApprox.from_int(2, p, 6)
    y = PadicApprox.from_int(7, p, 4)
    z = x * y
    assert z.precision == 4
    assert z == 14


def test_padic_valuation_is_a_homomorphism():
    p = 7
    for a, b in [(7, 14), (49, 3), (2, 5), (343, 7)]:
        x, y = PadicApprox.from_int(a, p), PadicApprox.from_int(b, p)
        assert (x * y).valuation == x.valuation + y.valuation


def test_padic_invert_round_trip():
    p = 7
    x = PadicApprox.from_int(45, p)
    assert x.invert().invert() == x
    assert x * x.invert() == 1
    assert x.invert().valuation == -x.valuation


def test_padic_shift_is_exact():
    x = PadicApprox.from_int(4, 3, 5)
    y = x.shift(2)
    assert y.valuation == 2 and y.precision == 5
    assert y == 36
    assert y.shift(-2) == x


def test_padic_reduce_mod():
    p = 3
    x = PadicApprox.from_int(14, p)  # 14 mod 27 = 14
    assert x.reduce_mod(3) == 14
    assert x.to_zpn(2) == ZpnElem(14, 3, 2)
    neg = PadicApprox.from_rational(Fraction(1, 3), p)
    with pytest.raises(NotInModel):
        neg.reduce_mod(1)
    shallow = PadicApprox.from_int(1, p, 2)
    with pytest.raises(InsufficientPrecision):
        shallow.reduce_mod(5)
    fuzzy_zero = PadicApprox.zero_at(p, 2)
    assert fuzzy_zero.reduce_mod(2) == 0
    with pytest.raises(InsufficientPrecision):
        fuzzy_zero.reduce_mod(3)


def test_padic_equality_is_precision_aware():
    p = 5
    x = PadicApprox.from_int(1, p, 4)
    y = PadicApprox.from_int(1 + p ** 4, p, 8)
    # indistinguishable at the shared absolute precision 4
    assert x == y
    z = PadicApprox.from_int(1 + p ** 3, p, 8)
    assert x != z


def test_padic_underflow_zero_masks_small_values():
    p = 5
    fuzz = PadicApprox.zero_at(p, 3)
    tiny = PadicApprox.from_int(p ** 4, p)
    assert (fuzz + tiny).is_zero           # p^4 hides below O(p^3)
    visible = PadicApprox.from_int(p, p)
    s = fuzz + visible
    assert not s.is_zero
    assert s.valuation == 1 and s.abs_precision == 3


@given(st.sampled_from([3, 5, 7]),
       st.integers(-400, 400), st.integers(-400, 400), st.integers(-400, 400))
@settings(max_examples=150)
def test_padic_ring_axioms_at_shared_precision(p, a, b, c):
    x = PadicApprox.from_int(a, p)
    y = PadicApprox.from_int(b, p)
    z = PadicApprox.from_int(c, p)
    assert (x + y) + z == x + (y + z)
    assert x + y == y + x
    assert x * (y + z) == x * y + x * z
    if b != 0:
        assert (x * y) / y == x


@given(st.sampled_from([3, 5, 7]), st.integers(-400, 400).filter(bool),
       st.integers(-400, 400).filter(bool))
def test_padic_valuation_homomorphism_random(p, a, b):
    x = PadicApprox.from_int(a, p)
    y = PadicApprox.from_int(b, p)
    assert (x * y).valuation == x.valuation + y.valuation


# ---------------------------------------------------------------------------
# generic helpers
# ---------------------------------------------------------------------------

def test_one_zero_conj_like_dispatch():
    samples = [FpElem(2, 5), Fp2Elem(1, 2, 5), ZpnElem(4, 3, 2),
               QuadRat(1, 1, 5), PadicApprox.from_int(3, 5), Fraction(2, 3), 7]
    for x in samples:
        one = one_like(x)
        zero = zero_like(x)
        assert one * x == x
        # x + 0 == x (PadicApprox equality is precision-aware but exact here)
        assert x + zero == x
    assert conj_like(Fp2Elem(1, 2, 5)) == Fp2Elem(1, -2, 5)
    assert conj_like(QuadRat(1, 2, 5)) == QuadRat(1, -2, 5)
    assert conj_like(FpElem(3, 5)) == FpElem(3, 5)
    assert conj_like(7) == 7
