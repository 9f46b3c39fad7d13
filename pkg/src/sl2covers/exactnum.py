"""Exact scalar arithmetic: prime fields, their quadratic extensions, residue
rings mod p^n, rationals with an adjoined square root, and capped-precision
p-adic numbers.

Every structure here is exact except ``PadicApprox``, which is exact up to an
explicitly tracked precision: results never pretend to more digits than their
inputs support, and catastrophic cancellation lowers the recorded precision
instead of fabricating zeros.

Conventions used throughout the package:

* p is always an odd prime (3 <= p <= 97 in practice).
* The uniformizer is p itself; ramified quadratic data adjoins sqrt(p).
* The quadratic extension of F_p is realized as F_p(sqrt(eps)) where eps is
  the smallest positive non-residue mod p.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

from .errors import DivisionByNonUnit, InsufficientPrecision, InvertZero, NotInModel

#: Exact rational numbers.  ``fractions.Fraction`` already guarantees the
#: normal form we want (reduced, positive denominator), so it is used as-is.
Rat = Fraction

#: Complex values produced by the floating-point layers (character tables,
#: Fourier transforms, distributions).
CplxVal = complex

#: Default relative precision (number of significant base-p digits) for
#: p-adic approximations.
DEFAULT_PADIC_PRECISION = 8


# ---------------------------------------------------------------------------
# primes and residue symbols
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def is_odd_prime(p: int) -> bool:
    if p < 3 or p % 2 == 0:
        return False
    return all(p % d for d in range(3, math.isqrt(p) + 1, 2))


def require_odd_prime(p: int) -> None:
    if not is_odd_prime(p):
        raise ValueError(f"expected an odd prime, got {p!r}")


def legendre_symbol(t: int, p: int) -> int:
    """Quadratic-residue symbol of t modulo the odd prime p, in {-1, 0, +1}."""
    require_odd_prime(p)
    t %= p
    if t == 0:
        return 0
    return 1 if pow(t, (p - 1) // 2, p) == 1 else -1


@lru_cache(maxsize=None)
def smallest_nonresidue(p: int) -> int:
    """The smallest positive quadratic non-residue modulo p."""
    require_odd_prime(p)
    for t in range(2, p):
        if legendre_symbol(t, p) == -1:
            return t
    raise AssertionError("odd primes always have a non-residue")


@lru_cache(maxsize=None)
def sqrt_mod_p(t: int, p: int) -> int | None:
    """The smaller square root of t mod p, or None when t is a non-residue.

    Exhaustive search; p stays small enough throughout the package that this
    beats the bookkeeping of Tonelli-Shanks.
    """
    require_odd_prime(p)
    t %= p
    roots = [r for r in range(p) if (r * r - t) % p == 0]
    return min(roots) if roots else None


# ---------------------------------------------------------------------------
# F_p and F_{p^2}
# ---------------------------------------------------------------------------

class FpElem:
    """An element of the prime field F_p."""

    __slots__ = ("p", "v")

    def __init__(self, value: int | "FpElem", p: int):
        require_odd_prime(p)
        if isinstance(value, FpElem):
            if value.p != p:
                raise ValueError("cannot reinterpret an element across primes")
            value = value.v
        self.p = p
        self.v = value % p

    def _coerce(self, other) -> "FpElem":
        if isinstance(other, FpElem):
            if other.p != self.p:
                raise ValueError("mixed primes in F_p arithmetic")
            return other
        if isinstance(other, int):
            return FpElem(other, self.p)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return FpElem(self.v + o.v, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return FpElem(self.v - o.v, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return FpElem(o.v - self.v, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return FpElem(self.v * o.v, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return FpElem(-self.v, self.p)

    def inverse(self) -> "FpElem":
        if self.v == 0:
            raise InvertZero(f"0 has no inverse in F_{self.p}")
        return FpElem(pow(self.v, -1, self.p), self.p)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o * self.inverse()

    def __eq__(self, other):
        if isinstance(other, int):
            return self.v == other % self.p
        if isinstance(other, FpElem):
            return self.p == other.p and self.v == other.v
        return NotImplemented

    def __hash__(self):
        return hash((FpElem, self.p, self.v))

    def __bool__(self):
        return self.v != 0

    @property
    def is_zero(self) -> bool:
        return self.v == 0

    def legendre(self) -> int:
        return legendre_symbol(self.v, self.p)

    def lift(self) -> int:
        """The canonical integer representative in [0, p)."""
        return self.v

    def to_fp2(self) -> "Fp2Elem":
        return Fp2Elem(self.v, 0, self.p)

    def __repr__(self):
        return f"FpElem({self.v} mod {self.p})"


class Fp2Elem:
    """An element u + v*sqrt(eps) of F_{p^2}, with eps the smallest non-residue.

    The arithmetic Frobenius x -> x^p acts as u + v*sqrt(eps) -> u - v*sqrt(eps).
    """

    __slots__ = ("p", "u", "v")

    def __init__(self, u: int, v: int, p: int):
        require_odd_prime(p)
        self.p = p
        self.u = u % p
        self.v = v % p

    @property
    def eps(self) -> int:
        return smallest_nonresidue(self.p)

    def _coerce(self, other) -> "Fp2Elem":
        if isinstance(other, Fp2Elem):
            if other.p != self.p:
                raise ValueError("mixed primes in F_{p^2} arithmetic")
            return other
        if isinstance(other, FpElem):
            if other.p != self.p:
                raise ValueError("mixed primes in F_{p^2} arithmetic")
            return Fp2Elem(other.v, 0, self.p)
        if isinstance(other, int):
            return Fp2Elem(other, 0, self.p)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return Fp2Elem(self.u + o.u, self.v + o.v, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return Fp2Elem(self.u - o.u, self.v - o.v, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return Fp2Elem(o.u - self.u, o.v - self.v, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        e = self.eps
        return Fp2Elem(self.u * o.u + e * self.v * o.v,
                       self.u * o.v + self.v * o.u, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return Fp2Elem(-self.u, -self.v, self.p)

    def norm(self) -> FpElem:
        """Field norm down to F_p: u^2 - eps*v^2."""
        return FpElem(self.u * self.u - self.eps * self.v * self.v, self.p)

    def inverse(self) -> "Fp2Elem":
        nrm = self.norm().v
        if nrm == 0:
            raise InvertZero(f"0 has no inverse in F_{{{self.p}^2}}")
        ninv = pow(nrm, -1, self.p)
        return Fp2Elem(self.u * ninv, -self.v * ninv, self.p)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o * self.inverse()

    def frobenius(self) -> "Fp2Elem":
        """The arithmetic Frobenius x -> x^p (coefficient sign flip)."""
        return Fp2Elem(self.u, -self.v, self.p)

    conj = frobenius

    def __eq__(self, other):
        if isinstance(other, (int, FpElem)):
            other = self._coerce(other)
        if isinstance(other, Fp2Elem):
            return (self.p, self.u, self.v) == (other.p, other.u, other.v)
        return NotImplemented

    def __hash__(self):
        return hash((Fp2Elem, self.p, self.u, self.v))

    def __bool__(self):
        return bool(self.u or self.v)

    @property
    def is_zero(self) -> bool:
        return self.u == 0 and self.v == 0

    @property
    def in_base_field(self) -> bool:
        return self.v == 0

    def canonical_int(self) -> int:
        """Injective encoding u + p*v used for deterministic tie-breaking."""
        return self.u + self.p * self.v

    def __repr__(self):
        return f"Fp2Elem({self.u}+{self.v}r mod {self.p})"


def sqrt_in_fp2(t: FpElem | int, p: int | None = None) -> Fp2Elem:
    """A square root of t in F_{p^2}, canonical among the two choices.

    Every element of F_p has a square root in F_{p^2}: either sqrt(t) in F_p
    (t a residue) or sqrt(t/eps)*sqrt(eps) (t a non-residue).  Of the two
    roots +/-s we return the one with the smaller encoding u + p*v.
    """
    if isinstance(t, FpElem):
        p = t.p
        t = t.v
    if p is None:
        raise TypeError("sqrt_in_fp2 of a plain int needs the prime p")
    t %= p
    if t == 0:
        return Fp2Elem(0, 0, p)
    if legendre_symbol(t, p) == 1:
        r = sqrt_mod_p(t, p)
        return Fp2Elem(r, 0, p)  # sqrt_mod_p already picks the smaller root
    eps = smallest_nonresidue(p)
    w = sqrt_mod_p(t * pow(eps, -1, p) % p, p)
    return Fp2Elem(0, w, p)


# ---------------------------------------------------------------------------
# Z/p^n
# ---------------------------------------------------------------------------

class ZpnElem:
    """An element of the residue ring Z/p^n."""

    __slots__ = ("p", "n", "v")

    def __init__(self, value: int | "ZpnElem", p: int, n: int):
        require_odd_prime(p)
        if n < 1:
            raise ValueError("level must be at least 1")
        if isinstance(value, ZpnElem):
            if value.p != p:
                raise ValueError("cannot reinterpret an element across primes")
            value = value.v
        self.p = p
        self.n = n
        self.v = value % p ** n

    @property
    def modulus(self) -> int:
        return self.p ** self.n

    def _coerce(self, other) -> "ZpnElem":
        if isinstance(other, ZpnElem):
            if (other.p, other.n) != (self.p, self.n):
                raise ValueError("mixed moduli in Z/p^n arithmetic")
            return other
        if isinstance(other, int):
            return ZpnElem(other, self.p, self.n)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return ZpnElem(self.v + o.v, self.p, self.n)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return ZpnElem(self.v - o.v, self.p, self.n)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return ZpnElem(o.v - self.v, self.p, self.n)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return ZpnElem(self.v * o.v, self.p, self.n)

    __rmul__ = __mul__

    def __neg__(self):
        return ZpnElem(-self.v, self.p, self.n)

    @property
    def is_unit(self) -> bool:
        return self.v % self.p != 0

    def inverse(self) -> "ZpnElem":
        if not self.is_unit:
            raise DivisionByNonUnit(
                f"{self.v} is not a unit mod {self.p}^{self.n}")
        return ZpnElem(pow(self.v, -1, self.modulus), self.p, self.n)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o * self.inverse()

    def reduce(self, m: int) -> "ZpnElem":
        """Reduction to the coarser ring Z/p^m (m <= n)."""
        if m > self.n:
            raise InsufficientPrecision(
                f"cannot lift from level {self.n} to level {m}")
        return ZpnElem(self.v, self.p, m)

    def to_fp(self) -> FpElem:
        return FpElem(self.v, self.p)

    def lift(self) -> int:
        """The canonical integer representative in [0, p^n)."""
        return self.v

    def __eq__(self, other):
        if isinstance(other, int):
            return self.v == other % self.modulus
        if isinstance(other, ZpnElem):
            return (self.p, self.n, self.v) == (other.p, other.n, other.v)
        return NotImplemented

    def __hash__(self):
        return hash((ZpnElem, self.p, self.n, self.v))

    def __bool__(self):
        return self.v != 0

    @property
    def is_zero(self) -> bool:
        return self.v == 0

    def __repr__(self):
        return f"ZpnElem({self.v} mod {self.p}^{self.n})"


# ---------------------------------------------------------------------------
# Q(sqrt(d))
# ---------------------------------------------------------------------------

class QuadRat:
    """An exact element a + b*sqrt(d) of a real quadratic field Q(sqrt(d)).

    d is a fixed positive non-square integer (in this package nearly always
    the prime p, standing in for the uniformizer under sqrt).  Values with
    b = 0 are freely interoperable across different d.
    """

    __slots__ = ("a", "b", "d")

    def __init__(self, a, b, d: int):
        if d <= 1 or math.isqrt(d) ** 2 == d:
            raise ValueError(f"radicand must be a non-square integer > 1, got {d}")
        self.a = Fraction(a)
        self.b = Fraction(b)
        self.d = d

    @classmethod
    def sqrt_of(cls, d: int) -> "QuadRat":
        return cls(0, 1, d)

    def _coerce(self, other) -> "QuadRat":
        if isinstance(other, QuadRat):
            if other.d == self.d or other.b == 0:
                return QuadRat(other.a, other.b, self.d)
            if self.b == 0:
                return other
            raise ValueError("mixed radicands in quadratic arithmetic")
        if isinstance(other, (int, Fraction)):
            return QuadRat(other, 0, self.d)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return QuadRat(self.a + o.a, self.b + o.b, o.d)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return QuadRat(self.a - o.a, self.b - o.b, o.d)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return QuadRat(o.a - self.a, o.b - self.b, o.d)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        d = o.d
        return QuadRat(self.a * o.a + d * self.b * o.b,
                       self.a * o.b + self.b * o.a, d)

    __rmul__ = __mul__

    def __neg__(self):
        return QuadRat(-self.a, -self.b, self.d)

    def conj(self) -> "QuadRat":
        """The nontrivial field automorphism sqrt(d) -> -sqrt(d)."""
        return QuadRat(self.a, -self.b, self.d)

    def norm(self) -> Fraction:
        return self.a * self.a - self.d * self.b * self.b

    def inverse(self) -> "QuadRat":
        nrm = self.norm()
        if nrm == 0:
            # norm vanishes only at 0 since d is not a rational square
            raise InvertZero("0 has no inverse")
        return QuadRat(self.a / nrm, -self.b / nrm, self.d)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o * self.inverse()

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    @property
    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        if isinstance(other, QuadRat):
            if self.d != other.d and self.b != 0 and other.b != 0:
                return False
            return self.a == other.a and self.b == other.b
        return NotImplemented

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((QuadRat, self.a, self.b, self.d))

    def __bool__(self):
        return not self.is_zero

    def __float__(self):
        return float(self.a) + float(self.b) * math.sqrt(self.d)

    def __repr__(self):
        if self.b == 0:
            return f"QuadRat({self.a})"
        return f"QuadRat({self.a} + {self.b}*sqrt({self.d}))"


# ---------------------------------------------------------------------------
# capped-precision p-adic numbers
# ---------------------------------------------------------------------------

_EXACT = object()  # sentinel precision for the exact zero


class PadicApprox:
    """A p-adic number known to finite precision.

    A nonzero value is stored as p^valuation * unit with the unit (a p-adic
    unit) known modulo p^precision; the value itself is therefore pinned
    modulo p^(valuation + precision) (its *absolute* precision).

    Zeros come in two flavors: the exact zero, and an "underflow" zero
    produced by catastrophic cancellation, which only records that the value
    is divisible by p^A for a known bound A.  Arithmetic propagates these
    bounds honestly: adding x and -x + p^k*u at relative precision N yields a
    value of relative precision N - k, and full cancellation yields an
    underflow zero, never a fabricated exact one.
    """

    __slots__ = ("p", "valuation", "unit", "precision")

    def __init__(self, p, valuation, unit, precision, _raw=False):
        if not _raw:
            raise TypeError(
                "use PadicApprox.from_int / from_rational / zero_at / exact_zero")
        self.p = p
        self.valuation = valuation  # None for either kind of zero
        self.unit = unit            # None for zeros
        self.precision = precision  # relative precision; abs bound for underflow
                                    # zeros; the _EXACT sentinel for exact zero

    # -- constructors -------------------------------------------------------

    @classmethod
    def _make(cls, p, valuation, unit, precision):
        if precision < 1:
            raise AssertionError("internal: relative precision must be >= 1")
        unit %= p ** precision
        if unit % p == 0:
            raise AssertionError("internal: unit must be a p-adic unit")
        return cls(p, valuation, unit, precision, _raw=True)

    @classmethod
    def exact_zero(cls, p: int) -> "PadicApprox":
        require_odd_prime(p)
        return cls(p, None, None, _EXACT, _raw=True)

    @classmethod
    def zero_at(cls, p: int, abs_precision: int) -> "PadicApprox":
        """A value known only to be divisible by p^abs_precision."""
        require_odd_prime(p)
        return cls(p, None, None, abs_precision, _raw=True)

    @classmethod
    def from_int(cls, value: int, p: int,
                 precision: int = DEFAULT_PADIC_PRECISION) -> "PadicApprox":
        require_odd_prime(p)
        if value == 0:
            return cls.exact_zero(p)
        v = 0
        while value % p == 0:
            value //= p
            v += 1
        return cls._make(p, v, value, precision)

    @classmethod
    def from_rational(cls, value, p: int,
                      precision: int = DEFAULT_PADIC_PRECISION) -> "PadicApprox":
        value = Fraction(value)
        if value == 0:
            return cls.exact_zero(p)
        num, den = value.numerator, value.denominator
        x = cls.from_int(num, p, precision)
        y = cls.from_int(den, p, precision)
        return x * y.invert()

    @classmethod
    def unit_times_power(cls, unit: int, valuation: int, p: int,
                         precision: int = DEFAULT_PADIC_PRECISION) -> "PadicApprox":
        """p^valuation * unit with the given relative precision."""
        require_odd_prime(p)
        if unit % p == 0:
            raise ValueError("leading unit must be prime to p")
        return cls._make(p, valuation, unit, precision)

    # -- structure ----------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        """True for the exact zero and for underflow zeros alike."""
        return self.valuation is None

    @property
    def is_exact_zero(self) -> bool:
        return self.valuation is None and self.precision is _EXACT

    @property
    def abs_precision(self):
        """The value is pinned modulo p^abs_precision (math.inf when exact)."""
        if self.is_exact_zero:
            return math.inf
        if self.is_zero:
            return self.precision
        return self.valuation + self.precision

    def valuation_lower_bound(self) -> int | float:
        """Exact valuation for nonzero values; the divisibility bound for zeros."""
        return self.abs_precision if self.is_zero else self.valuation

    # -- arithmetic ---------------------------------------------------------

    def _check_same_p(self, other: "PadicApprox"):
        if self.p != other.p:
            raise ValueError("mixed primes in p-adic arithmetic")

    def _coerce(self, other):
        if isinstance(other, PadicApprox):
            self._check_same_p(other)
            return other
        if isinstance(other, (int, Fraction)):
            # plain integers/rationals are exact; represent them with enough
            # headroom that the mixed result's precision is governed by self
            prec = DEFAULT_PADIC_PRECISION
            if not self.is_exact_zero:
                prec = max(prec, self.precision + 2)
            return PadicApprox.from_rational(Fraction(other), self.p, prec)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if self.is_exact_zero:
            return o
        if o.is_exact_zero:
            return self
        if self.is_zero and o.is_zero:
            return PadicApprox.zero_at(self.p, min(self.precision, o.precision))
        if self.is_zero or o.is_zero:
            z, x = (self, o) if self.is_zero else (o, self)
            bound = min(z.precision, x.abs_precision)
            if x.valuation >= bound:
                return PadicApprox.zero_at(self.p, bound)
            return PadicApprox._make(self.p, x.valuation,
                                     x.unit, bound - x.valuation)
        a = min(self.abs_precision, o.abs_precision)
        x, y = (self, o) if self.valuation <= o.valuation else (o, self)
        v = x.valuation
        window = a - v
        if window <= 0:
            return PadicApprox.zero_at(self.p, a)
        pw = self.p ** window
        combined = (x.unit + y.unit * self.p ** (y.valuation - v)) % pw
        if combined == 0:
            return PadicApprox.zero_at(self.p, a)
        k = 0
        while combined % self.p == 0:
            combined //= self.p
            k += 1
        return PadicApprox._make(self.p, v + k, combined, window - k)

    __radd__ = __add__

    def __neg__(self):
        if self.is_zero:
            return self
        return PadicApprox._make(self.p, self.valuation,
                                 -self.unit % self.p ** self.precision,
                                 self.precision)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if self.is_exact_zero or o.is_exact_zero:
            return PadicApprox.exact_zero(self.p)
        if self.is_zero or o.is_zero:
            if self.is_zero and o.is_zero:
                bound = self.precision + o.precision
            else:
                z, x = (self, o) if self.is_zero else (o, self)
                bound = z.precision + x.valuation
            return PadicApprox.zero_at(self.p, bound)
        prec = min(self.precision, o.precision)
        return PadicApprox._make(self.p, self.valuation + o.valuation,
                                 self.unit * o.unit, prec)

    __rmul__ = __mul__

    def invert(self) -> "PadicApprox":
        """The multiplicative inverse; raises InvertZero on any kind of zero."""
        if self.is_zero:
            raise InvertZero("cannot invert a (possibly underflowed) zero")
        return PadicApprox._make(self.p, -self.valuation,
                                 pow(self.unit, -1, self.p ** self.precision),
                                 self.precision)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self * o.invert()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o * self.invert()

    def shift(self, k: int) -> "PadicApprox":
        """Exact multiplication by p^k (a valuation shift, no precision loss)."""
        if self.is_exact_zero:
            return self
        if self.is_zero:
            return PadicApprox.zero_at(self.p, self.precision + k)
        return PadicApprox._make(self.p, self.valuation + k,
                                 self.unit, self.precision)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return (self - o).is_zero

    __hash__ = None  # equality is precision-relative; hashing would lie

    # -- reductions ---------------------------------------------------------

    def reduce_mod(self, n: int) -> int:
        """The residue mod p^n for an integral value.

        Raises NotInModel when the value has negative valuation and
        InsufficientPrecision when fewer than n digits are pinned.
        """
        if n < 1:
            raise ValueError("level must be at least 1")
        if self.is_exact_zero:
            return 0
        if self.is_zero:
            if self.precision < n:
                raise InsufficientPrecision(
                    f"zero known only mod p^{self.precision}, need mod p^{n}")
            return 0
        if self.valuation < 0:
            raise NotInModel(
                f"valuation {self.valuation} < 0: not a p-adic integer")
        if self.abs_precision < n:
            raise InsufficientPrecision(
                f"value known mod p^{self.abs_precision}, need mod p^{n}")
        return self.p ** self.valuation * self.unit % self.p ** n

    def to_zpn(self, n: int) -> ZpnElem:
        return ZpnElem(self.reduce_mod(n), self.p, n)

    def __repr__(self):
        if self.is_exact_zero:
            return f"PadicApprox(0, p={self.p})"
        if self.is_zero:
            return f"PadicApprox(O({self.p}^{self.precision}))"
        return (f"PadicApprox({self.unit}*{self.p}^{self.valuation}"
                f" + O({self.p}^{self.abs_precision}))")


def padic_invert(x: PadicApprox) -> PadicApprox:
    """Functional form of :meth:`PadicApprox.invert`."""
    return x.invert()


# ---------------------------------------------------------------------------
# generic ring helpers (used by the matrix and cover layers)
# ---------------------------------------------------------------------------

def one_like(x):
    """The multiplicative identity of the ring x lives in."""
    if isinstance(x, FpElem):
        return FpElem(1, x.p)
    if isinstance(x, Fp2Elem):
        return Fp2Elem(1, 0, x.p)
    if isinstance(x, ZpnElem):
        return ZpnElem(1, x.p, x.n)
    if isinstance(x, QuadRat):
        return QuadRat(1, 0, x.d)
    if isinstance(x, PadicApprox):
        return PadicApprox.from_int(1, x.p)
    if isinstance(x, Fraction):
        return Fraction(1)
    if isinstance(x, int):
        return 1
    raise TypeError(f"no identity known for {type(x).__name__}")


def zero_like(x):
    """The additive identity of the ring x lives in."""
    if isinstance(x, FpElem):
        return FpElem(0, x.p)
    if isinstance(x, Fp2Elem):
        return Fp2Elem(0, 0, x.p)
    if isinstance(x, ZpnElem):
        return ZpnElem(0, x.p, x.n)
    if isinstance(x, QuadRat):
        return QuadRat(0, 0, x.d)
    if isinstance(x, PadicApprox):
        return PadicApprox.exact_zero(x.p)
    if isinstance(x, Fraction):
        return Fraction(0)
    if isinstance(x, int):
        return 0
    raise TypeError(f"no zero known for {type(x).__name__}")


def conj_like(x):
    """The distinguished involution of the coefficient ring.

    Quadratic extensions conjugate (Frobenius on F_{p^2}, sqrt -> -sqrt on
    Q(sqrt d)); base rings are fixed pointwise.
    """
    if isinstance(x, Fp2Elem):
        return x.frobenius()
    if isinstance(x, QuadRat):
        return x.conj()
    if isinstance(x, (FpElem, ZpnElem, PadicApprox, Fraction, int)):
        return x
    raise TypeError(f"no conjugation known for {type(x).__name__}")
