"""SL(2) over exact coefficient rings.

Provides a generic determinant-one 2x2 matrix container, enumeration of the
finite groups SL(2, F_p) and SL(2, Z/p^n), the sign classification of regular
unipotent conjugacy classes, closed-form conjugacy data for SL(2, F_p) with a
brute-force cross-check, and the two parahoric coordinate models of
SL(2, Q_p) with their reduction maps to finite levels.

The two models are lattice stabilizers.  The standard model is SL(2, Z_p)
itself.  The nonstandard model is the stabilizer of the index-p sublattice
spanned by (p, 0) and (0, 1): matrices whose upper-right entry is allowed a
single power of p in the denominator while the lower-left entry gains one.
Its *model coordinates* (a, p*b, c/p, d) identify it with SL(2, Z_p) as a
coordinate ring, so both models reduce to honest SL(2, Z/p^n) groups.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import Iterator

from .errors import BudgetExceeded, InsufficientPrecision, NotInModel
from .exactnum import (DEFAULT_PADIC_PRECISION, FpElem, PadicApprox, ZpnElem,
                       legendre_symbol, one_like, require_odd_prime,
                       smallest_nonresidue, zero_like)

#: Enumerations refuse to materialize more than this many group elements.
ENUMERATION_BUDGET = 10 ** 8


# ---------------------------------------------------------------------------
# the matrix container
# ---------------------------------------------------------------------------

class SL2Elem:
    """A determinant-one 2x2 matrix over any of the package's scalar rings.

    The determinant condition is enforced at construction (for capped
    p-adic entries: at the precision the entries support).
    """

    __slots__ = ("a", "b", "c", "d")

    def __init__(self, a, b, c, d, check: bool = True):
        self.a, self.b, self.c, self.d = a, b, c, d
        if check:
            det = a * d - b * c
            if not det == one_like(a):
                raise ValueError(f"determinant is not 1: {det!r}")

    @classmethod
    def _unchecked(cls, a, b, c, d) -> "SL2Elem":
        return cls(a, b, c, d, check=False)

    @classmethod
    def identity_like(cls, sample) -> "SL2Elem":
        one, zero = one_like(sample), zero_like(sample)
        return cls._unchecked(one, zero, zero, one)

    def entries(self) -> tuple:
        return (self.a, self.b, self.c, self.d)

    def __mul__(self, other: "SL2Elem") -> "SL2Elem":
        if not isinstance(other, SL2Elem):
            return NotImplemented
        # products of determinant-one matrices stay determinant-one exactly
        return SL2Elem._unchecked(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d)

    def inverse(self) -> "SL2Elem":
        return SL2Elem._unchecked(self.d, -self.b, -self.c, self.a)

    def __neg__(self) -> "SL2Elem":
        return SL2Elem._unchecked(-self.a, -self.b, -self.c, -self.d)

    def conjugate_by(self, k: "SL2Elem") -> "SL2Elem":
        """k * self * k^{-1}."""
        return k * self * k.inverse()

    def trace(self):
        return self.a + self.d

    def det(self):
        return self.a * self.d - self.b * self.c

    def map_entries(self, fn, check: bool = True) -> "SL2Elem":
        return SL2Elem(fn(self.a), fn(self.b), fn(self.c), fn(self.d),
                       check=check)

    def __eq__(self, other):
        if not isinstance(other, SL2Elem):
            return NotImplemented
        return (self.a == other.a and self.b == other.b
                and self.c == other.c and self.d == other.d)

    def __hash__(self):
        return hash((SL2Elem, self.a, self.b, self.c, self.d))

    def __repr__(self):
        return f"SL2Elem[{self.a!r} {self.b!r}; {self.c!r} {self.d!r}]"


def integral_sl2(entries, p: int,
                 precision: int = DEFAULT_PADIC_PRECISION) -> SL2Elem:
    """Build an SL2Elem with capped p-adic entries from exact rationals."""
    vals = [PadicApprox.from_rational(Fraction(e), p, precision)
            for e in entries]
    return SL2Elem(*vals)


# ---------------------------------------------------------------------------
# the finite groups SL(2, Z/p^n)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FpRing:
    """Descriptor for the residue field F_p."""
    p: int

    def __post_init__(self):
        require_odd_prime(self.p)

    def element(self, v) -> FpElem:
        return FpElem(v, self.p)


@dataclass(frozen=True)
class ZpnRing:
    """Descriptor for the residue ring Z/p^n."""
    p: int
    n: int

    def __post_init__(self):
        require_odd_prime(self.p)
        if self.n < 1:
            raise ValueError("level must be at least 1")

    def element(self, v) -> ZpnElem:
        return ZpnElem(v, self.p, self.n)


def sl2_order(p: int, n: int = 1) -> int:
    """|SL(2, Z/p^n)| = p^(3n) * (1 - p^(-2))."""
    require_odd_prime(p)
    return p ** (3 * n - 2) * (p * p - 1)


def _mul_tuple(g, h, m):
    a, b, c, d = g
    e, f, i, j = h
    return ((a * e + b * i) % m, (a * f + b * j) % m,
            (c * e + d * i) % m, (c * f + d * j) % m)


def _inv_tuple(g, m):
    a, b, c, d = g
    return (d % m, -b % m, -c % m, a % m)


@lru_cache(maxsize=None)
def sl2_tuples(p: int, n: int = 1) -> tuple:
    """All of SL(2, Z/p^n) as integer 4-tuples, in a fixed deterministic order.

    Elements split by whether the upper-left entry is a unit: if it is, the
    off-diagonal entries are free and d is solved for; otherwise the
    upper-right entry must be a unit and the lower-left is solved for.
    """
    require_odd_prime(p)
    if p ** (3 * n) > ENUMERATION_BUDGET:
        raise BudgetExceeded(
            f"p^(3n) = {p ** (3 * n)} exceeds the {ENUMERATION_BUDGET} budget")
    q = p ** n
    out = []
    for a in range(q):
        if a % p != 0:
            ainv = pow(a, -1, q)
            for b in range(q):
                for c in range(q):
                    out.append((a, b, c, (1 + b * c) * ainv % q))
        else:
            for b in range(q):
                if b % p != 0:
                    binv = pow(b, -1, q)
                    for d in range(q):
                        out.append((a, b, (a * d - 1) * binv % q, d))
    assert len(out) == sl2_order(p, n)
    return tuple(out)


def enumerate_sl2(ring: FpRing | ZpnRing) -> Iterator[SL2Elem]:
    """Yield every element of SL(2, ring) exactly once."""
    n = getattr(ring, "n", 1)
    for t in sl2_tuples(ring.p, n):
        yield SL2Elem(*(ring.element(v) for v in t), check=False)


# ---------------------------------------------------------------------------
# regular unipotent classification
# ---------------------------------------------------------------------------

class UnipClass(Enum):
    """Where a matrix sits relative to the regular unipotent locus of SL(2, F_p).

    The non-identity trace-2 matrices form two conjugacy classes told apart
    by a square class: the one of the upper-right entry when it is nonzero,
    and of the negated lower-left entry otherwise.
    """
    IDENTITY = "identity"
    PLUS = "plus"
    MINUS = "minus"
    NOT_REGULAR_UNIPOTENT = "not_regular_unipotent"


def _classify_tuple(t, p: int) -> UnipClass:
    a, b, c, d = (x % p for x in t)
    if (a + d) % p != 2 % p:
        return UnipClass.NOT_REGULAR_UNIPOTENT
    if b == 0 and c == 0:
        return UnipClass.IDENTITY
    s = legendre_symbol(b, p) if b else legendre_symbol(-c, p)
    return UnipClass.PLUS if s == 1 else UnipClass.MINUS


def classify_regular_unipotent(g: SL2Elem) -> UnipClass:
    """Classify an SL(2, F_p) element against the regular unipotent locus."""
    a = g.a
    if not isinstance(a, FpElem):
        raise TypeError("classification happens over the residue field F_p")
    return _classify_tuple((g.a.v, g.b.v, g.c.v, g.d.v), a.p)


# ---------------------------------------------------------------------------
# conjugacy data for SL(2, F_p)
# ---------------------------------------------------------------------------

def class_key(g: SL2Elem) -> tuple:
    """A conjugacy invariant that separates all SL(2, F_p) classes.

    Trace separates semisimple classes; trace-2 (resp. -2) matrices split
    into the identity (resp. minus identity) and a pair of classes labeled
    by the square-class sign.
    """
    p = g.a.p
    tr = (g.a + g.d).v
    if tr == 2 % p:
        cls = classify_regular_unipotent(g)
        if cls is UnipClass.IDENTITY:
            return ("one",)
        return ("unip", 1 if cls is UnipClass.PLUS else -1)
    if tr == -2 % p:
        cls = classify_regular_unipotent(-g)
        if cls is UnipClass.IDENTITY:
            return ("minus_one",)
        return ("neg_unip", 1 if cls is UnipClass.PLUS else -1)
    return ("ss", tr)


def _class_key_tuple(t, p: int) -> tuple:
    a, b, c, d = (x % p for x in t)
    tr = (a + d) % p
    if tr == 2 % p:
        if b == 0 and c == 0:
            return ("one",)
        s = legendre_symbol(b, p) if b else legendre_symbol(-c, p)
        return ("unip", s)
    if tr == -2 % p:
        if b == 0 and c == 0:
            return ("minus_one",)
        s = legendre_symbol(-b, p) if b else legendre_symbol(c, p)
        return ("neg_unip", s)
    return ("ss", tr)


@dataclass(frozen=True)
class ConjClassInfo:
    key: tuple
    representative: tuple  # integer 4-tuple mod p
    size: int


def class_representatives(p: int) -> list[ConjClassInfo]:
    """Closed-form conjugacy data for SL(2, F_p): keys, reps and sizes.

    Order: identity, -identity, the two unipotent classes (plus then minus),
    their negatives, then semisimple classes by trace.  Sizes: the central
    classes are singletons, each (+/-)unipotent class has (p^2-1)/2 elements,
    split semisimple classes have p(p+1) and nonsplit ones p(p-1).
    """
    require_odd_prime(p)
    eps = smallest_nonresidue(p)
    half = (p * p - 1) // 2
    out = [
        ConjClassInfo(("one",), (1, 0, 0, 1), 1),
        ConjClassInfo(("minus_one",), (p - 1, 0, 0, p - 1), 1),
        ConjClassInfo(("unip", 1), (1, 1, 0, 1), half),
        ConjClassInfo(("unip", -1), (1, eps, 0, 1), half),
        ConjClassInfo(("neg_unip", 1), (p - 1, p - 1, 0, p - 1), half),
        ConjClassInfo(("neg_unip", -1), (p - 1, p - eps, 0, p - 1), half),
    ]
    for t in range(p):
        if t in (2 % p, -2 % p):
            continue
        disc = legendre_symbol(t * t - 4, p)
        size = p * (p + 1) if disc == 1 else p * (p - 1)
        out.append(ConjClassInfo(("ss", t), (0, p - 1, 1, t), size))
    assert sum(c.size for c in out) == sl2_order(p)
    return out


@lru_cache(maxsize=None)
def conjugacy_classes_brute(p: int) -> tuple[tuple, dict]:
    """Brute-force conjugacy classes of SL(2, F_p) by orbit closure.

    Returns (classes, index_of) where classes is a tuple of sorted member
    tuples and index_of maps each group element tuple to its class index.
    Independent of the closed form above; used as an oracle and by the
    character-table machinery.
    """
    gens = [(0, p - 1, 1, 0), (1, 1, 0, 1)]
    gens = gens + [_inv_tuple(g, p) for g in gens]
    index_of: dict[tuple, int] = {}
    classes = []
    for x in sl2_tuples(p):
        if x in index_of:
            continue
        orbit = {x}
        frontier = [x]
        while frontier:
            y = frontier.pop()
            for k in gens:
                z = _mul_tuple(_mul_tuple(k, y, p), _inv_tuple(k, p), p)
                if z not in orbit:
                    orbit.add(z)
                    frontier.append(z)
        idx = len(classes)
        classes.append(tuple(sorted(orbit)))
        for y in orbit:
            index_of[y] = idx
    return tuple(classes), index_of


# ---------------------------------------------------------------------------
# parahoric models
# ---------------------------------------------------------------------------

class ParahoricModel(Enum):
    """The two parahoric coordinate models of SL(2, Q_p) used here."""
    STANDARD = "standard"
    NONSTANDARD = "nonstandard"


def _require_padic_entries(g: SL2Elem) -> int:
    if not isinstance(g.a, PadicApprox):
        raise TypeError("parahoric reductions need capped p-adic entries")
    return g.a.p


def to_model_coords(g: SL2Elem, model: ParahoricModel) -> tuple:
    """The four model coordinates of g (PadicApprox each).

    Standard coordinates are the matrix entries themselves; nonstandard
    coordinates rescale the off-diagonal entries by one power of p
    ((a, b, c, d) -> (a, p*b, c/p, d)), identifying the nonstandard
    parahoric with SL(2, Z_p).
    """
    _require_padic_entries(g)
    if model is ParahoricModel.STANDARD:
        return (g.a, g.b, g.c, g.d)
    return (g.a, g.b.shift(1), g.c.shift(-1), g.d)


def in_model(g: SL2Elem, model: ParahoricModel) -> bool:
    """Whether g lies in the chosen parahoric (all model coordinates integral)."""
    coords = to_model_coords(g, model)
    return all(x.is_zero or x.valuation >= 0 for x in coords)


def reduce_to_model(g: SL2Elem, model: ParahoricModel, n: int) -> SL2Elem:
    """The image of g in SL(2, Z/p^n) through the model coordinates.

    Raises NotInModel when g is outside the parahoric and
    InsufficientPrecision when the entries do not pin down n digits.
    """
    p = _require_padic_entries(g)
    coords = to_model_coords(g, model)
    ring = ZpnRing(p, n)
    return SL2Elem(*(ring.element(x.reduce_mod(n)) for x in coords))


def reduce_to_residue(g: SL2Elem, model: ParahoricModel, n: int = 1) -> SL2Elem:
    """The residue-field image of g through the model coordinates.

    Demands one digit of headroom beyond level n (absolute precision at
    least n+1 on every model coordinate) so that downstream level-n
    computations on the same element cannot silently disagree with the
    residue taken here.
    """
    p = _require_padic_entries(g)
    coords = to_model_coords(g, model)
    for x in coords:
        if x.abs_precision < n + 1:
            raise InsufficientPrecision(
                f"need absolute precision >= {n + 1}, have {x.abs_precision}")
    ring = FpRing(p)
    return SL2Elem(*(ring.element(x.reduce_mod(1)) for x in coords))
