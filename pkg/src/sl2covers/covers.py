"""Square-root double covers of the regular unipotent locus of SL(2).

The covering charts send a plane point (x, y) to the group element

    (1 - x*y,  x^2;  -y^2,  1 + x*y)            (plain chart)
    (1 - x*y,  x^2/p; -p*y^2, 1 + x*y)          (rescaled chart)

each a determinant-one matrix of trace 2.  The rescaled chart is the one
adapted to the nonstandard parahoric model: its middle coordinates match the
nonstandard model coordinates of the same group element.  Either chart can be
taken with coefficients in the base field or with sqrt(p) adjoined; adjoining
sqrt(p) doubles the deck group from {identity, point flip} to a Klein
four-group by adding the coefficient conjugation sqrt(p) -> -sqrt(p).

Over the residue field the plain chart restricts to a two-to-one cover of the
regular unipotent locus of SL(2, F_p), with fibers in F_{p^2}-points; the
arithmetic Frobenius permutes each fiber through a deck element, and pairing
that element against a deck-group character yields the trace functions
consumed by the rest of the package.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .errors import (DivisionByNonUnit, NotACoverMorphism,
                     NotRegularUnipotent)
from .exactnum import (FpElem, Fp2Elem, PadicApprox, QuadRat, ZpnElem,
                       conj_like, is_odd_prime, one_like, sqrt_in_fp2)
from .slgroup import SL2Elem, UnipClass, classify_regular_unipotent

MORPHISM_SAMPLE_COUNT = 20


# ---------------------------------------------------------------------------
# deck transformations
# ---------------------------------------------------------------------------

class DeckElem(Enum):
    """Deck transformations of the covers, encoded by two bits.

    The first bit negates both point coordinates; the second conjugates the
    coefficients (sqrt(p) -> -sqrt(p) over the extension, Frobenius on
    F_{p^2} fibers).  Composition is bitwise xor, so the four elements form
    a Klein four-group and each is its own inverse.
    """
    IDENTITY = (0, 0)
    FLIP = (1, 0)
    CONJ = (0, 1)
    FLIP_CONJ = (1, 1)

    @property
    def flip_bit(self) -> int:
        return self.value[0]

    @property
    def conj_bit(self) -> int:
        return self.value[1]

    def compose(self, other: "DeckElem") -> "DeckElem":
        return DeckElem((self.flip_bit ^ other.flip_bit,
                         self.conj_bit ^ other.conj_bit))

    def apply(self, point: tuple) -> tuple:
        x, y = point
        if self.conj_bit:
            x, y = conj_like(x), conj_like(y)
        if self.flip_bit:
            x, y = -x, -y
        return (x, y)


KLEIN_FOUR = (DeckElem.IDENTITY, DeckElem.FLIP, DeckElem.CONJ,
              DeckElem.FLIP_CONJ)
BASE_DECK = (DeckElem.IDENTITY, DeckElem.FLIP)


class CoverId(Enum):
    """The four covering charts: plain/rescaled, base/extension coefficients."""
    STANDARD = "standard"
    NONSTANDARD = "nonstandard"
    STANDARD_EXT = "standard_ext"
    NONSTANDARD_EXT = "nonstandard_ext"

    @property
    def rescaled(self) -> bool:
        return self in (CoverId.NONSTANDARD, CoverId.NONSTANDARD_EXT)

    @property
    def over_extension(self) -> bool:
        return self in (CoverId.STANDARD_EXT, CoverId.NONSTANDARD_EXT)

    @property
    def deck_group(self) -> tuple:
        return KLEIN_FOUR if self.over_extension else BASE_DECK


# ---------------------------------------------------------------------------
# deck-group characters
# ---------------------------------------------------------------------------

class DeckChar:
    """A {+1, -1}-valued character of a deck group."""

    __slots__ = ("_table",)

    def __init__(self, table: dict):
        for elem, value in table.items():
            if not isinstance(elem, DeckElem) or value not in (1, -1):
                raise ValueError("characters take values +/-1 on deck elements")
        if DeckElem.IDENTITY not in table or table[DeckElem.IDENTITY] != 1:
            raise ValueError("a character sends the identity to +1")
        self._table = dict(table)

    def __call__(self, elem: DeckElem) -> int:
        try:
            return self._table[elem]
        except KeyError:
            raise ValueError(f"{elem} is outside this character's deck group") \
                from None

    @property
    def domain(self) -> tuple:
        return tuple(e for e in KLEIN_FOUR if e in self._table)

    def table(self) -> dict:
        return dict(self._table)

    def is_multiplicative(self) -> bool:
        dom = self.domain
        return all(self(a.compose(b)) == self(a) * self(b)
                   for a in dom for b in dom
                   if a.compose(b) in self._table)

    def compose_with(self, deck_map: dict) -> "DeckChar":
        """Pull back through a deck-group map: (chi . m)(phi) = chi(m(phi))."""
        return DeckChar({phi: self(deck_map[phi]) for phi in deck_map})

    def restrict(self, members=BASE_DECK) -> "DeckChar":
        return DeckChar({e: self(e) for e in members})

    def __eq__(self, other):
        if not isinstance(other, DeckChar):
            return NotImplemented
        return self._table == other._table

    def __hash__(self):
        return hash(tuple(sorted((e.value, v) for e, v in self._table.items())))

    def __repr__(self):
        vals = ", ".join(f"{e.name}:{v:+d}" for e, v in
                         sorted(self._table.items(), key=lambda t: t[0].value))
        return f"DeckChar({vals})"


class LocalSystem(Enum):
    """The two distinguished rank-one systems on the covers.

    PLAIN descends through the plain chart's integral structure (it pairs
    with the standard parahoric model); RESCALED is its pullback under the
    coordinate rescaling b -> b/p and pairs with the nonstandard model.
    """
    PLAIN = "plain"
    RESCALED = "rescaled"


_EXT_TABLES = {
    (LocalSystem.PLAIN, CoverId.STANDARD_EXT): (1, -1, 1, -1),
    (LocalSystem.PLAIN, CoverId.NONSTANDARD_EXT): (1, -1, -1, 1),
    (LocalSystem.RESCALED, CoverId.STANDARD_EXT): (1, -1, -1, 1),
    (LocalSystem.RESCALED, CoverId.NONSTANDARD_EXT): (1, -1, 1, -1),
}


def deck_character(system: LocalSystem, cover: CoverId) -> DeckChar:
    """The character through which the chosen system sees the cover's deck group.

    On either base-coefficient chart both systems restrict to the sign
    character {identity: +1, flip: -1}.  Over the extension each system
    fixes one of the two conjugation-type elements and negates the other,
    and the two systems make *opposite* choices on each chart -- the
    asymmetry that the whole package is about.
    """
    if not cover.over_extension:
        return DeckChar({DeckElem.IDENTITY: 1, DeckElem.FLIP: -1})
    values = _EXT_TABLES[(system, cover)]
    return DeckChar(dict(zip(KLEIN_FOUR, values)))


# ---------------------------------------------------------------------------
# the covering charts
# ---------------------------------------------------------------------------

def _infer_p(values, p):
    for v in values:
        if isinstance(v, (FpElem, Fp2Elem, ZpnElem, PadicApprox)):
            vp = v.p
            if p is not None and p != vp:
                raise ValueError("inconsistent primes")
            p = vp
        elif isinstance(v, QuadRat) and p is None and is_odd_prime(v.d):
            p = v.d
    if p is None:
        raise TypeError("the prime p cannot be inferred; pass it explicitly")
    return p


def _div_p(x, p: int):
    if isinstance(x, int):
        return Fraction(x, p)
    if isinstance(x, Fraction):
        return x / p
    if isinstance(x, QuadRat):
        return x / p
    if isinstance(x, PadicApprox):
        return x.shift(-1)
    if isinstance(x, (FpElem, ZpnElem, Fp2Elem)):
        raise DivisionByNonUnit(
            "the rescaled chart divides by p, which is not invertible "
            f"in {type(x).__name__}")
    raise TypeError(f"cannot divide {type(x).__name__} by p")


def _mul_p(x, p: int):
    if isinstance(x, PadicApprox):
        return x.shift(1)
    if isinstance(x, (FpElem, ZpnElem, Fp2Elem)):
        raise DivisionByNonUnit(
            "the rescaled chart has no chart over this ring (p is not a unit)")
    return x * p

def cover_map(cover: CoverId, point: tuple, p: int | None = None) -> SL2Elem:
    """Apply the covering chart to a plane point, landing in SL(2).

    The image always has determinant one and trace two.  The rescaled charts
    divide the upper-right coordinate by p and multiply the lower-left one
    by p, so they refuse residue rings where p is not invertible
    (DivisionByNonUnit).
    """
    x, y = point
    p = _infer_p((x, y), p)
    one = one_like(x) * one_like(y)
    xy = x * y
    b = x * x
    c = -(y * y)
    if cover.rescaled:
        b = _div_p(b, p)
        c = _mul_p(c, p)
    return SL2Elem(one - xy, b, c, one + xy)


def fiber_with_frobenius(cover: CoverId, u: SL2Elem) -> tuple:
    """The two F_{p^2}-points of the residue fiber over u, plus the Frobenius.

    u must be a regular unipotent element of SL(2, F_p); the fiber is
    computed from the square root of the upper-right entry when that entry
    is nonzero, otherwise from the negated lower-left entry.  The returned
    deck element says how the arithmetic Frobenius x -> x^p permutes the
    fiber: trivially when the entry's square class is +1, by the point flip
    when it is -1.
    """
    if not isinstance(u.a, FpElem):
        raise TypeError("residue fibers live over SL(2, F_p) elements")
    if cover.rescaled:
        raise DivisionByNonUnit(
            "the rescaled chart does not reduce to the residue field; "
            "only the plain chart has residue fibers")
    cls = classify_regular_unipotent(u)
    if cls not in (UnipClass.PLUS, UnipClass.MINUS):
        raise NotRegularUnipotent(
            f"fiber requested over a {cls.value} element")
    p = u.a.p
    one_minus_a = (FpElem(1, p) - u.a).to_fp2()
    if u.b.v != 0:
        x = sqrt_in_fp2(u.b)
        y = one_minus_a / x
    else:
        y = sqrt_in_fp2(-u.c)
        x = one_minus_a / y
    # chart consistency: the computed point really does map to u
    assert x * x == u.b.to_fp2() and -(y * y) == u.c.to_fp2()
    assert Fp2Elem(1, 0, p) - x * y == u.a.to_fp2()
    point = (x, y)
    flipped = (-x, -y)
    frob = (x.frobenius(), y.frobenius())
    if frob == point:
        deck = DeckElem.IDENTITY
    elif frob == flipped:
        deck = DeckElem.FLIP
    else:  # pragma: no cover - xy is Frobenius-stable, so this cannot happen
        raise AssertionError("Frobenius left the fiber")
    return (point, flipped), deck


def stalk_trace(chi: DeckChar, cover: CoverId, u: SL2Elem) -> int:
    """Trace of Frobenius on the stalk at u of the system with character chi.

    For rank-one systems this is chi evaluated on the deck element through
    which Frobenius permutes the fiber over u.
    """
    _, deck = fiber_with_frobenius(cover, u)
    return chi(deck)


def equivariance_check(g: SL2Elem, point: tuple, cover: CoverId,
                       p: int | None = None) -> bool:
    """Whether the chart intertwines the linear action upstairs with conjugation.

    Upstairs g acts linearly on plane points, (x, y) -> (a*x + b*y, c*x + d*y);
    downstairs it acts by conjugation.  The chart must send the one action to
    the other.
    """
    x, y = point
    moved = (g.a * x + g.b * y, g.c * x + g.d * y)
    lhs = cover_map(cover, moved, p)
    rhs = cover_map(cover, point, p).conjugate_by(g)
    return lhs == rhs


# ---------------------------------------------------------------------------
# morphisms between covers
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CoverMorphism:
    """A diagonal map of covering spaces: (x, y) -> (scale_x * x, scale_y * y),
    sending points of the source chart to points of the target chart."""
    source: CoverId
    target: CoverId
    scale_x: object
    scale_y: object

    def map_point(self, point: tuple) -> tuple:
        x, y = point
        return (self.scale_x * x, self.scale_y * y)


@dataclass(frozen=True)
class MorphismCheck:
    """Outcome of a scaling-compatibility check, with a witness on failure."""
    ok: bool
    witness: tuple | None = None
    expected: SL2Elem | None = None
    got: SL2Elem | None = None


def _rational_samples():
    return [(i, i + 1) for i in range(1, MORPHISM_SAMPLE_COUNT + 1)]


def cover_morphism_check(source: CoverId, target: CoverId, scale_x, scale_y,
                         p: int) -> MorphismCheck:
    """Test whether a diagonal scaling matches the source chart to the target.

    The relation checked is source_chart(scale * point) == target_chart(point)
    on the deterministic sample points (i, i+1), i = 1..20: the substitution
    that would exhibit the target chart as a rescaling of the source one.
    Returns a witness for the first failing sample instead of raising.
    """
    for sx, sy in _rational_samples():
        scaled = (scale_x * sx, scale_y * sy)
        lhs = cover_map(source, scaled, p)
        rhs = cover_map(target, (sx, sy), p)
        if not lhs == rhs:
            return MorphismCheck(False, (sx, sy), rhs, lhs)
    return MorphismCheck(True)


def _deck_matching_samples(p: int):
    # points with a nonzero sqrt(p) part, so coefficient conjugation is
    # visible pointwise and the matching below has unique solutions
    return [(QuadRat(i, i + 1, p), QuadRat(i + 2, -(i + 3), p))
            for i in range(1, MORPHISM_SAMPLE_COUNT + 1)]


def induced_deck_map(morphism: CoverMorphism, p: int | None = None) -> dict:
    """The deck-group correspondence induced by a morphism of covers.

    First validates the covering relation target_chart(h(point)) ==
    source_chart(point) on the deterministic samples (raising
    NotACoverMorphism otherwise), then matches each source deck element phi
    to the unique target deck element psi with psi . h == h . phi, testing on
    points with an irrational part so that conjugation-type elements are
    separated.  The result maps the source deck group bijectively.
    """
    p = _infer_p((morphism.scale_x, morphism.scale_y), p)
    for sample in _rational_samples():
        lhs = cover_map(morphism.target, morphism.map_point(sample), p)
        rhs = cover_map(morphism.source, sample, p)
        if not lhs == rhs:
            raise NotACoverMorphism(
                f"chart relation fails at {sample}: {lhs!r} != {rhs!r}")
    samples = _deck_matching_samples(p)
    mapping = {}
    for phi in morphism.source.deck_group:
        matches = []
        for psi in morphism.target.deck_group:
            if all(psi.apply(morphism.map_point(pt))
                   == morphism.map_point(phi.apply(pt)) for pt in samples):
                matches.append(psi)
        if len(matches) != 1:
            raise NotACoverMorphism(
                f"deck matching for {phi} is not unique: {matches}")
        mapping[phi] = matches[0]
    if len(set(mapping.values())) != len(mapping):
        raise NotACoverMorphism("induced deck map is not injective")
    return mapping


# ---------------------------------------------------------------------------
# rational-obstruction helpers
# ---------------------------------------------------------------------------

def scaling_constraints(source: CoverId, target: CoverId,
                        p: int) -> tuple[Fraction, Fraction]:
    """The forced squares (scale_x^2, scale_y^2) for a diagonal chart match.

    Comparing the two charts coordinate by coordinate: the diagonal entries
    force scale_x * scale_y = 1, the upper-right coordinates force
    scale_x^2 = (target b-factor)/(source b-factor) and the lower-left ones
    the reciprocal for scale_y.  A diagonal morphism with coefficients in a
    given field exists iff these squares have roots there.
    """
    sb = Fraction(1, p) if source.rescaled else Fraction(1)
    tb = Fraction(1, p) if target.rescaled else Fraction(1)
    cx2 = tb / sb
    cy2 = 1 / cx2
    return cx2, cy2


def is_rational_square(q: Fraction) -> bool:
    if q < 0:
        return False
    q = Fraction(q)
    n, d = q.numerator, q.denominator
    return math.isqrt(n) ** 2 == n and math.isqrt(d) ** 2 == d


def has_rational_diagonal_scaling(source: CoverId, target: CoverId,
                                  p: int) -> bool:
    """Whether any rational diagonal scaling matches the two charts."""
    cx2, cy2 = scaling_constraints(source, target, p)
    return is_rational_square(cx2) and is_rational_square(cy2)
