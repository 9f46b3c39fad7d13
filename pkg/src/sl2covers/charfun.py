"""Class functions on SL(2, F_p), trace-of-Frobenius functions, and their
inflations to Hecke-style kernels on SL(2, Z/p^n) through a parahoric model.

A ClassFn stores one value per conjugacy-class key, so conjugation invariance
holds by construction.  The distinguished trace functions take the value +1
on the plus unipotent class, -1 on the minus one and 0 elsewhere; they are
built from the covering-space side (Frobenius on fibers) and cross-checked
against the closed-form square-class rule on every regular unipotent element.

A HeckeFn is a finitely supported function on SL(2, Z/p^n) read through the
coordinates of a parahoric model; evaluating it at a p-adic group element
reduces the element through the model (extension by zero outside the
parahoric).
"""

from __future__ import annotations

import json
from numbers import Integral

from .covers import CoverId, DeckChar, DeckElem, stalk_trace
from .errors import LevelMismatch, ModelMismatch, NotInModel
from .exactnum import FpElem, legendre_symbol
from .slgroup import (ParahoricModel, SL2Elem, _class_key_tuple,
                      _classify_tuple, class_key, class_representatives,
                      reduce_to_model, sl2_order, sl2_tuples, UnipClass)

_ZERO_TOL = 1e-9


def _is_exact(value) -> bool:
    return isinstance(value, Integral)


class ClassFn:
    """A conjugation-invariant function on SL(2, F_p), stored by class key."""

    __slots__ = ("p", "_values")

    def __init__(self, p: int, values: dict):
        self.p = p
        cleaned = {}
        valid = {i.key for i in class_representatives(p)}
        for key, val in values.items():
            if key not in valid:
                raise ValueError(f"unknown conjugacy-class key {key!r}")
            if val != 0:
                cleaned[key] = val
        self._values = cleaned

    def evaluate_key(self, key: tuple):
        return self._values.get(key, 0)

    def evaluate(self, g: SL2Elem):
        return self._values.get(class_key(g), 0)

    def evaluate_tuple(self, t: tuple):
        return self._values.get(_class_key_tuple(t, self.p), 0)

    def support(self) -> tuple:
        return tuple(sorted(self._values))

    def values(self) -> dict:
        return dict(self._values)

    @property
    def is_integer_valued(self) -> bool:
        return all(_is_exact(v) for v in self._values.values())

    def __add__(self, other: "ClassFn") -> "ClassFn":
        if not isinstance(other, ClassFn):
            return NotImplemented
        if other.p != self.p:
            raise ValueError("mixed primes")
        keys = set(self._values) | set(other._values)
        return ClassFn(self.p, {k: self.evaluate_key(k) + other.evaluate_key(k)
                                for k in keys})

    def __sub__(self, other: "ClassFn") -> "ClassFn":
        return self + (-1) * other

    def __rmul__(self, scalar) -> "ClassFn":
        return ClassFn(self.p, {k: scalar * v for k, v in self._values.items()})

    def __eq__(self, other):
        if not isinstance(other, ClassFn):
            return NotImplemented
        return self.p == other.p and self._values == other._values

    def __hash__(self):
        return hash((ClassFn, self.p, tuple(sorted(self._values.items()))))

    def __repr__(self):
        return f"ClassFn(p={self.p}, {self._values})"


def build_trace_fn(chi: DeckChar, p: int) -> ClassFn:
    """The trace-of-Frobenius class function attached to a deck character.

    On a regular unipotent class the Frobenius permutes each cover fiber
    through a deck element (trivially on the plus class, by the flip on the
    minus class); the function records chi of that element and vanishes on
    every other class.  The closed form is rechecked against the stalk
    computation on every regular unipotent element before returning.
    """
    fn = ClassFn(p, {("unip", 1): chi(DeckElem.IDENTITY),
                     ("unip", -1): chi(DeckElem.FLIP)})
    ring_cache = {}
    for t in sl2_tuples(p):
        cls = _classify_tuple(t, p)
        if cls not in (UnipClass.PLUS, UnipClass.MINUS):
            continue
        u = SL2Elem(*(ring_cache.setdefault(v, FpElem(v, p)) for v in t),
                    check=False)
        via_stalk = stalk_trace(chi, CoverId.STANDARD, u)
        assert via_stalk == fn.evaluate_tuple(t), (
            f"stalk/closed-form disagreement at {t}")
    return fn


def is_cuspidal(fn: ClassFn, tol: float = _ZERO_TOL) -> bool:
    """Whether every unipotent-radical coset sum of fn vanishes.

    Checks sum_t fn(x * u(t)) = 0 for every x in SL(2, F_p), with u(t) the
    upper unipotent matrices.  The sums are exact when fn is integer-valued
    and tolerance-bounded otherwise.
    """
    p = fn.p
    values = {t: fn.evaluate_tuple(t) for t in sl2_tuples(p)}
    exact = fn.is_integer_valued
    for (a, b, c, d) in sl2_tuples(p):
        total = 0
        for t in range(p):
            total += values[(a, (a * t + b) % p, c, (c * t + d) % p)]
        if exact:
            if total != 0:
                return False
        elif abs(total) > tol * max(1.0, float(sl2_order(p))):
            return False
    return True


# ---------------------------------------------------------------------------
# Hecke kernels at finite level
# ---------------------------------------------------------------------------

class HeckeFn:
    """A finitely supported function on SL(2, Z/p^n) in parahoric coordinates."""

    __slots__ = ("p", "model", "level", "_entries")

    def __init__(self, p: int, model: ParahoricModel, level: int,
                 entries: dict):
        self.p = p
        self.model = ParahoricModel(model)
        self.level = level
        q = p ** level
        cleaned = {}
        for t, val in entries.items():
            t = tuple(x % q for x in t)
            if (t[0] * t[3] - t[1] * t[2]) % q != 1:
                raise ValueError(f"support point {t} is not in SL(2, Z/p^{level})")
            if val != 0:
                cleaned[t] = val
        self._entries = cleaned

    # -- lookups ------------------------------------------------------------

    def value(self, t: tuple):
        q = self.p ** self.level
        return self._entries.get(tuple(x % q for x in t), 0)

    def evaluate(self, g):
        if isinstance(g, SL2Elem):
            g = tuple(x.v for x in g.entries())
        return self.value(g)

    def evaluate_padic(self, g: SL2Elem):
        """Evaluate at a p-adic group element: reduce through the model,
        extending by zero outside the parahoric."""
        try:
            reduced = reduce_to_model(g, self.model, self.level)
        except NotInModel:
            return 0
        return self.evaluate(reduced)

    def support(self) -> tuple:
        return tuple(sorted(self._entries))

    def entries(self) -> dict:
        return dict(self._entries)

    @property
    def support_size(self) -> int:
        return len(self._entries)

    @property
    def is_integer_valued(self) -> bool:
        return all(_is_exact(v) for v in self._entries.values())

    # -- algebra ------------------------------------------------------------

    def _check_compatible(self, other: "HeckeFn"):
        if self.p != other.p or self.model is not other.model:
            raise ModelMismatch("kernels live on different models")
        if self.level != other.level:
            raise LevelMismatch("kernels live at different levels")

    def __add__(self, other: "HeckeFn") -> "HeckeFn":
        if not isinstance(other, HeckeFn):
            return NotImplemented
        self._check_compatible(other)
        keys = set(self._entries) | set(other._entries)
        return HeckeFn(self.p, self.model, self.level,
                       {k: self.value(k) + other.value(k) for k in keys})

    def __rmul__(self, scalar) -> "HeckeFn":
        return HeckeFn(self.p, self.model, self.level,
                       {k: scalar * v for k, v in self._entries.items()})

    def conjugated_by(self, k: tuple) -> "HeckeFn":
        """The kernel g -> f(k^{-1} g k) (support conjugated by k)."""
        q = self.p ** self.level
        a, b, c, d = (x % q for x in k)
        if (a * d - b * c) % q != 1:
            raise ValueError("conjugator must lie in SL(2, Z/p^n)")
        inv = (d, -b % q, -c % q, a)
        out = {}
        for t, val in self._entries.items():
            s = _mul4(k, _mul4(t, inv, q), q)
            out[s] = val
        return HeckeFn(self.p, self.model, self.level, out)

    def __eq__(self, other):
        if not isinstance(other, HeckeFn):
            return NotImplemented
        return (self.p == other.p and self.model is other.model
                and self.level == other.level
                and self._entries == other._entries)

    def __repr__(self):
        return (f"HeckeFn(p={self.p}, model={self.model.value}, "
                f"level={self.level}, support={self.support_size})")

    # -- serialization ------------------------------------------------------

    def to_json(self) -> str:
        entries = []
        for t in self.support():
            v = self._entries[t]
            z = complex(v)
            entries.append([list(t), [z.real, z.imag]])
        payload = {"p": self.p, "model": self.model.value,
                   "level": self.level, "entries": entries}
        return json.dumps(payload, separators=(",", ":"))

    @classmethod
    def from_json(cls, text: str) -> "HeckeFn":
        payload = json.loads(text)
        entries = {}
        for coords, (re, im) in payload["entries"]:
            if im == 0 and float(re).is_integer():
                val = int(re)
            else:
                val = complex(re, im)
            entries[tuple(coords)] = val
        return cls(payload["p"], ParahoricModel(payload["model"]),
                   payload["level"], entries)


def _mul4(g, h, m):
    a, b, c, d = g
    e, f, i, j = h
    return ((a * e + b * i) % m, (a * f + b * j) % m,
            (c * e + d * i) % m, (c * f + d * j) % m)


def inflate(fn: ClassFn, model: ParahoricModel, n: int) -> HeckeFn:
    """Inflate a residue class function to level n through a parahoric model.

    The resulting kernel sends a point of SL(2, Z/p^n) (in model
    coordinates) to fn of its reduction mod p; its support is the preimage
    of fn's support.
    """
    entries = {}
    for t in sl2_tuples(fn.p, n):
        val = fn.evaluate_tuple(tuple(x % fn.p for x in t))
        if val != 0:
            entries[t] = val
    return HeckeFn(fn.p, model, n, entries)


def evaluate_hecke(fn: HeckeFn, g: SL2Elem):
    """Evaluate an inflated kernel at a p-adic group element."""
    return fn.evaluate_padic(g)
