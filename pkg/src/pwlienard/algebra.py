"""Exact scalar arithmetic over Q[sqrt(2), pi, 1/pi] and half-power polynomials in h.

A :class:`RingElem` is a finite Q-linear combination of monomials
``2^(e/2) * pi^p`` with ``e in {0, 1}`` after normalization (even powers of
sqrt(2) fold into the rational factor) and ``p`` any integer.  A
:class:`HalfPowerPoly` is a finite sum ``sum_k c_k h^(k/2)`` stored sparsely
by the doubled exponent ``k``, which keeps all keys integral.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .errors import NegativeEnergy

_SQRT2 = math.sqrt(2.0)


def _as_fraction(q) -> Fraction:
    if isinstance(q, Fraction):
        return q
    if isinstance(q, int):
        return Fraction(q)
    if isinstance(q, float):
        # exact binary expansion, no rounding
        return Fraction(q)
    if isinstance(q, str):
        return Fraction(q)
    raise TypeError(f"cannot interpret {q!r} as a rational")


class RingElem:
    """Exact element of the ring Q[sqrt(2), pi, pi^-1].

    Stored as a dict mapping ``(e, p)`` to a nonzero Fraction, with
    ``e in {0, 1}``.  Instances are immutable; all operators return new
    elements in canonical form.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        canon: dict[tuple[int, int], Fraction] = {}
        if terms:
            for (e, p), q in terms.items():
                q = _as_fraction(q)
                if q == 0:
                    continue
                # fold even powers of sqrt(2) into the rational factor
                q *= Fraction(2) ** (e // 2)
                key = (e % 2, p)
                q = canon.get(key, Fraction(0)) + q
                if q == 0:
                    canon.pop(key, None)
                else:
                    canon[key] = q
        self.terms = canon

    # -- constructors ------------------------------------------------------

    @classmethod
    def term(cls, q, e: int = 0, p: int = 0) -> "RingElem":
        return cls({(e, p): _as_fraction(q)})

    @classmethod
    def rational(cls, q) -> "RingElem":
        return cls({(0, 0): _as_fraction(q)})

    @classmethod
    def zero(cls) -> "RingElem":
        return cls()

    @classmethod
    def one(cls) -> "RingElem":
        return cls({(0, 0): Fraction(1)})

    @classmethod
    def from_float(cls, x: float) -> "RingElem":
        """Promote a float exactly (binary expansion) to a rational element."""
        return cls.rational(Fraction(x))

    @classmethod
    def coerce(cls, x) -> "RingElem":
        if isinstance(x, RingElem):
            return x
        return cls.rational(_as_fraction(x))

    # -- predicates --------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_rational(self) -> bool:
        return all(key == (0, 0) for key in self.terms)

    def as_rational(self) -> Fraction:
        """The value as a plain Fraction; raises if sqrt(2) or pi survive."""
        if not self.terms:
            return Fraction(0)
        if not self.is_rational():
            raise ValueError(f"{self!r} is not rational")
        return self.terms[(0, 0)]

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other) -> "RingElem":
        other = RingElem.coerce(other)
        merged = dict(self.terms)
        for key, q in other.terms.items():
            merged[key] = merged.get(key, Fraction(0)) + q
        return RingElem({k: v for k, v in merged.items() if v != 0})

    __radd__ = __add__

    def __neg__(self) -> "RingElem":
        return RingElem({k: -v for k, v in self.terms.items()})

    def __sub__(self, other) -> "RingElem":
        return self + (-RingElem.coerce(other))

    def __rsub__(self, other) -> "RingElem":
        return RingElem.coerce(other) + (-self)

    def __mul__(self, other) -> "RingElem":
        other = RingElem.coerce(other)
        out: dict[tuple[int, int], Fraction] = {}
        for (e1, p1), q1 in self.terms.items():
            for (e2, p2), q2 in other.terms.items():
                key = (e1 + e2, p1 + p2)
                out[key] = out.get(key, Fraction(0)) + q1 * q2
        return RingElem(out)

    __rmul__ = __mul__

    def invert_monomial(self) -> "RingElem":
        """Inverse of a single-term element (q * 2^(e/2) * pi^p)."""
        if len(self.terms) != 1:
            raise ValueError("can only invert single-monomial elements")
        ((e, p), q), = self.terms.items()
        # (2^(1/2))^-1 = 2^(-1/2); normalization folds the even part
        return RingElem({(-e, -p): 1 / q})

    def __eq__(self, other) -> bool:
        if not isinstance(other, RingElem):
            try:
                other = RingElem.coerce(other)
            except TypeError:
                return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def to_float(self) -> float:
        total = 0.0
        for (e, p), q in self.terms.items():
            total += float(q) * (_SQRT2 ** e) * (math.pi ** p)
        return total

    # -- serialization -----------------------------------------------------

    def to_json(self) -> list:
        out = []
        for (e, p) in sorted(self.terms):
            q = self.terms[(e, p)]
            out.append({"q": f"{q.numerator}/{q.denominator}", "e": e, "p": p})
        return out

    @classmethod
    def from_json(cls, data) -> "RingElem":
        if isinstance(data, (int, float, str)):
            return cls.rational(_as_fraction(data))
        terms: dict[tuple[int, int], Fraction] = {}
        for entry in data:
            key = (int(entry.get("e", 0)), int(entry.get("p", 0)))
            terms[key] = terms.get(key, Fraction(0)) + Fraction(entry["q"])
        return cls(terms)

    def __repr__(self):
        if not self.terms:
            return "RingElem(0)"
        parts = []
        for (e, p) in sorted(self.terms):
            q = self.terms[(e, p)]
            s = str(q)
            if e:
                s += "*sqrt2"
            if p:
                s += f"*pi^{p}" if p != 1 else "*pi"
            parts.append(s)
        return "RingElem(" + " + ".join(parts) + ")"


# module-level constants
SQRT2 = RingElem.term(1, e=1)
PI = RingElem.term(1, p=1)
INV_PI = RingElem.term(1, p=-1)


def ring_normalize(x: RingElem) -> RingElem:
    """Re-canonicalize an element.  Idempotent; value unchanged."""
    return RingElem(dict(x.terms))


def ring_add(x: RingElem, y: RingElem) -> RingElem:
    return x + y


def ring_mul(x: RingElem, y: RingElem) -> RingElem:
    return x * y


class HalfPowerPoly:
    """Finite sum sum_k c_k h^(k/2) with exact RingElem coefficients.

    Keys are the doubled exponents k >= 0; zero coefficients are never stored.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=None):
        canon: dict[int, RingElem] = {}
        if coeffs:
            for k, c in coeffs.items():
                c = RingElem.coerce(c)
                if not c.is_zero():
                    if k < 0:
                        raise ValueError("negative half-power exponent")
                    canon[int(k)] = c
        self.coeffs = canon

    @classmethod
    def zero(cls) -> "HalfPowerPoly":
        return cls()

    @classmethod
    def monomial(cls, k: int, c) -> "HalfPowerPoly":
        return cls({k: RingElem.coerce(c)})

    def is_zero(self) -> bool:
        return not self.coeffs

    def degree_key(self):
        """Largest doubled exponent present, or None for the zero polynomial."""
        return max(self.coeffs) if self.coeffs else None

    def __add__(self, other: "HalfPowerPoly") -> "HalfPowerPoly":
        merged = dict(self.coeffs)
        for k, c in other.coeffs.items():
            merged[k] = merged.get(k, RingElem.zero()) + c
        return HalfPowerPoly(merged)

    def __sub__(self, other: "HalfPowerPoly") -> "HalfPowerPoly":
        return self + other.scale(-1)

    def __mul__(self, other: "HalfPowerPoly") -> "HalfPowerPoly":
        out: dict[int, RingElem] = {}
        for k1, c1 in self.coeffs.items():
            for k2, c2 in other.coeffs.items():
                k = k1 + k2
                out[k] = out.get(k, RingElem.zero()) + c1 * c2
        return HalfPowerPoly(out)

    def scale(self, c) -> "HalfPowerPoly":
        c = RingElem.coerce(c)
        return HalfPowerPoly({k: v * c for k, v in self.coeffs.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, HalfPowerPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset((k, v) for k, v in self.coeffs.items()))

    def eval(self, h: float) -> float:
        if h < 0:
            raise NegativeEnergy(f"h = {h} < 0")
        s = math.sqrt(h)
        return sum(c.to_float() * s ** k for k, c in self.coeffs.items())

    def to_s_poly(self):
        """Dense float coefficients of Q(s) with Q(sqrt(h)) = P(h), ascending in s."""
        deg = self.degree_key()
        if deg is None:
            return [0.0]
        out = [0.0] * (deg + 1)
        for k, c in self.coeffs.items():
            out[k] = c.to_float()
        return out

    def to_json(self) -> dict:
        return {str(k): self.coeffs[k].to_json() for k in sorted(self.coeffs)}

    @classmethod
    def from_json(cls, data) -> "HalfPowerPoly":
        return cls({int(k): RingElem.from_json(v) for k, v in data.items()})

    def __repr__(self):
        if not self.coeffs:
            return "HalfPowerPoly(0)"
        parts = [f"({self.coeffs[k]!r})*h^{k}/2" for k in sorted(self.coeffs)]
        return "HalfPowerPoly(" + " + ".join(parts) + ")"


def hp_eval(poly: HalfPowerPoly, h: float) -> float:
    return poly.eval(h)


def hp_to_s_poly(poly: HalfPowerPoly):
    return poly.to_s_poly()
