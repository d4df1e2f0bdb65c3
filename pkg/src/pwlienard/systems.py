"""Piecewise Lienard system parameterization, JSON serialization, named presets."""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field
from importlib import resources

from .algebra import RingElem


class Case(enum.Enum):
    """Which coordinate axis carries the sign switch."""

    SWITCH_Y = "Y"  # sgn(y): switching on the x-axis
    SWITCH_X = "X"  # sgn(x): switching on the y-axis


def _coerce_vec(values, length: int) -> list[RingElem]:
    out = [RingElem.coerce(v) for v in values]
    if len(out) > length:
        raise ValueError(f"coefficient vector longer than degree+1 = {length}")
    out += [RingElem.zero()] * (length - len(out))
    return out


@dataclass(frozen=True)
class LienardSystem:
    """Full parameterization of the perturbed system.

    ``a0``/``a1`` are the coefficients of f0/f1 (length m+1), ``b0``/``b1``
    of g0/g1 and ``c`` of g (length n+1).  Degrees are upper bounds; trailing
    zeros are allowed.
    """

    case: Case
    m: int
    n: int
    a0: tuple
    a1: tuple
    b0: tuple
    b1: tuple
    c: tuple
    lam: float = 0.0
    eps: float = 0.0

    @classmethod
    def build(cls, case, m, n, a0=(), a1=(), b0=(), b1=(), c=(),
              lam=0.0, eps=0.0) -> "LienardSystem":
        if isinstance(case, str):
            case = Case(case)
        if m < 0 or n < 0:
            raise ValueError("degrees must be non-negative")
        if lam < 0 or eps < 0:
            raise ValueError("lambda and eps must be non-negative")
        return cls(
            case=case, m=m, n=n,
            a0=tuple(_coerce_vec(a0, m + 1)),
            a1=tuple(_coerce_vec(a1, m + 1)),
            b0=tuple(_coerce_vec(b0, n + 1)),
            b1=tuple(_coerce_vec(b1, n + 1)),
            c=tuple(_coerce_vec(c, n + 1)),
            lam=float(lam), eps=float(eps),
        )

    def with_params(self, lam: float, eps: float) -> "LienardSystem":
        if lam < 0 or eps < 0:
            raise ValueError("lambda and eps must be non-negative")
        return LienardSystem(self.case, self.m, self.n, self.a0, self.a1,
                             self.b0, self.b1, self.c, float(lam), float(eps))

    # -- float views used by the oracle and simulator ----------------------

    def float_coeffs(self) -> dict:
        return {
            "a0": [x.to_float() for x in self.a0],
            "a1": [x.to_float() for x in self.a1],
            "b0": [x.to_float() for x in self.b0],
            "b1": [x.to_float() for x in self.b1],
            "c": [x.to_float() for x in self.c],
        }

    def f0_is_odd(self) -> bool:
        return all(self.a0[j].is_zero() for j in range(0, self.m + 1, 2))

    def g0_is_odd(self) -> bool:
        return all(self.b0[j].is_zero() for j in range(0, self.n + 1, 2))

    def odd_projection(self) -> "LienardSystem":
        """Copy with the even-index coefficients of f0 and g0 zeroed."""
        a0 = [RingElem.zero() if j % 2 == 0 else v for j, v in enumerate(self.a0)]
        b0 = [RingElem.zero() if j % 2 == 0 else v for j, v in enumerate(self.b0)]
        return LienardSystem(self.case, self.m, self.n, tuple(a0), self.a1,
                             tuple(b0), self.b1, self.c, self.lam, self.eps)

    # -- serialization -----------------------------------------------------

    def to_json(self) -> dict:
        return {
            "case": self.case.value,
            "m": self.m,
            "n": self.n,
            "a0": [x.to_json() for x in self.a0],
            "a1": [x.to_json() for x in self.a1],
            "b0": [x.to_json() for x in self.b0],
            "b1": [x.to_json() for x in self.b1],
            "c": [x.to_json() for x in self.c],
            "lambda": self.lam,
            "eps": self.eps,
        }

    @classmethod
    def from_json(cls, data: dict) -> "LienardSystem":
        def vec(key):
            return [RingElem.from_json(v) for v in data.get(key, [])]

        return cls.build(
            case=data["case"], m=data["m"], n=data["n"],
            a0=vec("a0"), a1=vec("a1"), b0=vec("b0"), b1=vec("b1"), c=vec("c"),
            lam=data.get("lambda", 0.0), eps=data.get("eps", 0.0),
        )

    def dumps(self) -> str:
        """Canonical JSON text; byte-stable for round-trip checks."""
        return canonical_dumps(self.to_json())


def canonical_dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


PRESET_NAMES = (
    "example1",
    "example2",
    "remark-eqMM",
    "remark-pw-cubic",
    "remark-smooth-cubic",
)


def _load_preset_file() -> dict:
    path = resources.files("pwlienard").joinpath("data/presets.json")
    return json.loads(path.read_text())


def load_preset(name: str, lam: float = 0.0, eps: float = 0.0) -> LienardSystem:
    """Named coefficient sets used by the docs, tests and CLI."""
    data = _load_preset_file()
    if name not in data:
        raise KeyError(f"unknown preset {name!r}; known: {sorted(data)}")
    sys = LienardSystem.from_json(data[name])
    if lam or eps:
        sys = LienardSystem(sys.case, sys.m, sys.n, sys.a0, sys.a1,
                            sys.b0, sys.b1, sys.c, float(lam), float(eps))
    return sys


def preset_json_text(name: str) -> str:
    """The stored JSON document of a preset, canonically serialized."""
    data = _load_preset_file()
    return canonical_dumps(data[name])
